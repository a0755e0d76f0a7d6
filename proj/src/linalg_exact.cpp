#include "k3c/linalg_exact.hpp"

namespace k3c {

std::vector<int> rref_in_place(RatMatrix& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<int> pivot_cols;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (!m(i, c).is_zero()) { piv = i; break; }
    }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    Rat inv = Rat(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rat f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  return pivot_cols;
}

int rank_of(RatMatrix m) { return static_cast<int>(rref_in_place(m).size()); }

RatMatrix kernel_basis(const RatMatrix& m) {
  RatMatrix a = m;
  std::vector<int> piv = rref_in_place(a);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : piv) is_pivot[static_cast<size_t>(c)] = true;
  const Eigen::Index nfree = cols - static_cast<Eigen::Index>(piv.size());
  RatMatrix basis = RatMatrix::Constant(cols, nfree, Rat(0));
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[static_cast<size_t>(c)]) continue;
    basis(c, k) = Rat(1);
    for (size_t pi = 0; pi < piv.size(); ++pi)
      basis(piv[pi], k) = -a(static_cast<Eigen::Index>(pi), c);
    ++k;
  }
  return basis;
}

Rat det_of(RatMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det_of: square matrix required");
  const Eigen::Index n = m.rows();
  Rat det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = c; i < n; ++i) {
      if (!m(i, c).is_zero()) { piv = i; break; }
    }
    if (piv < 0) return Rat(0);
    if (piv != c) { m.row(piv).swap(m.row(c)); det = -det; }
    det *= m(c, c);
    Rat inv = Rat(1) / m(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Rat f = m(i, c) * inv;
      for (Eigen::Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

void SparseReducer::reduce(Row& r) const {
  for (;;) {
    while (!r.empty() && r.begin()->second.is_zero()) r.erase(r.begin());
    if (r.empty()) return;
    auto it = pivots_.find(r.begin()->first);
    if (it == pivots_.end()) return;
    Rat f = r.begin()->second;
    for (const auto& [col, v] : it->second) {
      auto jt = r.find(col);
      if (jt == r.end()) {
        r[col] = -f * v;
      } else {
        jt->second -= f * v;
        if (jt->second.is_zero()) r.erase(jt);
      }
    }
  }
}

bool SparseReducer::add_row(Row r) {
  for (auto it = r.begin(); it != r.end();)
    it = it->second.is_zero() ? r.erase(it) : std::next(it);
  reduce(r);
  if (r.empty()) return false;
  Rat inv = Rat(1) / r.begin()->second;
  for (auto& [col, v] : r) v *= inv;
  int pivot = r.begin()->first;
  pivots_.emplace(pivot, std::move(r));
  return true;
}

bool SparseReducer::in_span(Row r) const {
  for (auto it = r.begin(); it != r.end();)
    it = it->second.is_zero() ? r.erase(it) : std::next(it);
  reduce(r);
  return r.empty();
}

}  // namespace k3c
