#include "k3c/mpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace k3c {

void MPoly::add_term(const std::vector<int>& e, Cplx c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw std::invalid_argument("MPoly::add_term: exponent arity mismatch");
  for (auto& t : terms_) {
    if (t.e == e) {
      t.c += c;
      return;
    }
  }
  terms_.push_back({c, e});
}

void MPoly::normalize(double drop_tol) {
  std::map<std::vector<int>, Cplx> merged;
  for (const auto& t : terms_) merged[t.e] += t.c;
  terms_.clear();
  for (const auto& [e, c] : merged)
    if (std::abs(c) > drop_tol) terms_.push_back({c, e});
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) {
    int s = 0;
    for (int k : t.e) s += k;
    d = std::max(d, s);
  }
  return d;
}

int MPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.e[static_cast<size_t>(var)]);
  return d;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& t : o.terms_) r.add_term(t.e, t.c);
  r.normalize();
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& t : o.terms_) r.add_term(t.e, -t.c);
  r.normalize();
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(nvars_);
  std::map<std::vector<int>, Cplx> acc;
  std::vector<int> e(static_cast<size_t>(nvars_));
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      for (int i = 0; i < nvars_; ++i)
        e[static_cast<size_t>(i)] = a.e[static_cast<size_t>(i)] + b.e[static_cast<size_t>(i)];
      acc[e] += a.c * b.c;
    }
  }
  for (const auto& [ee, c] : acc)
    if (std::abs(c) != 0.0) r.terms_.push_back({c, ee});
  return r;
}

MPoly MPoly::scaled(Cplx s) const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.c *= s;
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(nvars_);
  for (const auto& t : terms_) {
    int k = t.e[static_cast<size_t>(var)];
    if (k == 0) continue;
    Term nt = t;
    nt.c *= static_cast<double>(k);
    nt.e[static_cast<size_t>(var)] = k - 1;
    r.terms_.push_back(nt);
  }
  return r;
}

Cplx MPoly::eval_with_tables(const std::vector<std::vector<Cplx>>& powers) const {
  Cplx acc(0, 0);
  for (const auto& t : terms_) {
    Cplx m = t.c;
    for (int v = 0; v < nvars_; ++v) {
      int k = t.e[static_cast<size_t>(v)];
      if (k) m *= powers[static_cast<size_t>(v)][static_cast<size_t>(k)];
    }
    acc += m;
  }
  return acc;
}

Cplx MPoly::eval(const CVec& x) const {
  std::vector<std::vector<Cplx>> powers(static_cast<size_t>(nvars_));
  for (int v = 0; v < nvars_; ++v) {
    int d = degree_in(v);
    powers[static_cast<size_t>(v)].assign(static_cast<size_t>(d) + 1, Cplx(1, 0));
    for (int k = 1; k <= d; ++k)
      powers[static_cast<size_t>(v)][static_cast<size_t>(k)] =
          powers[static_cast<size_t>(v)][static_cast<size_t>(k - 1)] * x(v);
  }
  return eval_with_tables(powers);
}

PolySystem::PolySystem(int n, std::vector<MPoly> equations)
    : nvars(n), eqs(std::move(equations)) {
  for (const auto& e : eqs)
    if (e.nvars() != n) throw std::invalid_argument("PolySystem: arity mismatch");
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> d;
  d.reserve(eqs.size());
  for (const auto& e : eqs) d.push_back(e.total_degree());
  return d;
}

void PolySystem::compile() {
  jac_.clear();
  jac_.reserve(eqs.size() * static_cast<size_t>(nvars));
  for (const auto& e : eqs)
    for (int v = 0; v < nvars; ++v) jac_.push_back(e.derivative(v));
  max_deg_.assign(static_cast<size_t>(nvars), 0);
  for (const auto& e : eqs)
    for (int v = 0; v < nvars; ++v)
      max_deg_[static_cast<size_t>(v)] = std::max(max_deg_[static_cast<size_t>(v)], e.degree_in(v));
}

namespace {
// Per-thread scratch so parallel path trackers can share one PolySystem.
thread_local std::vector<std::vector<Cplx>> g_tables;
}  // namespace

void PolySystem::fill_tables(const CVec& x) const {
  g_tables.resize(static_cast<size_t>(nvars));
  for (int v = 0; v < nvars; ++v) {
    auto& tab = g_tables[static_cast<size_t>(v)];
    int d = max_deg_.empty() ? 0 : max_deg_[static_cast<size_t>(v)];
    tab.assign(static_cast<size_t>(d) + 1, Cplx(1, 0));
    for (int k = 1; k <= d; ++k) tab[static_cast<size_t>(k)] = tab[static_cast<size_t>(k - 1)] * x(v);
  }
}

CVec PolySystem::eval(const CVec& x) const {
  if (!compiled()) {
    CVec out(static_cast<Eigen::Index>(eqs.size()));
    for (size_t i = 0; i < eqs.size(); ++i) out(static_cast<Eigen::Index>(i)) = eqs[i].eval(x);
    return out;
  }
  fill_tables(x);
  CVec out(static_cast<Eigen::Index>(eqs.size()));
  for (size_t i = 0; i < eqs.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = eqs[i].eval_with_tables(g_tables);
  return out;
}

CMat PolySystem::jacobian(const CVec& x) const {
  if (!compiled())
    throw std::logic_error("PolySystem::jacobian: call compile() first");
  fill_tables(x);
  CMat out(static_cast<Eigen::Index>(eqs.size()), nvars);
  for (size_t i = 0; i < eqs.size(); ++i)
    for (int v = 0; v < nvars; ++v)
      out(static_cast<Eigen::Index>(i), v) =
          jac_[i * static_cast<size_t>(nvars) + static_cast<size_t>(v)].eval_with_tables(g_tables);
  return out;
}

}  // namespace k3c
