#include "k3c/ratpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace k3c {

static int exps_degree(const RatPoly::Exps& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

RatPoly RatPoly::constant(int nvars, const Rat& c) {
  RatPoly p(nvars);
  if (!c.is_zero()) p.terms_[Exps(static_cast<size_t>(nvars), 0)] = c;
  return p;
}

RatPoly RatPoly::variable(int nvars, int i) {
  RatPoly p(nvars);
  Exps e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(i)] = 1;
  p.terms_[e] = Rat(1);
  return p;
}

RatPoly RatPoly::monomial(int nvars, const Exps& e, const Rat& c) {
  RatPoly p(nvars);
  if (!c.is_zero()) p.terms_[e] = c;
  return p;
}

Rat RatPoly::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void RatPoly::set_coeff(const Exps& e, const Rat& c) {
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_[e] = c;
}

void RatPoly::add_term(const Exps& e, const Rat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int RatPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, exps_degree(e));
  return d;
}

int RatPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
  return d;
}

int RatPoly::low_degree() const {
  if (terms_.empty()) return -1;
  int d = exps_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) d = std::min(d, exps_degree(e));
  return d;
}

RatPoly RatPoly::operator-() const {
  RatPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("RatPoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("RatPoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("RatPoly: variable count mismatch");
  RatPoly r(a.nvars_);
  RatPoly::Exps e(static_cast<size_t>(a.nvars_), 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

RatPoly RatPoly::operator*(const Rat& c) const {
  RatPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
  return r;
}

RatPoly RatPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("RatPoly::pow: negative exponent");
  RatPoly r = constant(nvars_, Rat(1));
  RatPoly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

RatPoly RatPoly::derivative(int var) const {
  RatPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<size_t>(var)];
    if (k == 0) continue;
    Exps e2 = e;
    e2[static_cast<size_t>(var)] = k - 1;
    r.add_term(e2, c * Rat(k));
  }
  return r;
}

RatPoly RatPoly::substitute(int var, const RatPoly& g) const {
  if (g.nvars() != nvars_) throw std::invalid_argument("RatPoly::substitute: variable count mismatch");
  int dmax = degree_in(var);
  if (dmax <= 0) return *this;  // variable absent
  std::vector<RatPoly> powers;
  powers.push_back(constant(nvars_, Rat(1)));
  for (int k = 1; k <= dmax; ++k) powers.push_back(powers.back() * g);
  RatPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<size_t>(var)];
    Exps e2 = e;
    e2[static_cast<size_t>(var)] = 0;
    r += monomial(nvars_, e2, c) * powers[static_cast<size_t>(k)];
  }
  return r;
}

RatPoly RatPoly::substitute(int var, const Rat& c) const {
  RatPoly r(nvars_);
  for (const auto& [e, v] : terms_) {
    int k = e[static_cast<size_t>(var)];
    Rat scaled = v;
    for (int i = 0; i < k; ++i) scaled *= c;
    Exps e2 = e;
    e2[static_cast<size_t>(var)] = 0;
    r.add_term(e2, scaled);
  }
  return r;
}

RatPoly RatPoly::truncated(int degree_bound) const {
  RatPoly r(nvars_);
  for (const auto& [e, c] : terms_)
    if (exps_degree(e) < degree_bound) r.terms_[e] = c;
  return r;
}

Rat RatPoly::eval(const std::vector<Rat>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("RatPoly::eval: point dimension mismatch");
  // Per-variable power tables.
  std::vector<std::vector<Rat>> pw(static_cast<size_t>(nvars_));
  for (int v = 0; v < nvars_; ++v) {
    int d = degree_in(v);
    pw[static_cast<size_t>(v)].push_back(Rat(1));
    for (int k = 1; k <= d; ++k)
      pw[static_cast<size_t>(v)].push_back(pw[static_cast<size_t>(v)].back() * point[static_cast<size_t>(v)]);
  }
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int v = 0; v < nvars_; ++v) t *= pw[static_cast<size_t>(v)][static_cast<size_t>(e[static_cast<size_t>(v)])];
    acc += t;
  }
  return acc;
}

bool RatPoly::divisible_by_var(int var) const {
  for (const auto& [e, c] : terms_)
    if (e[static_cast<size_t>(var)] == 0) return false;
  return !terms_.empty();
}

bool RatPoly::is_homogeneous(int degree) const {
  for (const auto& [e, c] : terms_)
    if (exps_degree(e) != degree) return false;
  return true;
}

std::string RatPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a.sign() < 0) { os << "-"; a = -a; }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    bool wrote = false;
    if (!(a == Rat(1)) || exps_degree(e) == 0) {
      os << a.str();
      wrote = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace k3c
