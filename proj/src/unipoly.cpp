#include "k3c/unipoly.hpp"

#include <stdexcept>

#include "k3c/numroots.hpp"

namespace k3c {

Rat UniPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

std::vector<std::complex<double>> UniPoly::to_complex() const {
  std::vector<std::complex<double>> out;
  out.reserve(c.size());
  for (const Rat& r : c) out.emplace_back(r.to_double(), 0.0);
  return out;
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return UniPoly(std::move(r));
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return UniPoly(std::move(r));
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  }
  return UniPoly(std::move(r));
}

UniPoly uni_scale(const UniPoly& a, const Rat& s) {
  std::vector<Rat> r = a.c;
  for (Rat& x : r) x *= s;
  return UniPoly(std::move(r));
}

UniPoly uni_derivative(const UniPoly& a) {
  if (a.c.size() <= 1) return UniPoly();
  std::vector<Rat> r(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * Rat(static_cast<long>(i));
  return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> uni_divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("uni_divrem: division by zero polynomial");
  UniPoly rem = a;
  if (a.deg() < b.deg()) return {UniPoly(), rem};
  std::vector<Rat> q(static_cast<size_t>(a.deg() - b.deg()) + 1, Rat(0));
  Rat inv_lc = Rat(1) / b.lc();
  while (!rem.is_zero() && rem.deg() >= b.deg()) {
    int shift = rem.deg() - b.deg();
    Rat coef = rem.lc() * inv_lc;
    q[static_cast<size_t>(shift)] = coef;
    for (int i = 0; i <= b.deg(); ++i)
      rem.c[static_cast<size_t>(i + shift)] -= coef * b.c[static_cast<size_t>(i)];
    rem.normalize();
  }
  return {UniPoly(std::move(q)), rem};
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = uni_divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = uni_scale(a, Rat(1) / a.lc());
  return a;
}

bool BinForm::is_zero() const {
  for (const Rat& x : c)
    if (!x.is_zero()) return false;
  return true;
}

Rat BinForm::eval(const Rat& a, const Rat& b) const {
  int d = degree();
  Rat acc(0);
  Rat ap(1);
  std::vector<Rat> bp(static_cast<size_t>(d) + 1, Rat(1));
  for (int i = 1; i <= d; ++i) bp[static_cast<size_t>(i)] = bp[static_cast<size_t>(i - 1)] * b;
  for (int i = 0; i <= d; ++i) {
    acc += c[static_cast<size_t>(i)] * ap * bp[static_cast<size_t>(d - i)];
    ap *= a;
  }
  return acc;
}

UniPoly BinForm::dehomogenize() const { return UniPoly(std::vector<Rat>(c)); }

BinForm BinForm::da() const {
  int d = degree();
  if (d <= 0) return BinForm(0);
  BinForm r(d - 1);
  for (int i = 1; i <= d; ++i)
    r.c[static_cast<size_t>(i - 1)] = c[static_cast<size_t>(i)] * Rat(i);
  return r;
}

BinForm BinForm::db() const {
  int d = degree();
  if (d <= 0) return BinForm(0);
  BinForm r(d - 1);
  for (int i = 0; i < d; ++i)
    r.c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] * Rat(d - i);
  return r;
}

BinForm bin_add(const BinForm& f, const BinForm& g) {
  if (f.degree() != g.degree()) throw std::invalid_argument("bin_add: degree mismatch");
  BinForm r(f.degree());
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.c[i] + g.c[i];
  return r;
}

BinForm bin_mul(const BinForm& f, const BinForm& g) {
  BinForm r(f.degree() + g.degree());
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i].is_zero()) continue;
    for (size_t j = 0; j < g.c.size(); ++j) r.c[i + j] += f.c[i] * g.c[j];
  }
  return r;
}

BinForm bin_wronskian(const BinForm& f, const BinForm& g) {
  if (f.degree() != g.degree()) throw std::invalid_argument("bin_wronskian: degree mismatch");
  BinForm fa = f.da(), fb = f.db(), ga = g.da(), gb = g.db();
  BinForm r(2 * f.degree() - 2);
  BinForm t1 = bin_mul(fa, gb), t2 = bin_mul(fb, ga);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = t1.c[i] - t2.c[i];
  return r;
}

BinForm bin_gcd(const BinForm& f, const BinForm& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  // Split off exact powers of a and b, then gcd of the affine cores.
  auto split = [](const BinForm& h, int& pa, int& pb, UniPoly& core) {
    int d = h.degree();
    int lo = 0;
    while (h.c[static_cast<size_t>(lo)].is_zero()) ++lo;
    int hi = d;
    while (h.c[static_cast<size_t>(hi)].is_zero()) --hi;
    pa = lo;       // power of a dividing h
    pb = d - hi;   // power of b dividing h
    std::vector<Rat> cc(h.c.begin() + lo, h.c.begin() + hi + 1);
    core = UniPoly(std::move(cc));
  };
  int fa, fb, ga, gb;
  UniPoly fc, gc;
  split(f, fa, fb, fc);
  split(g, ga, gb, gc);
  UniPoly h = uni_gcd(fc, gc);
  int pa = std::min(fa, ga), pb = std::min(fb, gb);
  BinForm r(pa + pb + h.deg());
  for (int i = 0; i <= h.deg(); ++i)
    r.c[static_cast<size_t>(pa + i)] = h.c[static_cast<size_t>(i)];
  return r;
}

BinRoots bin_roots(const BinForm& f) {
  BinRoots out;
  if (f.is_zero()) throw std::invalid_argument("bin_roots: zero form");
  int d = f.degree();
  int hi = d;
  while (f.c[static_cast<size_t>(hi)].is_zero()) --hi;
  out.mult_at_infinity = d - hi;
  std::vector<std::complex<double>> cc;
  for (int i = 0; i <= hi; ++i) cc.emplace_back(f.c[static_cast<size_t>(i)].to_double(), 0.0);
  out.finite = poly_roots(cc);
  return out;
}

}  // namespace k3c
