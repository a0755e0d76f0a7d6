#pragma once

#include <complex>
#include <vector>

#include "k3c/rat.hpp"

namespace k3c {

/// Dense univariate polynomial over the rationals. c[i] is the coefficient
/// of x^i; the representation is normalized (no trailing zeros), so the zero
/// polynomial has an empty coefficient vector and degree -1.
struct UniPoly {
  std::vector<Rat> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }

  void normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Rat lc() const { return c.back(); }
  Rat eval(const Rat& x) const;
  std::vector<std::complex<double>> to_complex() const;
};

UniPoly uni_add(const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
UniPoly uni_scale(const UniPoly& a, const Rat& s);
UniPoly uni_derivative(const UniPoly& a);
/// Euclidean division; returns {quotient, remainder}.
std::pair<UniPoly, UniPoly> uni_divrem(const UniPoly& a, const UniPoly& b);
/// Monic gcd (constant 1 when coprime; zero only if both inputs are zero).
UniPoly uni_gcd(UniPoly a, UniPoly b);

/// Binary form of fixed degree d in (a, b): coefficient of a^i b^(d-i) at
/// index i. Stores trailing/leading zeros explicitly so the degree is part of
/// the type's data even for forms divisible by a or b.
struct BinForm {
  std::vector<Rat> c;  // size d+1

  BinForm() = default;
  explicit BinForm(int d) : c(static_cast<size_t>(d) + 1, Rat(0)) {}
  explicit BinForm(std::vector<Rat> coeffs) : c(std::move(coeffs)) {}

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const;
  Rat eval(const Rat& a, const Rat& b) const;
  /// f(t, 1) as a univariate polynomial.
  UniPoly dehomogenize() const;
  /// Partial derivatives, as BinForms of degree d-1.
  BinForm da() const;
  BinForm db() const;
};

BinForm bin_add(const BinForm& f, const BinForm& g);
BinForm bin_mul(const BinForm& f, const BinForm& g);
/// Wronskian f_a g_b - f_b g_a, a form of degree 2d - 2.
BinForm bin_wronskian(const BinForm& f, const BinForm& g);
/// Gcd of two binary forms (monic-normalized in the dehomogenization; tracks
/// common powers of a and b exactly). The zero form is absorbed.
BinForm bin_gcd(const BinForm& f, const BinForm& g);

/// Roots of a binary form in P^1: finite roots as complex numbers t with
/// f(t,1)=0 (listed with multiplicity), plus the multiplicity of the root
/// at infinity [1:0].
struct BinRoots {
  std::vector<std::complex<double>> finite;
  int mult_at_infinity = 0;
};
BinRoots bin_roots(const BinForm& f);

}  // namespace k3c
