#pragma once

#include <vector>

#include "k3c/rat.hpp"

namespace k3c {

/// Truncated power series with exact integer coefficients.
/// coeffs[k] is the coefficient of q^k; valid for exponents 0..order.
/// Arithmetic never silently extends past the truncation order.
struct IntSeries {
  std::vector<Int> coeffs;
  int order = 0;

  IntSeries() : coeffs(1, Int(0)) {}
  explicit IntSeries(int ord) : coeffs(static_cast<size_t>(ord) + 1, Int(0)), order(ord) {}

  static IntSeries constant(const Int& c, int ord) {
    IntSeries s(ord);
    s.coeffs[0] = c;
    return s;
  }
  static IntSeries one(int ord) { return constant(Int(1), ord); }

  const Int& operator[](int k) const { return coeffs[static_cast<size_t>(k)]; }
  Int& operator[](int k) { return coeffs[static_cast<size_t>(k)]; }

  bool operator==(const IntSeries& o) const {
    return order == o.order && coeffs == o.coeffs;
  }
};

/// Exact truncated Cauchy product. Throws std::invalid_argument on order mismatch.
IntSeries series_mul(const IntSeries& a, const IntSeries& b);

IntSeries series_add(const IntSeries& a, const IntSeries& b);

/// Expansion of prod_{n>=1} (1 - q^n)^exponent to order n_max, exact.
/// Each factor is expanded by the integer binomial series and folded in.
IntSeries euler_factor_power(int n_max, int exponent);

/// [n_0, ..., n_{g_max}]: coefficients of prod_{n>=1} (1 - q^n)^{-24},
/// the rational-curve counts on primitively polarized K3 surfaces.
std::vector<Int> yau_zaslow_counts(int g_max);

/// Local singularity type x^p - y^q with p, q coprime.
struct CuspType {
  long p = 1;
  long q = 1;
};

/// Counting multiplicity of an x^p - y^q singular point:
/// binom(p+q, q) / (p+q). Division is exact; integrality is asserted.
/// Throws std::domain_error when gcd(p, q) != 1 or p, q < 1.
Int beauville_multiplicity(const CuspType& c);

}  // namespace k3c
