#include "k3c/int_series.hpp"

#include <numeric>
#include <stdexcept>

namespace k3c {

IntSeries series_mul(const IntSeries& a, const IntSeries& b) {
  if (a.order != b.order)
    throw std::invalid_argument("series_mul: order mismatch");
  IntSeries r(a.order);
  for (int i = 0; i <= a.order; ++i) {
    if (sgn(a.coeffs[static_cast<size_t>(i)]) == 0) continue;
    for (int j = 0; i + j <= a.order; ++j) {
      r.coeffs[static_cast<size_t>(i + j)] +=
          a.coeffs[static_cast<size_t>(i)] * b.coeffs[static_cast<size_t>(j)];
    }
  }
  return r;
}

IntSeries series_add(const IntSeries& a, const IntSeries& b) {
  if (a.order != b.order)
    throw std::invalid_argument("series_add: order mismatch");
  IntSeries r(a.order);
  for (int i = 0; i <= a.order; ++i)
    r.coeffs[static_cast<size_t>(i)] =
        a.coeffs[static_cast<size_t>(i)] + b.coeffs[static_cast<size_t>(i)];
  return r;
}

// Coefficients of (1 - x)^e as a series in x, exact integers:
//   e >= 0: (-1)^k binom(e, k), finitely many terms;
//   e <  0: binom(-e + k - 1, k), all positive.
static Int one_minus_x_pow_coeff(int e, int k) {
  if (e >= 0) {
    if (k > e) return Int(0);
    Int c = binomial(Int(e), static_cast<unsigned long>(k));
    return (k % 2 == 0) ? c : Int(-c);
  }
  return binomial(Int(-e + k - 1), static_cast<unsigned long>(k));
}

IntSeries euler_factor_power(int n_max, int exponent) {
  if (n_max < 0) throw std::invalid_argument("euler_factor_power: n_max < 0");
  IntSeries acc = IntSeries::one(n_max);
  if (exponent == 0) return acc;
  for (int n = 1; n <= n_max; ++n) {
    // Fold in (1 - q^n)^exponent, a sparse series supported on multiples of n.
    IntSeries next(n_max);
    for (int i = 0; i <= n_max; ++i) {
      const Int& ai = acc.coeffs[static_cast<size_t>(i)];
      if (sgn(ai) == 0) continue;
      for (int k = 0; i + n * k <= n_max; ++k) {
        Int c = one_minus_x_pow_coeff(exponent, k);
        if (sgn(c) == 0) continue;
        next.coeffs[static_cast<size_t>(i + n * k)] += ai * c;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<Int> yau_zaslow_counts(int g_max) {
  if (g_max < 0) throw std::invalid_argument("yau_zaslow_counts: g_max < 0");
  IntSeries s = euler_factor_power(g_max, -24);
  return s.coeffs;
}

Int beauville_multiplicity(const CuspType& c) {
  if (c.p < 1 || c.q < 1)
    throw std::domain_error("beauville_multiplicity: p, q must be positive");
  if (std::gcd(c.p, c.q) != 1)
    throw std::domain_error("beauville_multiplicity: p, q must be coprime");
  Int b = binomial(Int(c.p + c.q), static_cast<unsigned long>(c.q));
  Int quot, rem;
  mpz_tdiv_qr_ui(quot.get_mpz_t(), rem.get_mpz_t(), b.get_mpz_t(),
                 static_cast<unsigned long>(c.p + c.q));
  if (rem != 0)
    throw std::logic_error("beauville_multiplicity: binom(p+q,q) not divisible by p+q");
  return quot;
}

}  // namespace k3c
