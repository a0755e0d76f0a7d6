#pragma once

#include <complex>
#include <vector>

namespace k3c {

/// All complex roots of sum c[i] x^i (leading zeros stripped first), via the
/// balanced companion matrix and Newton polishing. Degree 0 gives no roots.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c);

/// Horner evaluation.
std::complex<double> poly_eval(const std::vector<std::complex<double>>& c,
                               std::complex<double> x);

}  // namespace k3c
