#include "k3c/numroots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace k3c {

std::complex<double> poly_eval(const std::vector<std::complex<double>>& c,
                               std::complex<double> x) {
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

namespace {

// Parlett-Reinsch style balancing with power-of-two scale factors.
void balance_in_place(Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  bool converged = false;
  int guard = 0;
  while (!converged && guard++ < 32) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double r = 0, c = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        r += std::abs(a(i, j));
        c += std::abs(a(j, i));
      }
      if (r == 0 || c == 0) continue;
      double f = 1.0;
      double s = c + r;
      while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
      while (c > r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
      if (c + r < 0.95 * s && f != 1.0) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs) {
  std::vector<std::complex<double>> c = coeffs;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.empty()) throw std::invalid_argument("poly_roots: zero polynomial");
  int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return {};
  for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] /= c[static_cast<size_t>(n)];
  c[static_cast<size_t>(n)] = 1.0;

  // Rescale the variable so roots land near the unit circle (Fujiwara bound).
  double kappa = 0.0;
  for (int i = 0; i < n; ++i) {
    double mag = std::abs(c[static_cast<size_t>(i)]);
    if (mag > 0) kappa = std::max(kappa, std::pow(mag, 1.0 / (n - i)));
  }
  if (kappa == 0.0) {  // x^n: all roots zero
    return std::vector<std::complex<double>>(static_cast<size_t>(n), {0.0, 0.0});
  }
  std::vector<std::complex<double>> cs(c.size());
  double kp = 1.0;
  for (int i = n; i >= 0; --i) {
    cs[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] / kp;
    kp *= kappa;
  }

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -cs[static_cast<size_t>(i)];
  balance_in_place(comp);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<std::complex<double>> roots(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = kappa * es.eigenvalues()(i);

  // Newton polish against the original (monic) coefficients.
  std::vector<std::complex<double>> dc(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i)
    dc[static_cast<size_t>(i - 1)] = c[static_cast<size_t>(i)] * static_cast<double>(i);
  for (auto& r : roots) {
    std::complex<double> best = r;
    double best_res = std::abs(poly_eval(c, r));
    std::complex<double> cur = r;
    for (int it = 0; it < 12; ++it) {
      std::complex<double> f = poly_eval(c, cur);
      std::complex<double> fp = poly_eval(dc, cur);
      if (std::abs(fp) < 1e-300) break;
      std::complex<double> next = cur - f / fp;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      double res = std::abs(poly_eval(c, next));
      if (res < best_res) { best = next; best_res = res; }
      if (std::abs(next - cur) < 1e-15 * (1.0 + std::abs(next))) { cur = next; break; }
      cur = next;
    }
    r = best;
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace k3c
