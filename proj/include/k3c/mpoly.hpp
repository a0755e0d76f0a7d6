#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace k3c {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Dense-term multivariate polynomial over complex doubles. Terms hold
/// unique exponent vectors; zero coefficients are dropped on normalize().
class MPoly {
 public:
  struct Term {
    Cplx c;
    std::vector<int> e;
  };

  MPoly() : nvars_(0) {}
  explicit MPoly(int nvars) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  void add_term(const std::vector<int>& e, Cplx c);
  void normalize(double drop_tol = 0.0);

  int total_degree() const;
  int degree_in(int var) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(Cplx s) const;
  MPoly derivative(int var) const;

  /// Evaluation through shared per-variable power tables (powers[v][k] =
  /// x_v^k, sized past degree_in(v)).
  Cplx eval_with_tables(const std::vector<std::vector<Cplx>>& powers) const;
  Cplx eval(const CVec& x) const;

 private:
  int nvars_;
  std::vector<Term> terms_;
};

/// Square system support: equations plus precompiled partial derivatives.
struct PolySystem {
  int nvars = 0;
  std::vector<MPoly> eqs;

  PolySystem() = default;
  PolySystem(int n, std::vector<MPoly> equations);

  bool square() const { return static_cast<int>(eqs.size()) == nvars; }
  std::vector<int> degrees() const;

  void compile();  // builds the Jacobian entries and power-table sizes
  bool compiled() const { return !jac_.empty(); }

  CVec eval(const CVec& x) const;
  CMat jacobian(const CVec& x) const;

 private:
  void fill_tables(const CVec& x) const;
  std::vector<MPoly> jac_;    // row-major nvars x nvars when compiled
  std::vector<int> max_deg_;  // per variable
};

}  // namespace k3c
