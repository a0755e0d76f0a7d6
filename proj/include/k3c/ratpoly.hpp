#pragma once

#include <map>
#include <string>
#include <vector>

#include "k3c/rat.hpp"

namespace k3c {

/// Sparse multivariate polynomial over the rationals.
/// Keys are exponent vectors of fixed length nvars; zero coefficients are
/// never stored. Everything here is exact.
class RatPoly {
 public:
  using Exps = std::vector<int>;
  using TermMap = std::map<Exps, Rat>;

  RatPoly() : nvars_(0) {}
  explicit RatPoly(int nvars) : nvars_(nvars) {}

  static RatPoly constant(int nvars, const Rat& c);
  static RatPoly variable(int nvars, int i);
  static RatPoly monomial(int nvars, const Exps& e, const Rat& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  Rat coeff(const Exps& e) const;
  void set_coeff(const Exps& e, const Rat& c);
  void add_term(const Exps& e, const Rat& c);

  int total_degree() const;       // -1 for the zero polynomial
  int degree_in(int var) const;   // -1 for the zero polynomial
  int low_degree() const;         // minimal total degree of a term; -1 if zero

  RatPoly operator-() const;
  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { a += b; return a; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { a -= b; return a; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  RatPoly operator*(const Rat& c) const;
  bool operator==(const RatPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  RatPoly pow(int k) const;
  RatPoly derivative(int var) const;

  /// Substitute variable `var` by the polynomial g (same variable count).
  RatPoly substitute(int var, const RatPoly& g) const;

  /// Substitute variable `var` by a rational constant.
  RatPoly substitute(int var, const Rat& c) const;

  /// Drop all terms of total degree >= bound.
  RatPoly truncated(int degree_bound) const;

  Rat eval(const std::vector<Rat>& point) const;

  bool divisible_by_var(int var) const;
  bool is_homogeneous(int degree) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  TermMap terms_;
};

/// Parse a polynomial in the named variables. Grammar: sums of terms with
/// rational coefficients, '*', '^', parentheses optional; e.g.
/// "x*y - 3/2*x^3 + y^2". Throws std::invalid_argument on malformed input.
RatPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

}  // namespace k3c
