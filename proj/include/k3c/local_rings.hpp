#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3c/ratpoly.hpp"
#include "k3c/rng.hpp"
#include "k3c/unipoly.hpp"

namespace k3c {

/// Parse a bivariate polynomial in x, y.
RatPoly bipoly(const std::string& text);

/// Finitely generated ideal in Q[[x,y]] (all generators in the maximal
/// ideal). Identically-zero generators are stripped on construction.
/// Throws std::domain_error if a generator has a nonzero constant term.
struct LocalIdeal {
  std::vector<RatPoly> gens;
  explicit LocalIdeal(std::vector<RatPoly> g);
};

/// Finite value or Unbounded (no stabilization up to the truncation cap;
/// signals a positive-dimensional quotient or a cap set too low).
struct Colength {
  std::optional<long> value;
  bool unbounded() const { return !value.has_value(); }
  bool operator==(const Colength&) const = default;
};

struct ColengthOptions {
  int t0 = 8;
  int growth = 2;
  int cap = 64;
};

/// dim_Q Q[[x,y]]/I by truncated exact elimination. The returned value is
/// certified: the dimension at truncation T must repeat at the previous T
/// and the whole degree-(T-1) monomial slab must lie in I + m^T, which pins
/// the quotient exactly.
Colength colength(const LocalIdeal& ideal, const ColengthOptions& opt = {});

/// Colength of the Jacobian ideal (f_x, f_y). 0 = smooth point, 1 = node,
/// 2 = simple cusp. Unbounded means a non-isolated singularity.
/// Requires f(0,0) = 0.
Colength milnor_number(const RatPoly& f, const ColengthOptions& opt = {});

/// Exact membership g in I, decided through certified colengths. Only valid
/// when colength(I) is finite; throws std::domain_error otherwise.
bool ideal_member(const LocalIdeal& ideal, const RatPoly& g,
                  const ColengthOptions& opt = {});

/// Local parametrization (x(t), y(t)) with x(0) = y(0) = 0, coefficients
/// valid up to degree trunc.
struct Branch {
  UniPoly x, y;
  int trunc;
  Branch(UniPoly x_, UniPoly y_, int trunc_);
};

/// Order of vanishing at t = 0 of a*x(t) + b*y(t). `order` is empty when the
/// series vanishes identically up to the truncation (inconclusive at that
/// order: cannot distinguish an exact zero from insufficient truncation).
struct BranchMult {
  std::optional<int> order;
  int trunc;
};
BranchMult branch_hyperplane_multiplicity(const Branch& b, const Rat& a, const Rat& bcoef);

enum class SingModel { Node, Cusp };

/// Draw a random linear section a*x + b*y with a, b nonzero and return the
/// colength of (model, section) at the model singularity (xy or y^2 - x^3).
/// Always 2; anything else raises std::logic_error.
long generic_section_length(SingModel model, Rng& rng);

enum class SingType { Smooth, Node, Cusp };
enum class EmbedDim { NoEmbedding, Dim0, Dim1 };

/// Dimension of the space of length-n curvilinear subschemes supported at a
/// smooth point / node / simple cusp of a plane curve:
///   smooth: Dim0 for all n;
///   node:   Dim0 for n = 1, Dim1 for n >= 2;
///   cusp:   Dim0 for n in {1,3}, Dim1 for n = 2, NoEmbedding for n >= 4.
/// For n <= 5 the table entry is re-verified by ideal-membership tests on
/// the normal forms (x + c y^{n-1}, y^n) against the model equations, for
/// several random rational c; a mismatch raises std::logic_error.
EmbedDim embedding_dimension(SingType sing, int n);

}  // namespace k3c
