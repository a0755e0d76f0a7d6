#pragma once

#include <array>
#include <vector>

#include "k3c/ratpoly.hpp"
#include "k3c/rng.hpp"

namespace k3c {

/// All polynomials live in Q[x, y, z, t] (variables 0..3). C = V(g) is the
/// quartic in the plane {x = 0} (g uses y, z, t only), C' = V(h) the quartic
/// in {t = 0} (h uses x, y, z only). Compatibility on the common line
/// {x = t = 0}: g(y,z,0) = lambda * h(0,y,z), exactly.
struct GlueInput {
  RatPoly g;
  RatPoly h;
  Rat lambda;
  std::vector<std::array<Rat, 4>> sing_c;       // singular points of C, x = 0
  std::vector<std::array<Rat, 4>> sing_cprime;  // singular points of C', t = 0
  void validate() const;
};

/// One transversality witness: the named partial derivative of f at the
/// point, nonzero.
struct GlueCertEntry {
  std::array<Rat, 4> point;
  char partial = 'x';  // 'x' for points of C, 't' for points of C'
  Rat value;
};

/// f restricts to g on {x = 0} and to lambda * h on {t = 0}; a and b are the
/// chosen coefficients of x t^3 and x^3 t; every certificate value nonzero.
struct GlueOutput {
  RatPoly f;
  Rat a, b;
  std::vector<GlueCertEntry> certificate;
};

/// Build a quartic through both curves, smooth at every listed base-locus
/// singular point: f = g + lambda * (h - h|_{x=0}) + mixed x^i t^j terms,
/// with a chosen so f_x is nonzero at the singular points of C off C'
/// (for those on C' the value is forced and checked) and b so f_t is nonzero
/// at the singular points of C' off C. Remaining mixed coefficients are
/// seeded-random small rationals. The restriction identities are re-verified
/// exactly before returning.
GlueOutput glue(const GlueInput& inp, Rng& rng);

/// Random compatible input: a quartic g with the requested number of nodes
/// at random rational points of {x = 0} off the common line, an h agreeing
/// with g on the line (lambda = 1) with nodes off C, disjoint by position.
GlueInput random_glue_input(int nodes_on_c, int nodes_on_cprime, Rng& rng);

}  // namespace k3c
