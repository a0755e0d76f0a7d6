#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "k3c/linalg_exact.hpp"
#include "k3c/ratpoly.hpp"
#include "k3c/rng.hpp"
#include "k3c/unipoly.hpp"

namespace k3c {

enum class CurveTarget { P2, Quadric };

/// Three base points [0:1:0], [1:0:0], [1:1:0] on the line z = 0 are
/// implicit; each mu adds the point [1:mu:0]. Degree-4 plane curves use a
/// single mu.
struct PointConfigP2 {
  std::vector<Rat> mu;
  void validate() const;
};

/// Six points on the diagonal of P1 x P1: ([0:1],[0:1]), ([1:0],[1:0]),
/// ([1:1],[1:1]) and ([1:mu_i],[1:mu_i]); lambda_i are their preimages
/// [1:lambda_i] under the parametrization.
struct PointConfigQuadric {
  std::array<Rat, 3> mu;
  std::array<Rat, 3> lambda;
  void validate() const;
};

/// Rational map P^1 -> P^2 (3 forms of degree 4) or P^1 -> P^1 x P^1
/// (4 forms of degree 3). Base-point-freeness is part of the invariant:
/// no common root of all three forms (P2), coprime pairs (Quadric).
struct ParamCurve {
  CurveTarget target = CurveTarget::P2;
  std::vector<BinForm> polys;
  void validate() const;
};

struct IncidenceMatrix {
  RatMatrix entries;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  int rank() const { return rank_of(entries); }
};

/// The 4 x 6 point-condition matrix on (p0, p1, p2, q1, q2, q3) after the
/// normalization p3 = q0 = 0: first row from [1:1] -> ([1:1],[1:1]), then one
/// row (mu_i, mu_i l_i, mu_i l_i^2, -l_i, -l_i^2, -l_i^3) per diagonal point.
IncidenceMatrix build_A(const PointConfigQuadric& cfg);

/// Signed 3x3 minors of the lambda block (the last three columns of A
/// extended by the [1:1] row), with the cofactor signs of a first-column
/// expansion: M1 = +det(rows 2,3,4), M2 = -det(rows 1,3,4),
/// M3 = +det(rows 1,2,4), M4 = -det(rows 1,2,3). det_check is the
/// determinant of [[M2,M3,M4],[l1 M2,l2 M3,l3 M4],[l1^2 M2,l2^2 M3,l3^2 M4]];
/// the exact identity M1*M2*M3*M4 = -l1*l2*l3*det_check is asserted, along
/// with det_check != 0.
struct GammaMinors {
  Rat m1, m2, m3, m4;
  Rat det_check;
};
GammaMinors gamma_minors(const std::array<Rat, 3>& lambda);

/// Solve the three rank-drop equations for mu given lambda (unique since
/// det_check != 0). build_A at such a configuration has rank exactly 3.
std::array<Rat, 3> gamma_locus_mu(const std::array<Rat, 3>& lambda);

/// Variable order of the incidence hypersurface polynomial F:
/// r1, r3, p1, p2, p3, q1, q2, q3, q4.
extern const std::vector<std::string> kFVars;

/// Degree-5 polynomial cutting out the space of degree-4 rational plane
/// curves through [0:1:0], [1:0:0], [1:1:0], [1:mu:0], obtained by clearing
/// lambda = r1/r3 from the two interpolation conditions and eliminating p0.
/// Construction is certified in place: multilinearity in the p_i, q_j block,
/// non-divisibility by r3 (the q4 r1^4 monomial has coefficient -1), and
/// non-divisibility by r1 - r3. Any failed check raises std::logic_error.
RatPoly build_F(const Rat& mu);

/// Draw lambda for the quadric configuration until build_A has full rank.
PointConfigQuadric draw_quadric_config(const std::array<Rat, 3>& mu, Rng& rng);

/// Solve the exact interpolation system at the configuration and return a
/// random kernel element as a curve; all point conditions are re-verified
/// exactly. Throws std::domain_error on rank defect (the caller redraws).
ParamCurve sample_curve(const PointConfigQuadric& cfg, Rng& rng);

/// Degree-4 plane curve through the 4 collinear points; lambda (the preimage
/// of [1:mu:0]) is drawn at random. Output is normalized with p4 = q0 = r0 =
/// r4 = 0 in p = p0 a^4 + ... + p4 b^4.
ParamCurve sample_curve(const PointConfigP2& cfg, Rng& rng);

/// An unordered pair of distinct parameters with equal image.
struct DoublePoint {
  std::complex<double> s, t;
  bool node = false;        // branch tangent directions differ
  bool unresolved = false;  // root cluster tighter than the tolerance
};

/// All pairs {s, t}, s != t, with phi(s) = phi(t): exact elimination by a
/// resultant of the two symmetrized minor forms, floating-point isolation of
/// the roots, then verification of every candidate against the map itself.
/// The second member reports pairs where one parameter is [1:0].
struct DoublePointReport {
  std::vector<DoublePoint> pairs;
  int pairs_with_infinity = 0;
};
DoublePointReport double_points(const ParamCurve& c, double cluster_tol = 1e-8);

/// Parameters where the map fails to be an immersion: common roots of the
/// coordinate Wronskians, computed by exact gcd then root isolation.
BinRoots non_immersion_points(const ParamCurve& c);

/// Exact equation of the image in the chart (u, v) = (p/q, r/s), as the
/// resultant eliminating t from p(t) - u q(t) and r(t) - v s(t). Quadric
/// targets only.
RatPoly local_image_equation_at_zero(const ParamCurve& c);

/// Curve meeting the diagonal in six points (five prescribed by cfg, one
/// forced by the degree count) with non-immersion forced at the preimage
/// [0:1]: a chosen rational off-diagonal image there turns passage plus
/// tangency into two extra linear conditions per factor, leaving a
/// one-dimensional exact solution space per coefficient block. The
/// singularity at the forced point is certified as a simple cusp by a
/// Milnor-number-2 check on the eliminated local equation. Lambda and the
/// cusp image are redrawn internally on rank defects.
ParamCurve cusp_sample(const PointConfigQuadric& cfg, Rng& rng);

/// Expected number of double points of a generic parametrized curve:
/// (d-1)(d-2)/2 on P^2 (degree d), (a-1)(b-1) on the quadric.
int expected_double_points(const ParamCurve& c);

}  // namespace k3c
