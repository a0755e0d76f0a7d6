#pragma once

#include <array>
#include <optional>

#include "k3c/homotopy.hpp"
#include "k3c/permgroup.hpp"

namespace k3c {

/// Homogeneous plane curve of degree d with dense complex coefficients over
/// the monomials x^i y^j z^k (i+j+k = d) in the order of curve_monomials().
struct PlaneCurve {
  int degree = 0;
  CVec coeffs;
};

std::vector<std::array<int, 3>> curve_monomials(int d);
PlaneCurve random_plane_curve(int d, Rng& rng);
/// Coefficients of f(A x).
PlaneCurve transform_curve(const PlaneCurve& c, const Eigen::Matrix3cd& a);

/// Number of bitangents of a smooth degree-d plane curve:
/// d (d-2)(d-3)(d+3)/2.
long plucker_bitangents(int d);

/// The bitangency conditions in the chart z = 1, line y = m x + c, tangency
/// points encoded by e1 = x1 + x2, e2 = x1 x2: the degree-d restriction
/// g(x) = f(x, m x + c, 1) must be divisible by (x^2 - e1 x + e2)^2, i.e.
/// the four coefficients of the remainder vanish. Equations ordered by
/// falling total degree: (2d, 2d-1, 2d-2, 2d-3).
struct BitangentSystem {
  PolySystem sys;  // symbolic, variables (e1, e2, m, c), compiled
  PlaneCurve curve;
  Eigen::Matrix3cd chart;  // random change of coordinates applied first
};
BitangentSystem bitangent_system(const PlaneCurve& c, Rng& rng);

/// Fast numeric homotopy between two curves with the same degree: the
/// bitangency residues of curve (1-s) a + s b, evaluated directly from the
/// coefficient vectors without symbolic expansion. Linear segments in
/// coefficient space compose into polygons and circles.
class CurveSegmentHomotopy : public Homotopy {
 public:
  CurveSegmentHomotopy(int degree, CVec a, CVec b);
  int nvars() const override { return 4; }
  CVec eval(double s, const CVec& x) const override;
  CMat jacobian(double s, const CVec& x) const override;
  CVec ds(double s, const CVec& x) const override;
  double residual_scale(const CVec& x) const override;

 private:
  int d_;
  CVec a_, diff_;
  std::vector<std::array<int, 3>> monos_;
  double coeff_scale_ = 1.0;
};

/// Base fibre with its labeling: solutions sorted lexicographically by
/// (Re, Im) of (e1, e2, m, c), shared by every loop on the same curve.
struct BitangentFibre {
  BitangentSystem system;
  SolutionSet fibre;
};

/// Solve the bitangent system, filter to regular finite solutions, and
/// insist on exactly the Plucker count; a deficient chart is re-randomized
/// up to three times before reporting diagnostics.
BitangentFibre solve_bitangents(const PlaneCurve& c, const TrackerConfig& cfg, Rng& rng);

/// Closed piecewise-linear loop in curve-coefficient space.
struct LoopSpec {
  std::vector<CVec> vertices;  // front() == back()
};

/// Random polygon with the requested vertex count at relative radius 0.3
/// around the base coefficients.
LoopSpec random_polygon_loop(const PlaneCurve& base, int vertex_count, double rel_radius,
                             Rng& rng);

/// Track the full fibre along the loop and match the endpoints back to the
/// base labels; the assignment must be a mutual-nearest bijection. Tracking
/// trouble triggers a re-track at half step; a persistently bad loop throws.
Permutation monodromy_loop(const BitangentFibre& base, const LoopSpec& loop,
                           const TrackerConfig& cfg);

struct TranspositionHunt {
  Permutation perm;
  std::array<int, 2> colliding{};  // fibre labels that merge at s*
  Cplx s_star;
  double radius = 0;
  int pencils_tried = 0;
};

/// Move along random pencils monitoring the minimal pairwise fibre distance;
/// locate the collision parameter s* by complex Newton on the squared gap of
/// the closest pair, then read the permutation of a small circle around s*.
/// The result always has cycle type (2, 1^{n-2}) or the hunt keeps trying.
TranspositionHunt transposition_hunt(const BitangentFibre& base, const TrackerConfig& cfg,
                                     Rng& rng, int max_pencils = 8);

struct CoverReport {
  int degree = 0;
  std::uint64_t seed = 0;
  long fibre_size = 0;
  GroupReport group;
  std::vector<Permutation> loop_perms;
  std::optional<Permutation> transposition;
  std::vector<Int> order_history;  // after each loop, degrees <= 64 only
  double seconds = 0;
};

/// End-to-end certification for one curve: solve the fibre, run `loops`
/// random loops, hunt a transposition for d != 4, and run the
/// transitive / 2-transitive / transposition chain. For d = 4 the exact
/// group order is recorded after every loop instead.
CoverReport certify_cover(int d, int loops, std::uint64_t seed, const TrackerConfig& cfg);

}  // namespace k3c
