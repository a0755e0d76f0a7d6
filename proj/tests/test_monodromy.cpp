#include "doctest.h"
#include "k3c/monodromy.hpp"

using namespace k3c;

TEST_CASE("plucker numbers") {
  CHECK(plucker_bitangents(3) == 0);
  CHECK(plucker_bitangents(4) == 28);
  CHECK(plucker_bitangents(5) == 120);
  CHECK(plucker_bitangents(6) == 324);
}

TEST_CASE("fast segment evaluator agrees with the symbolic system") {
  Rng rng(61);
  PlaneCurve c = random_plane_curve(4, rng);
  BitangentSystem bs = bitangent_system(c, rng);
  CurveSegmentHomotopy h(4, bs.curve.coeffs, bs.curve.coeffs);
  for (int trial = 0; trial < 25; ++trial) {
    CVec x(4);
    for (int i = 0; i < 4; ++i) x(i) = rng.box_complex() * 2.0;
    CVec sym = bs.sys.eval(x);
    CVec fast = h.eval(0.37, x);
    CHECK((sym - fast).norm() < 1e-9 * (1.0 + sym.norm()));
    CMat jsym = bs.sys.jacobian(x);
    CMat jfast = h.jacobian(0.37, x);
    CHECK((jsym - jfast).norm() < 1e-9 * (1.0 + jsym.norm()));
  }
  // ds of a constant segment vanishes.
  CVec x(4);
  for (int i = 0; i < 4; ++i) x(i) = rng.box_complex();
  CHECK(h.ds(0.2, x).norm() == 0.0);
}

TEST_CASE("segment derivative matches finite differences in s") {
  Rng rng(62);
  PlaneCurve a = random_plane_curve(4, rng);
  PlaneCurve b = random_plane_curve(4, rng);
  CurveSegmentHomotopy h(4, a.coeffs, b.coeffs);
  CVec x(4);
  for (int i = 0; i < 4; ++i) x(i) = rng.box_complex();
  const double eps = 1e-6;
  CVec fd = (h.eval(0.5 + eps, x) - h.eval(0.5 - eps, x)) / (2 * eps);
  CHECK((fd - h.ds(0.5, x)).norm() < 1e-6 * (1.0 + fd.norm()));
}

TEST_CASE("bitangent counts for a cubic and a quartic") {
  Rng rng(63);
  TrackerConfig cfg;
  // Smooth cubics have no bitangents at all.
  {
    PlaneCurve c = random_plane_curve(3, rng);
    BitangentSystem bs = bitangent_system(c, rng);
    SolutionSet sols = solve(bs.sys, cfg, rng);
    CHECK(sols.size() == 0);
  }
  {
    PlaneCurve c = random_plane_curve(4, rng);
    BitangentFibre fibre = solve_bitangents(c, cfg, rng);
    CHECK(fibre.fibre.size() == 28);
    for (double r : fibre.fibre.residuals) CHECK(r < 1e-10);
    // Labels are sorted.
    for (size_t i = 0; i + 1 < fibre.fibre.size(); ++i) {
      CHECK(fibre.fibre.points[i](0).real() <= fibre.fibre.points[i + 1](0).real() + 1e-12);
    }
  }
}

TEST_CASE("constant loop is the identity and reverse inverts") {
  Rng rng(64);
  TrackerConfig cfg;
  PlaneCurve c = random_plane_curve(4, rng);
  BitangentFibre fibre = solve_bitangents(c, cfg, rng);

  LoopSpec constant;
  constant.vertices = {fibre.system.curve.coeffs, fibre.system.curve.coeffs};
  CHECK(monodromy_loop(fibre, constant, cfg).is_identity());

  LoopSpec loop = random_polygon_loop(fibre.system.curve, 5, 0.3, rng);
  Permutation fwd = monodromy_loop(fibre, loop, cfg);
  LoopSpec rev;
  rev.vertices.assign(loop.vertices.rbegin(), loop.vertices.rend());
  Permutation bwd = monodromy_loop(fibre, rev, cfg);
  CHECK((fwd * bwd).is_identity());
}

TEST_CASE("quartic transposition hunt finds a 2-cycle") {
  Rng rng(65);
  TrackerConfig cfg;
  PlaneCurve c = random_plane_curve(4, rng);
  BitangentFibre fibre = solve_bitangents(c, cfg, rng);
  TranspositionHunt hunt = transposition_hunt(fibre, cfg, rng);
  CHECK(hunt.perm.is_transposition());
  CHECK(hunt.perm(hunt.colliding[0]) == hunt.colliding[1]);
}

TEST_CASE("certify_cover on the quartic is reproducible and not symmetric") {
  TrackerConfig cfg;
  CoverReport a = certify_cover(4, 8, 7, cfg);
  CHECK(a.fibre_size == 28);
  CHECK(a.loop_perms.size() == 8);
  REQUIRE(a.order_history.size() == 8);
  // Orders are monotone under adding generators.
  for (size_t i = 0; i + 1 < a.order_history.size(); ++i)
    CHECK(a.order_history[i] <= a.order_history[i + 1]);
  // 28! is astronomically larger; the group stays well below it.
  Int huge = 1;
  for (int k = 2; k <= 28; ++k) huge *= k;
  CHECK(a.order_history.back() < huge);

  CoverReport b = certify_cover(4, 8, 7, cfg);
  REQUIRE(b.loop_perms.size() == a.loop_perms.size());
  for (size_t i = 0; i < a.loop_perms.size(); ++i)
    CHECK(a.loop_perms[i] == b.loop_perms[i]);

  CoverReport empty = certify_cover(4, 0, 7, cfg);
  CHECK(!empty.group.transitive);
  CHECK(!empty.group.certified_symmetric);
}
