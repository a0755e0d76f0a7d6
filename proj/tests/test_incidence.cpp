#include "doctest.h"
#include "k3c/incidence.hpp"
#include "k3c/local_rings.hpp"

using namespace k3c;

namespace {

std::array<Rat, 3> draw_mu(Rng& rng) {
  std::array<Rat, 3> mu;
  int got = 0;
  while (got < 3) {
    Rat r = rng.rat();
    if (r == Rat(0) || r == Rat(1)) continue;
    bool dup = false;
    for (int i = 0; i < got; ++i) dup = dup || mu[static_cast<size_t>(i)] == r;
    if (!dup) mu[static_cast<size_t>(got++)] = r;
  }
  return mu;
}

bool admissible_triple(const std::array<Rat, 3>& v) {
  auto bad = [](const Rat& r) { return r == Rat(0) || r == Rat(1); };
  return !bad(v[0]) && !bad(v[1]) && !bad(v[2]) && !(v[0] == v[1]) &&
         !(v[0] == v[2]) && !(v[1] == v[2]);
}

}  // namespace

TEST_CASE("build_A ranks") {
  Rng rng(11);
  // Last three columns always have rank 3; full matrix rank 4 generically.
  for (int trial = 0; trial < 100; ++trial) {
    PointConfigQuadric cfg = draw_quadric_config(draw_mu(rng), rng);
    IncidenceMatrix A = build_A(cfg);
    CHECK(A.rank() == 4);
    RatMatrix last3 = RatMatrix::Constant(4, 3, Rat(0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) last3(i, j) = A.entries(i, j + 3);
    CHECK(rank_of(last3) == 3);
  }
}

TEST_CASE("rank drops to exactly 3 on the gamma locus") {
  Rng rng(12);
  int done = 0;
  while (done < 5) {
    std::array<Rat, 3> lambda = {rng.rat(), rng.rat(), rng.rat()};
    if (!admissible_triple(lambda)) continue;
    std::array<Rat, 3> mu = gamma_locus_mu(lambda);
    if (!admissible_triple(mu)) continue;
    PointConfigQuadric cfg{mu, lambda};
    CHECK(build_A(cfg).rank() == 3);
    ++done;
  }
}

TEST_CASE("gamma minors determinant identity") {
  CHECK_NOTHROW(gamma_minors({Rat(2), Rat(3), Rat(5)}));
  CHECK_THROWS_AS(gamma_minors({Rat(2), Rat(2), Rat(5)}), std::domain_error);
  Rng rng(13);
  int done = 0;
  while (done < 100) {
    std::array<Rat, 3> lambda = {rng.rat(), rng.rat(), rng.rat()};
    if (!admissible_triple(lambda)) continue;
    GammaMinors g = gamma_minors(lambda);  // product identity asserted inside
    CHECK(!g.det_check.is_zero());
    ++done;
  }
}

TEST_CASE("build_F certification and structure") {
  Rng rng(14);
  int done = 0;
  while (done < 50) {
    Rat mu = rng.rat();
    if (mu == Rat(0) || mu == Rat(1)) continue;
    RatPoly F = build_F(mu);  // certification steps run inside
    CHECK(F.is_homogeneous(5));
    RatPoly mod_r3 = F.substitute(1, Rat(0));
    CHECK(mod_r3.term_count() == 1);  // the single monomial -q4 r1^4
    ++done;
  }
  CHECK_THROWS_AS(build_F(Rat(1)), std::domain_error);
}

TEST_CASE("quadric curve sampling hits all point conditions") {
  Rng rng(15);
  PointConfigQuadric cfg = draw_quadric_config(draw_mu(rng), rng);
  // Kernel of 4 independent conditions on 6 unknowns has dimension 2.
  CHECK(kernel_basis(build_A(cfg).entries).cols() == 2);
  ParamCurve c = sample_curve(cfg, rng);  // exact conditions verified inside
  CHECK(c.polys.size() == 4);
  CHECK(c.polys[0].c[0].is_zero());  // p3 = 0
  CHECK(c.polys[1].c[3].is_zero());  // q0 = 0
}

TEST_CASE("p2 curve sampling normalization") {
  Rng rng(16);
  PointConfigP2 cfg{{Rat(5, 7)}};
  ParamCurve c = sample_curve(cfg, rng);
  CHECK(c.polys.size() == 3);
  CHECK(c.polys[0].c[0].is_zero());  // p4 = 0
  CHECK(c.polys[1].c[4].is_zero());  // q0 = 0
  CHECK(c.polys[2].c[4].is_zero());  // r0 = 0
  CHECK(c.polys[2].c[0].is_zero());  // r4 = 0
}

TEST_CASE("double points of sampled curves match the genus oracles") {
  Rng rng(17);
  // Quadric (3,3): adjunction gives (3-1)(3-1) = 4 nodes.
  for (int trial = 0; trial < 5; ++trial) {
    PointConfigQuadric cfg = draw_quadric_config(draw_mu(rng), rng);
    ParamCurve c = sample_curve(cfg, rng);
    CHECK(expected_double_points(c) == 4);
    DoublePointReport rep = double_points(c);
    CHECK(rep.pairs.size() + static_cast<size_t>(rep.pairs_with_infinity) == 4);
    for (const auto& dp : rep.pairs) {
      CHECK(dp.node);
      CHECK(!dp.unresolved);
    }
    CHECK(non_immersion_points(c).finite.empty());
    CHECK(non_immersion_points(c).mult_at_infinity == 0);
  }
  // Plane quartic: (4-1)(4-2)/2 = 3 nodes.
  for (int trial = 0; trial < 5; ++trial) {
    Rat mu = rng.rat();
    if (mu == Rat(0) || mu == Rat(1)) { --trial; continue; }
    PointConfigP2 cfg{{mu}};
    ParamCurve c = sample_curve(cfg, rng);
    CHECK(expected_double_points(c) == 3);
    DoublePointReport rep = double_points(c);
    CHECK(rep.pairs.size() + static_cast<size_t>(rep.pairs_with_infinity) == 3);
    for (const auto& dp : rep.pairs) CHECK(dp.node);
  }
}

TEST_CASE("cusp_sample produces one simple cusp and three nodes") {
  Rng rng(18);
  PointConfigQuadric cfg = draw_quadric_config(draw_mu(rng), rng);
  ParamCurve c = cusp_sample(cfg, rng);  // milnor = 2 asserted inside
  BinRoots ni = non_immersion_points(c);
  REQUIRE(ni.finite.size() == 1);
  CHECK(std::abs(ni.finite[0]) < 1e-12);
  CHECK(ni.mult_at_infinity == 0);
  DoublePointReport rep = double_points(c);
  CHECK(rep.pairs.size() == 3);
  CHECK(rep.pairs_with_infinity == 0);
  for (const auto& dp : rep.pairs) CHECK(dp.node);
}

TEST_CASE("reparametrization by the identity keeps the non-immersion list") {
  Rng rng(19);
  PointConfigQuadric cfg = draw_quadric_config(draw_mu(rng), rng);
  ParamCurve c = cusp_sample(cfg, rng);
  ParamCurve same = c;  // t -> t
  BinRoots a = non_immersion_points(c), b = non_immersion_points(same);
  REQUIRE(a.finite.size() == b.finite.size());
  for (size_t i = 0; i < a.finite.size(); ++i)
    CHECK(std::abs(a.finite[i] - b.finite[i]) < 1e-15);
}

TEST_CASE("sample_curve rejects rank-defect configurations") {
  Rng rng(20);
  int done = 0;
  while (done < 1) {
    std::array<Rat, 3> lambda = {rng.rat(), rng.rat(), rng.rat()};
    if (!admissible_triple(lambda)) continue;
    std::array<Rat, 3> mu = gamma_locus_mu(lambda);
    if (!admissible_triple(mu)) continue;
    PointConfigQuadric cfg{mu, lambda};
    CHECK_THROWS_AS(sample_curve(cfg, rng), std::domain_error);
    ++done;
  }
}
