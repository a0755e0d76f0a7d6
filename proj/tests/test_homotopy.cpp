#include "doctest.h"
#include "k3c/homotopy.hpp"

#include <algorithm>

using namespace k3c;

namespace {

MPoly mono(int nvars, std::vector<int> e, Cplx c) {
  MPoly p(nvars);
  p.add_term(e, c);
  return p;
}

// x^2 - a as a one-variable system.
PolySystem univar_shifted_square(double a) {
  MPoly e = mono(1, {2}, {1, 0});
  e.add_term({0}, {-a, 0});
  PolySystem s(1, {e});
  s.compile();
  return s;
}

}  // namespace

TEST_CASE("evaluate and jacobian basics") {
  // x^2 - 1 at x = 1.
  PolySystem s = univar_shifted_square(1.0);
  CVec x(1);
  x(0) = Cplx(1, 0);
  CHECK(std::abs(s.eval(x)(0)) < 1e-15);
  CHECK(std::abs(s.jacobian(x)(0, 0) - Cplx(2, 0)) < 1e-15);

  // Linear system: constant jacobian everywhere.
  MPoly lin = mono(2, {1, 0}, {2, 0});
  lin.add_term({0, 1}, {3, 0});
  MPoly lin2 = mono(2, {0, 1}, {5, 0});
  PolySystem ls(2, {lin, lin2});
  ls.compile();
  Rng rng(51);
  CMat j0;
  for (int k = 0; k < 3; ++k) {
    CVec p(2);
    p(0) = rng.box_complex();
    p(1) = rng.box_complex();
    CMat j = ls.jacobian(p);
    if (k == 0) j0 = j;
    CHECK((j - j0).norm() < 1e-15);
  }
}

TEST_CASE("jacobian matches central finite differences") {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    int n = static_cast<int>(rng.intrange(1, 3));
    std::vector<MPoly> eqs;
    for (int i = 0; i < n; ++i) {
      MPoly e(n);
      int terms = static_cast<int>(rng.intrange(2, 5));
      for (int t = 0; t < terms; ++t) {
        std::vector<int> exps(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) exps[static_cast<size_t>(v)] = static_cast<int>(rng.intrange(0, 3));
        e.add_term(exps, rng.box_complex());
      }
      e.normalize();
      if (e.is_zero()) e.add_term(std::vector<int>(static_cast<size_t>(n), 0), {1, 0});
      eqs.push_back(e);
    }
    PolySystem sys(n, eqs);
    sys.compile();
    CVec x(n);
    for (int v = 0; v < n; ++v) x(v) = rng.box_complex();
    CMat j = sys.jacobian(x);
    const double h = 1e-6;
    for (int v = 0; v < n; ++v) {
      CVec xp = x, xm = x;
      xp(v) += h;
      xm(v) -= h;
      CVec fd = (sys.eval(xp) - sys.eval(xm)) / (2 * h);
      double scale = std::max(1.0, j.col(v).norm());
      CHECK((fd - j.col(v)).norm() / scale < 1e-6);
    }
  }
}

TEST_CASE("total degree start counts") {
  PolySystem s1 = univar_shifted_square(1.0);
  auto [g1, starts1] = total_degree_start(s1);
  CHECK(starts1.size() == 2);

  MPoly e1 = mono(2, {2, 0}, {1, 0});
  e1.add_term({0, 0}, {-1, 0});
  MPoly e2 = mono(2, {0, 3}, {1, 0});
  e2.add_term({0, 0}, {-1, 0});
  PolySystem s2(2, {e1, e2});
  auto [g2, starts2] = total_degree_start(s2);
  CHECK(starts2.size() == 6);

  MPoly zero_deg = mono(1, {0}, {1, 0});
  PolySystem bad(1, {zero_deg});
  CHECK_THROWS_AS(total_degree_start(bad), std::domain_error);
}

TEST_CASE("track constant and linear deformations") {
  TrackerConfig cfg;
  PolySystem a = univar_shifted_square(1.0);
  // Constant homotopy: endpoints equal the starts.
  LinearHomotopy constant(a, a, {1, 0});
  SolutionSet starts;
  CVec p(1);
  p(0) = Cplx(1, 0);
  starts.push(p, 0, false, 0);
  p(0) = Cplx(-1, 0);
  starts.push(p, 0, false, 1);
  SolutionSet out = track(constant, starts, cfg);
  REQUIRE(out.size() == 2);
  CHECK(std::abs(out.points[0](0) - Cplx(1, 0)) < 1e-12);
  CHECK(std::abs(out.points[1](0) - Cplx(-1, 0)) < 1e-12);

  // Deform x^2 - 1 to x^2 - 4: roots go to +-2 (gamma = 1 keeps it real).
  PolySystem b = univar_shifted_square(4.0);
  LinearHomotopy h(a, b, {1, 0});
  SolutionSet moved = track(h, starts, cfg);
  REQUIRE(moved.size() == 2);
  CHECK(std::abs(moved.points[0](0) - Cplx(2, 0)) < 1e-9);
  CHECK(std::abs(moved.points[1](0) - Cplx(-2, 0)) < 1e-9);
}

TEST_CASE("solve small systems") {
  Rng rng(53);
  TrackerConfig cfg;

  // {x^2 - 1, y^2 - 1}: 4 solutions.
  MPoly e1 = mono(2, {2, 0}, {1, 0});
  e1.add_term({0, 0}, {-1, 0});
  MPoly e2 = mono(2, {0, 2}, {1, 0});
  e2.add_term({0, 0}, {-1, 0});
  PolySystem sq(2, {e1, e2});
  SolutionSet sols = solve(sq, cfg, rng);
  CHECK(sols.size() == 4);
  for (double r : sols.residuals) CHECK(r < 1e-10);

  // Univariate random degree 10: ten roots.
  MPoly u(1);
  for (int k = 0; k <= 10; ++k) u.add_term({k}, rng.box_complex());
  PolySystem us(1, {u});
  SolutionSet roots = solve(us, cfg, rng);
  CHECK(roots.size() == 10);

  // Generic pair of quadrics: Bezout count 4.
  auto random_quadric = [&rng]() {
    MPoly q(2);
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) q.add_term({i, j}, rng.box_complex());
    return q;
  };
  PolySystem qq(2, {random_quadric(), random_quadric()});
  SolutionSet qsol = solve(qq, cfg, rng);
  CHECK(qsol.size() == 4);
}

TEST_CASE("closed loop maps the solution set to itself") {
  Rng rng(54);
  TrackerConfig cfg;
  // Random univariate quartic; perturb coefficients along a closed square
  // loop and compare the endpoint set with the start set.
  MPoly f(1);
  for (int k = 0; k <= 4; ++k) f.add_term({k}, rng.box_complex());
  PolySystem base(1, {f});
  SolutionSet fibre = solve(base, cfg, rng);
  REQUIRE(fibre.size() == 4);

  std::vector<MPoly> verts;
  for (int v = 0; v < 3; ++v) {
    MPoly g = f;
    for (int k = 0; k <= 4; ++k) g.add_term({k}, 0.3 * rng.box_complex());
    g.normalize();
    verts.push_back(g);
  }
  verts.push_back(f);  // close the loop

  SolutionSet current = fibre;
  MPoly prev = f;
  for (const MPoly& next : verts) {
    PolySystem sa(1, {prev});
    PolySystem sb(1, {next});
    sa.compile();
    sb.compile();
    LinearHomotopy seg(sa, sb, {1, 0});
    current = track(seg, current, cfg);
    REQUIRE(current.size() == 4);
    prev = next;
  }
  // Set equality under matching tolerance.
  for (const auto& p : current.points) {
    double best = 1e9;
    for (const auto& q : fibre.points) best = std::min(best, (p - q).norm());
    CHECK(best < 1e-6);
  }
}
