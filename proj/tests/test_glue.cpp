#include "doctest.h"
#include "k3c/surface_glue.hpp"

using namespace k3c;

namespace {

const std::vector<std::string> kVars = {"x", "y", "z", "t"};

RatPoly pp(const std::string& s) { return parse_poly(s, kVars); }

}  // namespace

TEST_CASE("glue of smooth compatible quartics needs no certificate") {
  // Fermat-style slices: g = y^4 + z^4 + t^4 on {x=0}, h = x^4 + y^4 + z^4.
  GlueInput inp;
  inp.g = pp("y^4 + z^4 + t^4");
  inp.h = pp("x^4 + y^4 + z^4");
  inp.lambda = Rat(1);
  Rng rng(31);
  GlueOutput out = glue(inp, rng);
  CHECK(out.certificate.empty());
  CHECK(out.f.substitute(0, Rat(0)) == inp.g);
  CHECK(out.f.substitute(3, Rat(0)) == inp.h);
}

TEST_CASE("glue with one node off the other curve") {
  Rng rng(32);
  GlueInput inp = random_glue_input(1, 0, rng);
  GlueOutput out = glue(inp, rng);
  REQUIRE(out.certificate.size() == 1);
  CHECK(out.certificate[0].partial == 'x');
  CHECK(!out.certificate[0].value.is_zero());
}

TEST_CASE("glue with three nodes gives three nonzero witnesses") {
  Rng rng(33);
  GlueInput inp = random_glue_input(3, 0, rng);
  GlueOutput out = glue(inp, rng);
  REQUIRE(out.certificate.size() == 3);
  for (const auto& entry : out.certificate) CHECK(!entry.value.is_zero());
}

TEST_CASE("glue handles singularities on both curves and is reproducible") {
  Rng rng(34);
  GlueInput inp = random_glue_input(2, 2, rng);
  Rng r1(99), r2(99);
  GlueOutput a = glue(inp, r1);
  GlueOutput b = glue(inp, r2);
  REQUIRE(a.certificate.size() == 4);
  CHECK(a.f == b.f);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  for (size_t i = 0; i < a.certificate.size(); ++i)
    CHECK(a.certificate[i].value == b.certificate[i].value);
}

TEST_CASE("glue rejects violated hypotheses") {
  GlueInput inp;
  inp.g = pp("y^4 + z^4 + t^4");
  inp.h = pp("x^4 + 2 y^4 + z^4");  // incompatible on the common line
  inp.lambda = Rat(1);
  CHECK_THROWS_AS(inp.validate(), std::domain_error);

  // A common singular point on the line x = t = 0.
  GlueInput shared;
  shared.g = pp("y^2 z^2 + t^4");  // singular at [0:0:1:0] within {x=0}
  shared.h = pp("y^2 z^2 + x^4");  // singular at [0:0:1:0] within {t=0}
  shared.lambda = Rat(1);
  shared.sing_c.push_back({Rat(0), Rat(0), Rat(1), Rat(0)});
  shared.sing_cprime.push_back({Rat(0), Rat(0), Rat(1), Rat(0)});
  CHECK_THROWS_AS(shared.validate(), std::domain_error);
}
