#include "doctest.h"
#include "k3c/local_rings.hpp"

#include <numeric>

using namespace k3c;

namespace {

// Brute-force oracle: dimension of Q[[x,y]]/(I + m^t) by dense elimination
// over the full monomial basis of degree < t, written independently of the
// production path (no sparse staircase, no stabilization logic).
long dense_colength_at(const std::vector<RatPoly>& gens, int t) {
  auto idx = [t](int i, int j) {
    // plain row-major over (i, j) with i + j < t
    int k = 0;
    for (int a = 0; a < i; ++a) k += t - a;
    return k + j;
  };
  int ncols = t * (t + 1) / 2;
  std::vector<std::vector<Rat>> rows;
  for (const RatPoly& g : gens) {
    for (int mi = 0; mi < t; ++mi) {
      for (int mj = 0; mi + mj < t; ++mj) {
        std::vector<Rat> row(static_cast<size_t>(ncols), Rat(0));
        bool nonzero = false;
        for (const auto& [e, c] : g.terms()) {
          int i = e[0] + mi, j = e[1] + mj;
          if (i + j < t) {
            row[static_cast<size_t>(idx(i, j))] += c;
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
  // Plain Gaussian elimination for the rank.
  int rank = 0;
  for (int col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!rows[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(piv)]);
    Rat inv = Rat(1) / rows[static_cast<size_t>(rank)][static_cast<size_t>(col)];
    for (auto& v : rows[static_cast<size_t>(rank)]) v *= inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank) continue;
      Rat f = rows[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int cidx = 0; cidx < ncols; ++cidx)
        rows[static_cast<size_t>(r)][static_cast<size_t>(cidx)] -=
            f * rows[static_cast<size_t>(rank)][static_cast<size_t>(cidx)];
    }
    ++rank;
  }
  return ncols - rank;
}

}  // namespace

TEST_CASE("colength of the stated ideals") {
  CHECK(colength(LocalIdeal({bipoly("x + y"), bipoly("x*y")})) == Colength{2});
  CHECK(colength(LocalIdeal({bipoly("x"), bipoly("y")})) == Colength{1});
  CHECK(colength(LocalIdeal({bipoly("x*y"), bipoly("x^3"), bipoly("y^2")})) == Colength{4});
}

TEST_CASE("colength degenerate inputs") {
  // (xy, x) = (x): quotient Q[[y]] is infinite dimensional.
  CHECK(colength(LocalIdeal({bipoly("x*y"), bipoly("x")})).unbounded());
  // Empty generator list is the zero ideal.
  CHECK(colength(LocalIdeal({})).unbounded());
  // Zero generators are stripped.
  CHECK(colength(LocalIdeal({bipoly("0"), bipoly("x"), bipoly("y")})) == Colength{1});
  CHECK_THROWS_AS(LocalIdeal({bipoly("1 + x")}), std::domain_error);
}

TEST_CASE("colength agrees with the dense oracle at higher truncation") {
  std::vector<std::vector<RatPoly>> instances = {
      {bipoly("x + y"), bipoly("x*y")},
      {bipoly("x"), bipoly("y")},
      {bipoly("x*y"), bipoly("x^3"), bipoly("y^2")},
      {bipoly("x^2"), bipoly("y^3")},
      {bipoly("x^2 - y^3"), bipoly("x*y^2")},
      {bipoly("x^3 + y^4"), bipoly("x^2*y")},
  };
  for (const auto& gens : instances) {
    Colength fast = colength(LocalIdeal(gens));
    REQUIRE(!fast.unbounded());
    CHECK(*fast.value == dense_colength_at(gens, 12));
  }
}

TEST_CASE("colength monotone under extra generators") {
  Rng rng(7);
  auto random_poly = [&rng]() {
    RatPoly p(2);
    int nterms = static_cast<int>(rng.intrange(1, 3));
    for (int k = 0; k < nterms; ++k) {
      int i = static_cast<int>(rng.intrange(0, 4));
      int j = static_cast<int>(rng.intrange(0, 4 - i));
      if (i == 0 && j == 0) i = 1;
      p.add_term({i, j}, rng.rat());
    }
    return p;
  };
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<RatPoly> gens = {random_poly(), random_poly()};
    LocalIdeal small(gens);
    gens.push_back(random_poly());
    LocalIdeal big(gens);
    Colength a = colength(small), b = colength(big);
    if (a.unbounded()) continue;  // adding generators can only shrink
    REQUIRE(!b.unbounded());
    CHECK(*b.value <= *a.value);
  }
}

TEST_CASE("milnor numbers of the model singularities") {
  CHECK(milnor_number(bipoly("x*y")) == Colength{1});
  CHECK(milnor_number(bipoly("y^2 - x^3")) == Colength{2});
  CHECK(milnor_number(bipoly("y^2 - x^5")) == Colength{4});
  CHECK(milnor_number(bipoly("x + y^7")) == Colength{0});  // smooth
  CHECK(milnor_number(bipoly("x^2")).unbounded());         // non-isolated
}

TEST_CASE("milnor closed form for x^p - y^q") {
  for (int p = 2; p <= 6; ++p) {
    for (int q = p + 1; q <= 6; ++q) {
      if (std::gcd(p, q) != 1) continue;
      RatPoly f(2);
      f.add_term({p, 0}, Rat(1));
      f.add_term({0, q}, Rat(-1));
      CHECK(milnor_number(f) == Colength{static_cast<long>((p - 1) * (q - 1))});
    }
  }
}

TEST_CASE("branch hyperplane multiplicities") {
  UniPoly t({Rat(0), Rat(1)});
  UniPoly t2({Rat(0), Rat(0), Rat(1)});
  UniPoly t3({Rat(0), Rat(0), Rat(0), Rat(1)});

  Branch smooth(t, t2, 8);
  CHECK(branch_hyperplane_multiplicity(smooth, Rat(0), Rat(1)).order == 2);

  Branch cusp(t2, t3, 8);
  CHECK(branch_hyperplane_multiplicity(cusp, Rat(3), Rat(7, 2)).order == 2);
  CHECK(branch_hyperplane_multiplicity(cusp, Rat(0), Rat(1)).order == 3);

  // A form annihilating the branch up to the truncation is inconclusive.
  Branch line(t, UniPoly(), 8);
  auto r = branch_hyperplane_multiplicity(line, Rat(0), Rat(1));
  CHECK(!r.order.has_value());
  CHECK(r.trunc == 8);

  CHECK_THROWS_AS(branch_hyperplane_multiplicity(smooth, Rat(0), Rat(0)),
                  std::invalid_argument);
}

TEST_CASE("generic section length is 2 on both models") {
  Rng rng(2026);
  for (int k = 0; k < 50; ++k) {
    CHECK(generic_section_length(SingModel::Node, rng) == 2);
    CHECK(generic_section_length(SingModel::Cusp, rng) == 2);
  }
  // The documented degenerate case: (xy, x) = (x) has an infinite quotient.
  CHECK(colength(LocalIdeal({bipoly("x*y"), bipoly("x")})).unbounded());
}

TEST_CASE("embedding dimension table with verification") {
  for (int n = 1; n <= 7; ++n)
    CHECK(embedding_dimension(SingType::Smooth, n) == EmbedDim::Dim0);

  CHECK(embedding_dimension(SingType::Node, 1) == EmbedDim::Dim0);
  for (int n = 2; n <= 5; ++n)
    CHECK(embedding_dimension(SingType::Node, n) == EmbedDim::Dim1);

  CHECK(embedding_dimension(SingType::Cusp, 1) == EmbedDim::Dim0);
  CHECK(embedding_dimension(SingType::Cusp, 2) == EmbedDim::Dim1);
  CHECK(embedding_dimension(SingType::Cusp, 3) == EmbedDim::Dim0);
  CHECK(embedding_dimension(SingType::Cusp, 4) == EmbedDim::NoEmbedding);
  CHECK(embedding_dimension(SingType::Cusp, 5) == EmbedDim::NoEmbedding);
}
