#include "doctest.h"
#include "k3c/permgroup.hpp"

using namespace k3c;

namespace {

Permutation cyc(int n, std::vector<int> cycle) {
  std::vector<int> im(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = i;
  for (size_t k = 0; k < cycle.size(); ++k)
    im[static_cast<size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
  return Permutation(std::move(im));
}

}  // namespace

TEST_CASE("permutation algebra") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    int n = static_cast<int>(rng.intrange(2, 12));
    auto shuffle = [&rng, n]() {
      std::vector<int> im(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = i;
      for (int i = n - 1; i > 0; --i)
        std::swap(im[static_cast<size_t>(i)],
                  im[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
      return Permutation(std::move(im));
    };
    Permutation a = shuffle(), b = shuffle();
    CHECK((a * b) * b.inverse() == a);      // composition respects inverse
    CHECK((a * (b * a.inverse())) == (a * b) * a.inverse());  // associativity
  }
}

TEST_CASE("orbits") {
  std::vector<Permutation> gens = {cyc(3, {0, 1}), cyc(3, {1, 2})};
  CHECK(orbits(gens).size() == 1);
  CHECK(is_transitive(gens));

  std::vector<Permutation> none;
  CHECK(orbits(none).empty());

  std::vector<Permutation> split = {cyc(4, {0, 1})};
  auto parts = orbits(split);
  CHECK(parts.size() == 3);  // {0,1}, {2}, {3}

  // Idempotent under adding redundant generators.
  std::vector<Permutation> redundant = gens;
  redundant.push_back(gens[0] * gens[1]);
  CHECK(orbits(redundant) == orbits(gens));

  CHECK_THROWS_AS(orbits({cyc(3, {0, 1}), cyc(4, {0, 1})}), std::invalid_argument);
}

TEST_CASE("two transitivity") {
  std::vector<Permutation> sym5 = {cyc(5, {0, 1, 2, 3, 4}), cyc(5, {0, 1})};
  CHECK(two_transitive(sym5));
  std::vector<Permutation> cyclic = {cyc(4, {0, 1, 2, 3})};
  CHECK(!two_transitive(cyclic));
}

TEST_CASE("find transposition") {
  Rng rng(42);
  std::vector<Permutation> direct = {cyc(5, {0, 1}), cyc(5, {0, 1, 2, 3, 4})};
  auto t1 = find_transposition(direct, 16, rng);
  REQUIRE(t1.has_value());
  CHECK(t1->is_transposition());

  std::vector<Permutation> three = {cyc(3, {0, 1, 2})};
  CHECK(!find_transposition(three, 64, rng).has_value());

  // A 6-cycle times a disjoint 2-cycle? No: one 2-cycle and one odd cycle.
  Permutation mixed = cyc(7, {0, 1}) * cyc(7, {2, 3, 4, 5, 6});
  auto t2 = find_transposition({mixed}, 0, rng);
  REQUIRE(t2.has_value());
  CHECK(t2->is_transposition());
}

TEST_CASE("schreier sims orders") {
  CHECK(schreier_sims_order({cyc(4, {0, 1}), cyc(4, {0, 1, 2, 3})}) == 24);
  CHECK(schreier_sims_order({cyc(7, {0, 1, 2, 3, 4, 5, 6})}) == 7);
  CHECK(schreier_sims_order({}) == 1);
  // A_5.
  CHECK(schreier_sims_order({cyc(5, {0, 1, 2}), cyc(5, {2, 3, 4})}) == 60);
  // S_8 from a transposition and an 8-cycle: 40320.
  CHECK(schreier_sims_order({cyc(8, {0, 1}), cyc(8, {0, 1, 2, 3, 4, 5, 6, 7})}) == 40320);
  // Mathieu group M_11 on 11 points: generators (0..10) and
  // (2 6 10 7)(3 9 4 5); order 7920.
  Permutation m1 = cyc(11, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  Permutation m2(std::vector<int>{0, 1, 6, 9, 5, 3, 10, 2, 8, 4, 7});
  CHECK(schreier_sims_order({m1, m2}) == 7920);
}

TEST_CASE("certify_symmetric") {
  Rng rng(43);
  GroupReport full = certify_symmetric({cyc(5, {0, 1, 2, 3, 4}), cyc(5, {0, 1})}, rng);
  CHECK(full.transitive);
  CHECK(full.two_transitive);
  CHECK(full.has_transposition);
  CHECK(full.certified_symmetric);
  REQUIRE(full.order.has_value());
  CHECK(*full.order == 120);

  GroupReport cyc5 = certify_symmetric({cyc(5, {0, 1, 2, 3, 4})}, rng);
  CHECK(cyc5.transitive);
  CHECK(!cyc5.two_transitive);
  CHECK(!cyc5.certified_symmetric);
  REQUIRE(cyc5.order.has_value());
  CHECK(*cyc5.order == 5);

  GroupReport empty = certify_symmetric({}, rng);
  CHECK(!empty.transitive);
  CHECK(!empty.certified_symmetric);

  // The flag implication invariant.
  for (const GroupReport& r : {full, cyc5, empty}) {
    if (r.certified_symmetric) {
      CHECK(r.transitive);
      CHECK(r.two_transitive);
      CHECK(r.has_transposition);
    }
  }
}
