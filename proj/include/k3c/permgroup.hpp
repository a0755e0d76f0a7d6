#pragma once

#include <optional>
#include <vector>

#include "k3c/rat.hpp"
#include "k3c/rng.hpp"

namespace k3c {

/// Permutation of {0..n-1}; images[i] is where i goes. Bijectivity is part
/// of the invariant and validated on construction.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool is_identity() const;

  /// Cycle lengths in decreasing order, fixed points included as 1s.
  std::vector<int> cycle_type() const;
  bool is_transposition() const;

 private:
  std::vector<int> images_;
};

struct GroupReport {
  int n = 0;
  int generator_count = 0;
  bool transitive = false;
  bool two_transitive = false;
  bool has_transposition = false;
  bool certified_symmetric = false;
  std::optional<Int> order;  // exact, only computed for n <= 64
};

/// Orbit partition of {0..n-1} under the generators.
std::vector<std::vector<int>> orbits(const std::vector<Permutation>& gens);

bool is_transitive(const std::vector<Permutation>& gens);

/// Single orbit on ordered pairs (size n(n-1)).
bool two_transitive(const std::vector<Permutation>& gens);

/// Hunt for an element of cycle type (2, 1^{n-2}) among the generators,
/// suitable powers of words, and word_budget random words. An element has a
/// transposition power exactly when it has one 2-cycle and all other cycles
/// of odd length; that power is taken directly. NotFound (empty) is not a
/// disproof.
std::optional<Permutation> find_transposition(const std::vector<Permutation>& gens,
                                              int word_budget, Rng& rng);

/// Exact order through a base and strong generating set; n <= 64 only.
Int schreier_sims_order(const std::vector<Permutation>& gens);

/// The certification chain: transitive, 2-transitive, has a transposition;
/// all three together certify the full symmetric group. Order filled in for
/// n <= 64.
GroupReport certify_symmetric(const std::vector<Permutation>& gens, Rng& rng,
                              int word_budget = 64);

}  // namespace k3c
