#include "k3c/permgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace k3c {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[static_cast<size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (size_t i = 0; i < images_.size(); ++i)
    inv[static_cast<size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("Permutation: degree mismatch in composition");
  std::vector<int> im(a.images_.size());
  for (size_t i = 0; i < im.size(); ++i)
    im[i] = a.images_[static_cast<size_t>(b.images_[i])];
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<bool> seen(images_.size(), false);
  std::vector<int> cycles;
  for (size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<size_t>(images_[j]);
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.rbegin(), cycles.rend());
  return cycles;
}

bool Permutation::is_transposition() const {
  auto ct = cycle_type();
  return !ct.empty() && ct[0] == 2 && (ct.size() < 2 || ct[1] == 1);
}

namespace {

void require_same_degree(const std::vector<Permutation>& gens) {
  for (size_t i = 1; i < gens.size(); ++i)
    if (gens[i].degree() != gens[0].degree())
      throw std::invalid_argument("generators have mismatched degrees");
}

}  // namespace

std::vector<std::vector<int>> orbits(const std::vector<Permutation>& gens) {
  if (gens.empty()) return {};
  require_same_degree(gens);
  int n = gens[0].degree();
  std::vector<int> orbit_of(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> parts;
  for (int start = 0; start < n; ++start) {
    if (orbit_of[static_cast<size_t>(start)] >= 0) continue;
    int id = static_cast<int>(parts.size());
    parts.push_back({});
    std::vector<int> stack = {start};
    orbit_of[static_cast<size_t>(start)] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      parts.back().push_back(v);
      for (const auto& g : gens) {
        int w = g(v);
        if (orbit_of[static_cast<size_t>(w)] < 0) {
          orbit_of[static_cast<size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
  }
  for (auto& p : parts) std::sort(p.begin(), p.end());
  return parts;
}

bool is_transitive(const std::vector<Permutation>& gens) {
  if (gens.empty()) return false;
  return orbits(gens).size() == 1 || gens[0].degree() == 1;
}

bool two_transitive(const std::vector<Permutation>& gens) {
  if (gens.empty()) return false;
  require_same_degree(gens);
  int n = gens[0].degree();
  if (n < 2) return false;
  // Orbit of the ordered pair (0, 1) in the n(n-1)-point pair space.
  auto pid = [n](int a, int b) { return a * n + b; };
  std::vector<bool> seen(static_cast<size_t>(n) * static_cast<size_t>(n), false);
  std::vector<std::pair<int, int>> stack = {{0, 1}};
  seen[static_cast<size_t>(pid(0, 1))] = true;
  size_t count = 0;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    ++count;
    for (const auto& g : gens) {
      int ga = g(a), gb = g(b);
      if (!seen[static_cast<size_t>(pid(ga, gb))]) {
        seen[static_cast<size_t>(pid(ga, gb))] = true;
        stack.emplace_back(ga, gb);
      }
    }
  }
  return count == static_cast<size_t>(n) * static_cast<size_t>(n - 1);
}

namespace {

// If the cycle type has exactly one 2-cycle and all other cycles odd, the
// power by the lcm of the odd lengths is a transposition.
std::optional<Permutation> transposition_power(const Permutation& g) {
  auto ct = g.cycle_type();
  long twos = 0;
  long lcm_odd = 1;
  for (int len : ct) {
    if (len == 2) {
      ++twos;
    } else if (len % 2 == 0) {
      return std::nullopt;
    } else {
      lcm_odd = std::lcm(lcm_odd, static_cast<long>(len));
    }
  }
  if (twos != 1) return std::nullopt;
  Permutation acc = Permutation::identity(g.degree());
  Permutation base = g;
  long k = lcm_odd;  // odd, so the 2-cycle survives
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc.is_transposition() ? std::optional<Permutation>(acc) : std::nullopt;
}

}  // namespace

std::optional<Permutation> find_transposition(const std::vector<Permutation>& gens,
                                              int word_budget, Rng& rng) {
  if (gens.empty()) return std::nullopt;
  require_same_degree(gens);
  for (const auto& g : gens) {
    if (g.is_transposition()) return g;
    if (auto t = transposition_power(g)) return t;
  }
  // Bounded random words.
  for (int w = 0; w < word_budget; ++w) {
    int len = static_cast<int>(rng.intrange(2, 6));
    Permutation word = gens[static_cast<size_t>(rng.below(gens.size()))];
    for (int k = 1; k < len; ++k) {
      word = word * gens[static_cast<size_t>(rng.below(gens.size()))];
      if (auto t = transposition_power(word)) return t;
    }
  }
  return std::nullopt;
}

Int schreier_sims_order(const std::vector<Permutation>& gens) {
  if (gens.empty()) return Int(1);
  require_same_degree(gens);
  const int n = gens[0].degree();
  if (n > 64) throw std::invalid_argument("schreier_sims_order: supported for n <= 64 only");

  // Deterministic Schreier-Sims, rebuild-on-addition variant: maintain a
  // strong generating candidate set; build the full stabilizer chain from it,
  // and whenever a Schreier generator fails to sift to the identity, add its
  // residue and rebuild. At the fixed point the base-and-strong-generating
  // property holds and the order is the product of the orbit lengths.
  std::vector<Permutation> strong;
  for (const auto& g : gens)
    if (!g.is_identity()) strong.push_back(g);
  if (strong.empty()) return Int(1);

  struct Level {
    int base_point = -1;
    std::vector<Permutation> gens;                // generators fixing the prefix
    std::vector<int> orbit;
    std::vector<std::optional<Permutation>> rep;  // coset representative per point
  };

  for (int round = 0; round < 4096; ++round) {
    std::vector<Level> chain;
    std::vector<Permutation> current = strong;
    while (!current.empty()) {
      Level lv;
      lv.base_point = n;
      for (const auto& g : current)
        for (int p = 0; p < lv.base_point; ++p)
          if (g(p) != p) { lv.base_point = p; break; }
      if (lv.base_point == n) break;  // all remaining generators are identity
      lv.gens = current;
      lv.rep.assign(static_cast<size_t>(n), std::nullopt);
      lv.rep[static_cast<size_t>(lv.base_point)] = Permutation::identity(n);
      lv.orbit.push_back(lv.base_point);
      for (size_t head = 0; head < lv.orbit.size(); ++head) {
        int v = lv.orbit[head];
        for (const auto& g : lv.gens) {
          int w = g(v);
          if (!lv.rep[static_cast<size_t>(w)]) {
            lv.rep[static_cast<size_t>(w)] = g * (*lv.rep[static_cast<size_t>(v)]);
            lv.orbit.push_back(w);
          }
        }
      }
      std::vector<Permutation> next;
      for (const auto& g : lv.gens)
        if (g(lv.base_point) == lv.base_point) next.push_back(g);
      chain.push_back(std::move(lv));
      current = std::move(next);
    }

    auto sift = [&chain](Permutation g) {
      for (const auto& lv : chain) {
        int image = g(lv.base_point);
        const auto& rep = lv.rep[static_cast<size_t>(image)];
        if (!rep) return g;
        g = rep->inverse() * g;
      }
      return g;
    };

    bool stable = true;
    for (const auto& lv : chain) {
      for (int v : lv.orbit) {
        for (const auto& s : lv.gens) {
          const Permutation& rv = *lv.rep[static_cast<size_t>(v)];
          const Permutation& rsv = *lv.rep[static_cast<size_t>(s(v))];
          Permutation residue = sift(rsv.inverse() * (s * rv));
          if (!residue.is_identity()) {
            strong.push_back(std::move(residue));
            stable = false;
            break;
          }
        }
        if (!stable) break;
      }
      if (!stable) break;
    }
    if (stable) {
      Int order(1);
      for (const auto& lv : chain) order *= static_cast<long>(lv.orbit.size());
      return order;
    }
  }
  throw std::logic_error("schreier_sims_order: failed to stabilize");
}

GroupReport certify_symmetric(const std::vector<Permutation>& gens, Rng& rng,
                              int word_budget) {
  GroupReport rep;
  rep.generator_count = static_cast<int>(gens.size());
  if (gens.empty()) return rep;
  require_same_degree(gens);
  rep.n = gens[0].degree();
  rep.transitive = is_transitive(gens);
  rep.two_transitive = rep.transitive && two_transitive(gens);
  auto t = find_transposition(gens, word_budget, rng);
  rep.has_transposition = t.has_value();
  // A 2-transitive group containing a transposition is the full symmetric
  // group (2-transitivity makes the transpositions a single conjugacy class
  // generating everything).
  rep.certified_symmetric = rep.transitive && rep.two_transitive && rep.has_transposition;
  if (rep.n <= 64) rep.order = schreier_sims_order(gens);
  return rep;
}

}  // namespace k3c
