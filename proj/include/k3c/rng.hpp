#pragma once

#include <complex>
#include <cstdint>

#include "k3c/rat.hpp"

namespace k3c {

/// Splittable deterministic generator (splitmix64 core). Every random draw in
/// the toolkit flows from one 64-bit seed through this type, so identical
/// seeds give identical runs on any platform. No std::random machinery: the
/// distributions there are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Independent child stream; advancing either does not affect the other.
  Rng split() {
    std::uint64_t s = next_u64();
    return Rng(s ^ 0xd1342543de82ef95ULL);
  }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  /// Uniform integer in [lo, hi] inclusive.
  long intrange(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform nonzero integer in [-999, 999].
  long small_nonzero() {
    long v;
    do {
      v = intrange(-999, 999);
    } while (v == 0);
    return v;
  }

  /// Random rational: numerator in [-999,999]\{0}, denominator in [1,999].
  Rat rat() { return Rat(small_nonzero(), intrange(1, 999)); }

  /// Random nonzero rational.
  Rat rat_nonzero() {
    Rat r = rat();
    return r;  // numerator never zero
  }

  std::complex<double> unit_complex() {
    double t = uniform() * 6.283185307179586476925286766559;
    return {std::cos(t), std::sin(t)};
  }

  /// Complex with independent parts uniform in [-1, 1].
  std::complex<double> box_complex() {
    return {2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0};
  }

 private:
  std::uint64_t state_;
};

}  // namespace k3c
