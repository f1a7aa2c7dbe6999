#pragma once

#include <cstdint>
#include <random>

#include "dva/exactfield.hpp"

namespace dva {

// Deterministic sampler of small rationals; numerators and denominators lie in [-97, 97].
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = rng_();
    while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  Rational rational() {
    long n = integer(-97, 97);
    long d;
    do d = integer(-97, 97);
    while (d == 0);
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  // Nonzero rational avoiding the listed values.
  Rational rational_avoiding(std::initializer_list<Rational> bad) {
    for (;;) {
      Rational r = rational();
      bool ok = sgn(r) != 0;
      for (const auto& b : bad) ok = ok && r != b;
      if (ok) return r;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dva
