#pragma once

#include <cstdint>

#include "gct/sphere.hpp"

namespace gct {

/// Seeded generator used everywhere randomness is needed.  splitmix64 core so
/// streams are reproducible independent of the standard library.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + uniform() * (b - a); }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    /// Deterministic substream: same parent seed + tag always gives the same child.
    Rng fork(uint64_t tag) const {
        uint64_t s = state_ ^ (0xd1342543de82ef95ull * (tag + 1));
        s ^= s >> 33;
        return Rng(s * 0xff51afd7ed558ccdull + tag);
    }

  private:
    uint64_t state_;
};

} // namespace gct
