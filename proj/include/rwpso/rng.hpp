#pragma once

#include <cstdint>
#include <random>

namespace rwpso {

// Seedable 64-bit generator used everywhere randomness is needed.
//
// The draw order is part of the reproducibility contract:
//   1. swarm initialization draws one uniform01 per particle per dimension
//      (particle 0 dim 0, dim 1, ..., then particle 1, ...);
//   2. each iteration then draws, per particle in index order: one xi for
//      gbest selection, then the full r1 vector, then the full r2 vector
//      (per-dimension draws unless the scalar-draw switch is on, in which
//      case r1 and r2 are single draws).
//
// uniform01 maps the raw 64-bit output through (x >> 11) * 2^-53 so the
// stream does not depend on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    std::uint64_t raw() { return gen_(); }

    // Derives an independently seeded child stream; mixing follows splitmix64
    // so adjacent ids do not produce correlated seeds.
    Rng split(std::uint64_t stream_id) const {
        std::uint64_t z = seed_ + stream_id * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

    bool operator==(const Rng& other) const { return gen_ == other.gen_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace rwpso
