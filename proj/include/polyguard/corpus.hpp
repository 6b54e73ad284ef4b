#pragma once

#include <cstdint>
#include <vector>

#include "polyguard/polygon.hpp"

namespace polyguard {

// Deterministic cross-platform generator (splitmix64 core).
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (double)(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    uint64_t below(uint64_t n) { return next() % n; }

  private:
    uint64_t state_;
};

// Random simple polygon with n vertices: random points, random tour, 2-opt
// uncrossing until simple, counterclockwise. Retries with fresh points until
// the polygon passes construction.
SimplePolygon random_simple_polygon(Rng& rng, size_t n);

std::vector<SimplePolygon> corpus(uint64_t seed, size_t count, size_t n_min, size_t n_max);

// 40-vertex-style spiral polygon; corridor count controls the winding.
SimplePolygon spiral_polygon(size_t turns);

// Comb with k teeth on a spine (teeth block cross-visibility).
SimplePolygon comb_polygon(size_t teeth);

}  // namespace polyguard
