#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "polyguard/polygon.hpp"

namespace polyguard {

struct Triangulation {
    std::vector<std::array<int, 3>> triangles;      // ccw vertex index triples
    std::vector<std::pair<int, int>> diagonals;     // sorted index pairs
};

// Tree over triangles; triangles adjacent when they share a diagonal.
struct WeakDualTree {
    std::vector<std::vector<int>> adj;
    int root = -1;

    size_t size() const { return adj.size(); }
    int degree(int v) const { return (int)adj[v].size(); }
};

// Ear clipping, lowest vertex index first. O(n^2)-ish, deterministic.
Triangulation triangulate(const SimplePolygon& P);

WeakDualTree weak_dual(const Triangulation& T);

// Roots at the smallest-id node of degree <= 1.
WeakDualTree root_at_leaf(WeakDualTree D);

}  // namespace polyguard
