#pragma once

#include <string>
#include <vector>

#include "polyguard/triangulate.hpp"

namespace polyguard {

// Three connected dual-tree nodes; the middle triangle shares one diagonal
// with each of the other two, and those diagonals meet at the guard vertex.
struct Triplet {
    std::array<int, 3> members;  // triangle ids
    int middle;
    std::pair<int, int> diag_a, diag_b;  // shared diagonals (vertex index pairs)
};

struct GuardPlacement {
    struct Guard {
        Point p;
        int vertex = -1;  // polygon vertex index when placed on one
        std::string provenance;
    };
    std::vector<Guard> guards;

    std::vector<Point> points() const {
        std::vector<Point> ps;
        ps.reserve(guards.size());
        for (const auto& g : guards) ps.push_back(g.p);
        return ps;
    }
};

// Level-by-level decomposition of the rooted dual tree into at most
// floor(t/2) triplets that cover the tree and form a connected triplet graph.
std::vector<Triplet> decompose_triplets(const WeakDualTree& D, const Triangulation& T);

// The polygon vertex shared by the triplet's two diagonals.
int guard_vertex_for_triplet(const Triplet& t);

// Whole pipeline: triangulate, build + root the dual tree, decompose, place
// one guard per triplet (deduplicated); at most floor(n/2)-1 guards.
GuardPlacement central_guards(const SimplePolygon& P);
GuardPlacement central_guards(const SimplePolygon& P, std::vector<Triplet>* triplets_out,
                              Triangulation* tri_out);

}  // namespace polyguard
