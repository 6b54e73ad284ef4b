#include "polyguard/triangulate.hpp"

#include <algorithm>
#include <map>

#include "polyguard/config.hpp"

namespace polyguard {

namespace {

// q inside or on the closed ccw triangle (a,b,c), by exact predicates.
bool in_triangle_closed(Point q, Point a, Point b, Point c) {
    return orient2d_sign(a, b, q) >= 0 && orient2d_sign(b, c, q) >= 0 &&
           orient2d_sign(c, a, q) >= 0;
}

}  // namespace

Triangulation triangulate(const SimplePolygon& P) {
    size_t n = P.size();
    std::vector<int> ring(n);
    for (size_t i = 0; i < n; i++) ring[i] = (int)i;

    Triangulation out;
    out.triangles.reserve(n - 2);

    while (ring.size() > 3) {
        size_t m = ring.size();
        auto at = [&](size_t i) { return P.vertex((size_t)ring[i % m]); };
        std::vector<char> reflex(m, 0);
        for (size_t i = 0; i < m; i++)
            reflex[i] = orient2d_sign(at(i + m - 1), at(i), at(i + 1)) <= 0;

        // candidate order: lowest polygon vertex index first
        std::vector<size_t> order(m);
        for (size_t i = 0; i < m; i++) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return ring[a] < ring[b]; });

        bool clipped = false;
        for (size_t i : order) {
            if (reflex[i]) continue;
            Point a = at(i + m - 1), b = at(i), c = at(i + 1);
            bool ear = true;
            for (size_t j = 0; j < m && ear; j++) {
                if (j == i || j == (i + m - 1) % m || j == (i + 1) % m) continue;
                if (!reflex[j]) continue;  // a blocking vertex is reflex in the ring
                if (in_triangle_closed(at(j), a, b, c)) ear = false;
            }
            if (!ear) continue;
            int ia = ring[(i + m - 1) % m], ib = ring[i], ic = ring[(i + 1) % m];
            out.triangles.push_back({ia, ib, ic});
            out.diagonals.emplace_back(std::min(ia, ic), std::max(ia, ic));
            ring.erase(ring.begin() + (long)i);
            clipped = true;
            break;
        }
        if (!clipped) throw ProtocolViolation("ear clipping found no ear");
    }
    out.triangles.push_back({ring[0], ring[1], ring[2]});

    // The last recorded "diagonal" of the final clip is a real diagonal only
    // when it is not a polygon edge; same for every entry (adjacent-index
    // pairs slip in when the ear's neighbors are polygon-adjacent).
    std::vector<std::pair<int, int>> diags;
    for (auto [a, b] : out.diagonals) {
        bool edge = (a + 1) % (int)n == b || (b + 1) % (int)n == a;
        if (!edge) diags.emplace_back(a, b);
    }
    out.diagonals = std::move(diags);
    return out;
}

WeakDualTree weak_dual(const Triangulation& T) {
    size_t t = T.triangles.size();
    WeakDualTree D;
    D.adj.assign(t, {});
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (size_t i = 0; i < t; i++) {
        const auto& tri = T.triangles[i];
        for (int k = 0; k < 3; k++) {
            int a = tri[(size_t)k], b = tri[(size_t)((k + 1) % 3)];
            by_edge[{std::min(a, b), std::max(a, b)}].push_back((int)i);
        }
    }
    size_t edges = 0;
    for (auto& [e, tris] : by_edge) {
        if (tris.size() == 2) {
            D.adj[(size_t)tris[0]].push_back(tris[1]);
            D.adj[(size_t)tris[1]].push_back(tris[0]);
            edges++;
        } else if (tris.size() > 2) {
            throw ProtocolViolation("triangulation edge shared by 3+ triangles");
        }
    }
    for (auto& a : D.adj) std::sort(a.begin(), a.end());
    if (t > 0 && edges != t - 1) throw ProtocolViolation("weak dual graph is not a tree");
    for (size_t i = 0; i < t; i++)
        if (D.adj[i].size() > 3) throw ProtocolViolation("weak dual node degree exceeds 3");
    return D;
}

WeakDualTree root_at_leaf(WeakDualTree D) {
    if (D.size() == 0) throw BadInput("empty dual tree");
    for (size_t i = 0; i < D.size(); i++)
        if (D.adj[i].size() <= 1) {
            D.root = (int)i;
            return D;
        }
    throw ProtocolViolation("tree without a leaf");
}

}  // namespace polyguard
