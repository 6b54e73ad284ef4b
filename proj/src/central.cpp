#include "polyguard/central.hpp"

#include <algorithm>
#include <set>

#include "polyguard/config.hpp"

namespace polyguard {

namespace {

// Shared vertex pair between two adjacent triangles (their common diagonal).
std::pair<int, int> shared_edge(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    std::vector<int> s;
    for (int v : a)
        if (std::find(b.begin(), b.end(), v) != b.end()) s.push_back(v);
    if (s.size() != 2) throw ProtocolViolation("triangles are not edge-adjacent");
    return {std::min(s[0], s[1]), std::max(s[0], s[1])};
}

Triplet make_triplet(int x, int y, int middle, const Triangulation& T) {
    Triplet t;
    t.members = {x, y, middle};
    std::sort(t.members.begin(), t.members.end());
    t.middle = middle;
    t.diag_a = shared_edge(T.triangles[(size_t)middle], T.triangles[(size_t)x]);
    t.diag_b = shared_edge(T.triangles[(size_t)middle], T.triangles[(size_t)y]);
    return t;
}

}  // namespace

int guard_vertex_for_triplet(const Triplet& t) {
    for (int v : {t.diag_a.first, t.diag_a.second})
        if (v == t.diag_b.first || v == t.diag_b.second) return v;
    throw ProtocolViolation("triplet diagonals share no vertex");
}

std::vector<Triplet> decompose_triplets(const WeakDualTree& D, const Triangulation& T) {
    size_t t = D.size();
    if (t < 3) throw BadInput("triplet decomposition needs at least 3 tree nodes");
    if (D.root < 0 || D.degree(D.root) != 1)
        throw BadInput("tree must be rooted at a degree-1 node");

    std::vector<int> parent(t, -1), level(t, -1);
    std::vector<std::vector<int>> children(t);
    std::vector<int> order;  // BFS order
    order.push_back(D.root);
    level[(size_t)D.root] = 0;
    for (size_t h = 0; h < order.size(); h++) {
        int u = order[h];
        for (int v : D.adj[(size_t)u])
            if (level[(size_t)v] < 0) {
                level[(size_t)v] = level[(size_t)u] + 1;
                parent[(size_t)v] = u;
                children[(size_t)u].push_back(v);
                order.push_back(v);
            }
    }
    int L = 0;
    for (size_t i = 0; i < t; i++) L = std::max(L, level[i]);

    enum Color : char { red, orange, green };
    std::vector<Color> color(t, red);
    for (size_t i = 0; i < t; i++)
        if (children[i].empty()) color[i] = orange;
    std::vector<char> in_triplet(t, 0);

    std::vector<Triplet> out;
    auto add = [&](int a, int b, int mid) {
        out.push_back(make_triplet(a, b, mid, T));
        for (int m : {a, b, mid}) in_triplet[(size_t)m] = 1;
    };

    for (int l = L; l >= 2; l--) {
        // ascending triangle id among orange nodes of this level
        std::vector<int> cand;
        for (size_t i = 0; i < t; i++)
            if (level[i] == l) cand.push_back((int)i);
        for (int v : cand) {
            if (color[(size_t)v] != orange) continue;
            int p = parent[(size_t)v];
            int sib = -1;
            for (int s : children[(size_t)p])
                if (s != v && color[(size_t)s] == orange) sib = s;
            if (sib >= 0) {
                add(v, sib, p);
                color[(size_t)p] = orange;
                color[(size_t)v] = green;
                color[(size_t)sib] = green;
            } else {
                int gp = parent[(size_t)p];
                add(v, gp, p);
                color[(size_t)gp] = orange;
                color[(size_t)v] = green;
                color[(size_t)p] = green;
            }
        }
    }
    if (!in_triplet[(size_t)D.root]) {
        int child = children[(size_t)D.root].front();
        if (children[(size_t)child].empty())
            throw ProtocolViolation("root repair needs a grandchild");
        int gc = *std::min_element(children[(size_t)child].begin(),
                                   children[(size_t)child].end());
        add(D.root, gc, child);
        color[(size_t)D.root] = green;
        color[(size_t)child] = green;
        color[(size_t)gc] = green;
    }

    if (out.size() > t / 2) throw ProtocolViolation("triplet count exceeded floor(t/2)");
    for (size_t i = 0; i < t; i++)
        if (!in_triplet[i]) throw ProtocolViolation("triplet cover missed a node");
    return out;
}

GuardPlacement central_guards(const SimplePolygon& P) {
    return central_guards(P, nullptr, nullptr);
}

GuardPlacement central_guards(const SimplePolygon& P, std::vector<Triplet>* triplets_out,
                              Triangulation* tri_out) {
    Triangulation T = triangulate(P);
    GuardPlacement G;
    if (T.triangles.size() == 2) {
        // No triplet exists for two triangles; one guard at the lower-indexed
        // endpoint of the unique diagonal sees both.
        auto [a, b] = shared_edge(T.triangles[0], T.triangles[1]);
        G.guards.push_back({P.vertex((size_t)a), a, "diagonal"});
    } else {
        WeakDualTree D = root_at_leaf(weak_dual(T));
        std::vector<Triplet> trips = decompose_triplets(D, T);
        std::set<int> seen;
        for (size_t i = 0; i < trips.size(); i++) {
            int v = guard_vertex_for_triplet(trips[i]);
            if (seen.insert(v).second)
                G.guards.push_back({P.vertex((size_t)v), v, "triplet " + std::to_string(i)});
        }
        if (triplets_out) *triplets_out = std::move(trips);
    }
    if (tri_out) *tri_out = std::move(T);
    size_t bound = P.size() / 2 - 1;
    if (G.guards.size() > bound) throw ProtocolViolation("guard bound exceeded");
    return G;
}

}  // namespace polyguard
