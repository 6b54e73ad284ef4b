#include "polyguard/medial.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "polyguard/config.hpp"

namespace polyguard {

double object_distance(const SimplePolygon& P, ObjectRef o, Point x) {
    if (o.kind == ObjectRef::Kind::vertex) return dist(x, P.vertex((size_t)o.index));
    return std::sqrt(segment_dist2(x, P.edge_a((size_t)o.index), P.edge_b((size_t)o.index)));
}

Point object_nearest_point(const SimplePolygon& P, ObjectRef o, Point x) {
    if (o.kind == ObjectRef::Kind::vertex) return P.vertex((size_t)o.index);
    double t;
    Point a = P.edge_a((size_t)o.index), b = P.edge_b((size_t)o.index);
    segment_dist2(x, a, b, &t);
    return a + t * (b - a);
}

Clearance clearance(const SimplePolygon& P, Point x) {
    if (P.locate(x) == PointLocation::outside)
        throw BadInput("clearance: point outside polygon");
    size_t n = P.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> vd(n), ed(n);
    for (size_t i = 0; i < n; i++) {
        vd[i] = dist(x, P.vertex(i));
        ed[i] = std::sqrt(segment_dist2(x, P.edge_a(i), P.edge_b(i)));
        best = std::min({best, vd[i], ed[i]});
    }
    double tol = tolerance() * std::max(1.0, P.scale());
    Clearance c;
    c.radius = best;
    for (size_t i = 0; i < n; i++)
        if (vd[i] <= best + tol) c.nearest.push_back({ObjectRef::Kind::vertex, (int)i});
    for (size_t i = 0; i < n; i++) {
        if (ed[i] > best + tol) continue;
        double t;
        segment_dist2(x, P.edge_a(i), P.edge_b(i), &t);
        if (t <= 0.0 || t >= 1.0) continue;  // attained at an endpoint: the vertex carries it
        c.nearest.push_back({ObjectRef::Kind::edge, (int)i});
    }
    return c;
}

Point Bisector::eval(double s) const {
    if (kind == CurveKind::line_segment) return p0 + s * dir;
    return o + s * dx + ((s * s + h * h) / (2 * h)) * dy;
}

double Bisector::speed(double s) const {
    if (kind == CurveKind::line_segment) return 1.0;
    double g = s / h;
    return std::sqrt(1.0 + g * g);
}

double Bisector::param_of(Point q) const {
    if (kind == CurveKind::line_segment) return dot(q - p0, dir);
    return dot(q - o, dx);
}

std::optional<Bisector> bisector_for(const SimplePolygon& P, ObjectRef a, ObjectRef b) {
    double eps = 1e-12 * std::max(1.0, P.scale());
    auto unit = [](Point v) { return (1.0 / norm(v)) * v; };
    if (a.kind == ObjectRef::Kind::vertex && b.kind == ObjectRef::Kind::vertex) {
        Point va = P.vertex((size_t)a.index), vb = P.vertex((size_t)b.index);
        if (dist(va, vb) < eps) return std::nullopt;
        Bisector B;
        B.kind = CurveKind::line_segment;
        B.p0 = va + 0.5 * (vb - va);
        B.dir = unit(perp(vb - va));
        return B;
    }
    if (a.kind == ObjectRef::Kind::edge && b.kind == ObjectRef::Kind::edge) {
        Point a1 = P.edge_a((size_t)a.index), a2 = P.edge_b((size_t)a.index);
        Point b1 = P.edge_a((size_t)b.index), b2 = P.edge_b((size_t)b.index);
        Point d1 = unit(a2 - a1), d2 = unit(b2 - b1);
        Point n1 = perp(d1), n2 = perp(d2);  // inward normals (ccw boundary)
        Bisector B;
        B.kind = CurveKind::line_segment;
        if (std::abs(cross(d1, d2)) < 1e-9) {
            if (dot(n1, n2) > 0) return std::nullopt;  // parallel same-facing: no midline between
            // anti-parallel: midline between the two lines
            double gap = dot(b1 - a1, n1);
            B.p0 = a1 + 0.5 * gap * n1;
            B.dir = d1;
            return B;
        }
        Point nd = n1 - n2;
        if (norm(nd) < 1e-12) return std::nullopt;
        // intersection of the two edge lines
        double t = cross(b1 - a1, d2) / cross(d1, d2);
        B.p0 = a1 + t * d1;
        B.dir = unit(perp(nd));
        // orient so positive-side distances grow toward the interior side
        if (dot(B.dir, n1) < 0) B.dir = -1.0 * B.dir;
        return B;
    }
    // vertex/edge
    ObjectRef ov = a.kind == ObjectRef::Kind::vertex ? a : b;
    ObjectRef oe = a.kind == ObjectRef::Kind::vertex ? b : a;
    Point v = P.vertex((size_t)ov.index);
    Point e1 = P.edge_a((size_t)oe.index), e2 = P.edge_b((size_t)oe.index);
    Point d = unit(e2 - e1);
    Point n = perp(d);
    double h = dot(v - e1, n);
    if (std::abs(h) < eps) return std::nullopt;  // vertex on the edge line (own endpoint)
    Bisector B;
    B.kind = CurveKind::parabolic_arc;
    if (h < 0) {
        n = -1.0 * n;
        h = -h;
        d = -1.0 * d;
    }
    B.o = v - h * n;
    B.dx = d;
    B.dy = n;
    B.h = h;
    return B;
}

namespace {

struct Marcher {
    const SimplePolygon& P;
    const Bisector& B;
    ObjectRef o1, o2;
    std::vector<ObjectRef> warm;  // start-tied objects, released as they recede
    double scale;

    double pair_dist(Point x) const {
        return 0.5 * (object_distance(P, o1, x) + object_distance(P, o2, x));
    }

    bool is_pair(ObjectRef o) const { return o == o1 || o == o2; }

    // f = min over live non-pair objects of (dist - r); releases warm objects.
    double gap(Point x, double r, ObjectRef* who = nullptr) {
        double release = 64e-9 * std::max(1.0, scale);
        double f = std::numeric_limits<double>::infinity();
        size_t n = P.size();
        auto consider = [&](ObjectRef o) {
            if (is_pair(o)) return;
            double d = object_distance(P, o, x) - r;
            auto w = std::find(warm.begin(), warm.end(), o);
            if (w != warm.end()) {
                if (d > release) warm.erase(w);
                else return;
            }
            if (d < f) {
                f = d;
                if (who) *who = o;
            }
        };
        for (size_t i = 0; i < n; i++) consider({ObjectRef::Kind::vertex, (int)i});
        for (size_t i = 0; i < n; i++) consider({ObjectRef::Kind::edge, (int)i});
        return f;
    }
};

}  // namespace

std::vector<int> valid_trace_signs(const SimplePolygon& P, Point x,
                                   std::pair<ObjectRef, ObjectRef> pair) {
    auto Bo = bisector_for(P, pair.first, pair.second);
    if (!Bo) return {};
    const Bisector& B = *Bo;
    double scale = std::max(1.0, P.scale());
    double s0 = B.param_of(x);
    double darc = 1e-9 * scale;
    Clearance c0 = clearance(P, x);
    std::vector<int> out;
    for (int sgn : {+1, -1}) {
        double ds = darc / B.speed(s0);
        Point probe = B.eval(s0 + sgn * ds);
        double d1 = object_distance(P, pair.first, probe);
        double d2 = object_distance(P, pair.second, probe);
        double r = 0.5 * (d1 + d2);
        if (std::abs(d1 - d2) > 1e-3 * darc + 1e-12 * scale) continue;  // not on the pair bisector
        if (P.locate(probe) == PointLocation::outside) continue;
        bool ok = true;
        for (size_t i = 0; i < P.size() && ok; i++) {
            for (ObjectRef o : {ObjectRef{ObjectRef::Kind::vertex, (int)i},
                                ObjectRef{ObjectRef::Kind::edge, (int)i}}) {
                if (o == pair.first || o == pair.second) continue;
                if (object_distance(P, o, probe) < r - 1e-3 * darc) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) out.push_back(sgn);
    }
    (void)c0;
    return out;
}

TraceResult trace_adjacent_node(const SimplePolygon& P, Point x,
                                std::pair<ObjectRef, ObjectRef> pair,
                                std::optional<int> sign) {
    auto Bo = bisector_for(P, pair.first, pair.second);
    if (!Bo) throw BadInput("trace: degenerate bisector for the pair");
    const Bisector& B = *Bo;
    double scale = std::max(1.0, P.scale());

    int sgn;
    if (sign) {
        sgn = *sign;
    } else {
        auto valid = valid_trace_signs(P, x, pair);
        if (valid.empty()) throw BadInput("trace: pair is not defining at x");
        sgn = valid.front();
    }

    Marcher M{P, B, pair.first, pair.second, {}, scale};
    for (ObjectRef o : clearance(P, x).nearest)
        if (!M.is_pair(o)) M.warm.push_back(o);

    double s0 = B.param_of(x);
    double darc = 1e-9 * scale;
    double tol_event = 1e-12 * scale;
    double s = s0 + sgn * darc / B.speed(s0);
    double s_prev = s;
    double limit = 1e4 * scale;

    ObjectRef hit{};
    for (int it = 0;; it++) {
        if (it > 20000 || std::abs(s - s0) > limit)
            throw ProtocolViolation("medial trace failed to terminate");
        Point xx = B.eval(s);
        double r = M.pair_dist(xx);
        ObjectRef who;
        double f = M.gap(xx, r, &who);
        if (f <= tol_event) {
            if (f < -1024 * tol_event) {
                // overshoot: bisect back to the crossing
                double lo = s_prev, hi = s;
                for (int k = 0; k < 200 && std::abs(hi - lo) > 1e-14 * scale; k++) {
                    double mid = 0.5 * (lo + hi);
                    Point xm = B.eval(mid);
                    double fm = M.gap(xm, M.pair_dist(xm));
                    (fm > tol_event ? lo : hi) = mid;
                }
                s = hi;
                xx = B.eval(s);
                r = M.pair_dist(xx);
                M.gap(xx, r, &who);
            }
            hit = who;
            break;
        }
        s_prev = s;
        double step = std::max(1e-12 * scale, 0.25 * f) / B.speed(s);
        s += sgn * step;
    }

    Point pos = B.eval(s);
    double r = M.pair_dist(pos);

    TraceResult out;
    out.kind = B.kind;
    out.curve = B;
    out.s_from = s0;
    out.s_to = s;

    // Leaf: the curve closes on a convex vertex, clearance ~0.
    if (hit.kind == ObjectRef::Kind::vertex && r < 1e-9 * scale &&
        vertex_is_convex(P, (size_t)hit.index)) {
        size_t vi = (size_t)hit.index;
        out.node.position = P.vertex(vi);
        out.node.clearance = 0;
        out.node.is_leaf = true;
        out.node.leaf_vertex = (int)vi;
        out.node.defining = {{ObjectRef::Kind::vertex, (int)vi},
                             {ObjectRef::Kind::edge, (int)((vi + P.size() - 1) % P.size())},
                             {ObjectRef::Kind::edge, (int)vi}};
        out.s_to = B.param_of(out.node.position);
        return out;
    }

    out.node.position = pos;
    out.node.clearance = r;
    Clearance c = clearance(P, pos);
    out.node.defining = c.nearest;
    // ensure the traced pair is recorded even if a hair outside the tolerance
    for (ObjectRef o : {pair.first, pair.second})
        if (std::find(out.node.defining.begin(), out.node.defining.end(), o) ==
            out.node.defining.end())
            out.node.defining.push_back(o);
    out.node.is_leaf = false;
    return out;
}

bool vertex_is_convex(const SimplePolygon& P, size_t i) {
    size_t n = P.size();
    return orient2d_sign(P.vertex((i + n - 1) % n), P.vertex(i), P.vertex((i + 1) % n)) > 0;
}

std::vector<ObjectRef> defining_objects_in_order(const SimplePolygon& P, Point x) {
    Clearance c = clearance(P, x);
    // include edges whose closed distance ties even when attained at an
    // endpoint, so transition nodes expose the backward pair too
    double tol = tolerance() * std::max(1.0, P.scale());
    std::vector<ObjectRef> objs = c.nearest;
    for (size_t i = 0; i < P.size(); i++) {
        ObjectRef o{ObjectRef::Kind::edge, (int)i};
        if (std::find(objs.begin(), objs.end(), o) != objs.end()) continue;
        if (object_distance(P, o, x) <= c.radius + tol) objs.push_back(o);
    }
    std::sort(objs.begin(), objs.end(), [&](ObjectRef a, ObjectRef b) {
        Point pa = object_nearest_point(P, a, x), pb = object_nearest_point(P, b, x);
        double ta = std::atan2(pa.y - x.y, pa.x - x.x);
        double tb = std::atan2(pb.y - x.y, pb.x - x.x);
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return objs;
}

MedialNode initial_medial_point(const SimplePolygon& P, size_t vertex) {
    size_t n = P.size();
    if (vertex >= n) throw BadInput("vertex index out of range");
    if (vertex_is_convex(P, vertex)) {
        ObjectRef e_prev{ObjectRef::Kind::edge, (int)((vertex + n - 1) % n)};
        ObjectRef e_next{ObjectRef::Kind::edge, (int)vertex};
        return trace_adjacent_node(P, P.vertex(vertex), {e_prev, e_next}).node;
    }
    // Reflex start: grow a disc pinned to the vertex along the inward normal
    // cone bisector until a second object ties.
    Point v = P.vertex(vertex);
    Point tp = P.vertex((vertex + n - 1) % n) - v;  // along incident edges, away from v
    Point tn = P.vertex((vertex + 1) % n) - v;
    auto unit = [](Point q) { return (1.0 / norm(q)) * q; };
    Point u = unit(-1.0 * (unit(tp) + unit(tn)));
    double scale = std::max(1.0, P.scale());
    ObjectRef self{ObjectRef::Kind::vertex, (int)vertex};
    ObjectRef einc1{ObjectRef::Kind::edge, (int)((vertex + n - 1) % n)};
    ObjectRef einc2{ObjectRef::Kind::edge, (int)vertex};
    double t = 1e-9 * scale;
    double t_prev = t;
    ObjectRef hit{};
    for (int it = 0;; it++) {
        if (it > 20000) throw ProtocolViolation("reflex start march failed");
        Point x = v + t * u;
        double r = t;
        double f = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; i++) {
            for (ObjectRef o : {ObjectRef{ObjectRef::Kind::vertex, (int)i},
                                ObjectRef{ObjectRef::Kind::edge, (int)i}}) {
                if (o == self || o == einc1 || o == einc2) continue;
                double d = object_distance(P, o, x) - r;
                if (d < f) {
                    f = d;
                    hit = o;
                }
            }
        }
        if (f <= 1e-12 * scale) {
            if (f < -1e-9 * scale) {
                double lo = t_prev, hi = t;
                for (int k = 0; k < 200 && hi - lo > 1e-14 * scale; k++) {
                    double mid = 0.5 * (lo + hi);
                    Point xm = v + mid * u;
                    double fm = std::numeric_limits<double>::infinity();
                    for (size_t i = 0; i < n; i++)
                        for (ObjectRef o : {ObjectRef{ObjectRef::Kind::vertex, (int)i},
                                            ObjectRef{ObjectRef::Kind::edge, (int)i}}) {
                            if (o == self || o == einc1 || o == einc2) continue;
                            fm = std::min(fm, object_distance(P, o, xm) - mid);
                        }
                    (fm > 0 ? lo : hi) = mid;
                }
                t = hi;
            }
            break;
        }
        t_prev = t;
        t += std::max(1e-12 * scale, 0.25 * f);
    }
    MedialNode m;
    m.position = v + t * u;
    m.clearance = t;
    m.defining = clearance(P, m.position).nearest;
    if (std::find(m.defining.begin(), m.defining.end(), self) == m.defining.end())
        m.defining.push_back(self);
    m.is_leaf = false;
    return m;
}

namespace {

struct NodeStore {
    std::vector<MedialNode> nodes;
    double tol;

    int find_or_add(const MedialNode& n) {
        for (size_t i = 0; i < nodes.size(); i++)
            if (dist(nodes[i].position, n.position) <= tol) return (int)i;
        nodes.push_back(n);
        return (int)nodes.size() - 1;
    }
    int find(Point p) const {
        for (size_t i = 0; i < nodes.size(); i++)
            if (dist(nodes[i].position, p) <= tol) return (int)i;
        return -1;
    }
};

}  // namespace

MedialAxis medial_axis(const SimplePolygon& P) {
    size_t n = P.size();
    int seed_vertex = -1;
    for (size_t i = 0; i < n; i++)
        if (vertex_is_convex(P, i)) {
            seed_vertex = (int)i;
            break;
        }
    if (seed_vertex < 0) throw BadInput("polygon without a convex vertex");

    double tol = 1e-7 * std::max(1.0, P.scale());
    NodeStore store{{}, tol};

    MedialNode leaf;
    leaf.position = P.vertex((size_t)seed_vertex);
    leaf.clearance = 0;
    leaf.is_leaf = true;
    leaf.leaf_vertex = seed_vertex;
    leaf.defining = {{ObjectRef::Kind::vertex, seed_vertex},
                     {ObjectRef::Kind::edge, (int)(((size_t)seed_vertex + n - 1) % n)},
                     {ObjectRef::Kind::edge, seed_vertex}};
    int leaf_id = store.find_or_add(leaf);

    MedialAxis M;
    std::deque<int> queue;
    std::set<int> enqueued;

    // seed: trace the leaf's angle bisector inward
    {
        ObjectRef e1{ObjectRef::Kind::edge, (int)(((size_t)seed_vertex + n - 1) % n)};
        ObjectRef e2{ObjectRef::Kind::edge, seed_vertex};
        TraceResult tr = trace_adjacent_node(P, leaf.position, {e1, e2});
        int nid = store.find_or_add(tr.node);
        MedialEdge e;
        e.a = leaf_id;
        e.b = nid;
        e.kind = tr.kind;
        e.def1 = e1;
        e.def2 = e2;
        e.curve = tr.curve;
        e.s_a = tr.s_from;
        e.s_b = tr.s_to;
        M.edges.push_back(e);
        if (!tr.node.is_leaf) {
            queue.push_back(nid);
            enqueued.insert(nid);
        }
    }

    std::set<std::pair<int, int>> edge_keys;
    edge_keys.insert({std::min(M.edges[0].a, M.edges[0].b), std::max(M.edges[0].a, M.edges[0].b)});

    while (!queue.empty()) {
        int nid = queue.front();
        queue.pop_front();
        MedialNode node = store.nodes[(size_t)nid];
        std::vector<ObjectRef> objs = defining_objects_in_order(P, node.position);
        size_t k = objs.size();
        if (k < 2) throw ProtocolViolation("medial node with fewer than 2 objects");
        {
            int vertex_count = 0;
            for (ObjectRef o : objs)
                if (o.kind == ObjectRef::Kind::vertex) vertex_count++;
            if (vertex_count >= 4)
                throw BadInput("four cocircular vertices (general position)");
        }
        size_t pair_count = (k == 2) ? 1 : k;
        for (size_t i = 0; i < pair_count; i++) {
            ObjectRef oa = objs[i], ob = objs[(i + 1) % k];
            auto signs = valid_trace_signs(P, node.position, {oa, ob});
            for (int sgn : signs) {
                TraceResult tr;
                try {
                    tr = trace_adjacent_node(P, node.position, {oa, ob}, sgn);
                } catch (const ProtocolViolation&) {
                    throw;
                }
                int mid = store.find_or_add(tr.node);
                if (mid == nid) continue;
                auto key = std::make_pair(std::min(nid, mid), std::max(nid, mid));
                if (edge_keys.count(key)) continue;
                edge_keys.insert(key);
                MedialEdge e;
                e.a = nid;
                e.b = mid;
                e.kind = tr.kind;
                e.def1 = oa;
                e.def2 = ob;
                e.curve = tr.curve;
                e.s_a = tr.s_from;
                e.s_b = tr.s_to;
                M.edges.push_back(e);
                if (!tr.node.is_leaf && !enqueued.count(mid)) {
                    queue.push_back(mid);
                    enqueued.insert(mid);
                }
            }
        }
    }

    M.nodes = store.nodes;
    M.adj.assign(M.nodes.size(), {});
    for (size_t e = 0; e < M.edges.size(); e++) {
        M.adj[(size_t)M.edges[e].a].push_back((int)e);
        M.adj[(size_t)M.edges[e].b].push_back((int)e);
    }
    if (M.edges.size() + 1 != M.nodes.size())
        throw ProtocolViolation("medial axis is not a tree");
    M.diameter = unweighted_diameter(M);
    return M;
}

namespace {

std::pair<int, int> farthest_from(const MedialAxis& M, int start) {
    std::vector<int> distv(M.nodes.size(), -1);
    std::deque<int> q{start};
    distv[(size_t)start] = 0;
    int best = start;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (distv[(size_t)u] > distv[(size_t)best]) best = u;
        for (int e : M.adj[(size_t)u]) {
            int v = M.other_end(e, u);
            if (distv[(size_t)v] < 0) {
                distv[(size_t)v] = distv[(size_t)u] + 1;
                q.push_back(v);
            }
        }
    }
    return {best, distv[(size_t)best]};
}

}  // namespace

int unweighted_diameter(const MedialAxis& M) {
    if (M.nodes.empty()) throw BadInput("empty medial axis");
    if (M.adj.empty()) return 0;
    auto [a, d1] = farthest_from(M, 0);
    auto [b, d2] = farthest_from(M, a);
    (void)b;
    (void)d1;
    return d2;
}

}  // namespace polyguard
