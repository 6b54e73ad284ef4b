#include "polyguard/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyguard/config.hpp"

namespace polyguard {

std::vector<Point> VisibilityPolygon::ring() const {
    std::vector<Point> r;
    r.reserve(boundary.size());
    for (const auto& b : boundary) r.push_back(b.p);
    return r;
}

double VisibilityPolygon::area() const { return signed_area(ring()); }

std::vector<std::pair<int, int>> VertexLimitedVisibilityPolygon::gap_edges() const {
    std::vector<std::pair<int, int>> out;
    size_t m = vertex_ids.size();
    for (size_t i = 0; i < m; i++)
        if (edges[i].gap) out.emplace_back(vertex_ids[i], vertex_ids[(i + 1) % m]);
    return out;
}

std::vector<Point> VertexLimitedVisibilityPolygon::ring(const SimplePolygon& P) const {
    std::vector<Point> r;
    r.reserve(vertex_ids.size());
    for (int v : vertex_ids) r.push_back(P.vertex((size_t)v));
    return r;
}

double VertexLimitedVisibilityPolygon::area(const SimplePolygon& P) const {
    return signed_area(ring(P));
}

namespace {

constexpr int kWindow = -1;

struct Cover {
    double t = std::numeric_limits<double>::infinity();
    Point pt;
    int edge_id = -1;
    int vertex_id = -1;
    bool valid() const { return t < std::numeric_limits<double>::infinity(); }
};

struct Event {
    Point anchor;                               // fixes the ray direction
    std::vector<std::pair<double, int>> verts;  // (t along ray, vertex id)
};

// Rotational sweep. Events are the polygon vertices in angular order around
// the viewpoint; at each event the nearest boundary just before and just
// after the ray decides what the visible boundary does there (wall continues,
// vertex passes, or a radial window opens). Between events the nearest edge
// cannot change, so no incremental structure is needed.
class Sweep {
  public:
    Sweep(const SimplePolygon& P, Point g) : P_(P), g_(g), n_(P.size()) {}

    VisibilityPolygon run(std::optional<size_t> orient_vertex) {
        classify_viewpoint();
        w0_anchor_ = (mode_ == Mode::cone) ? P_.vertex(next_)
                                           : P_.vertex(orient_vertex.value_or(first_candidate()));
        build_events();
        if (events_.empty()) throw ProtocolViolation("visibility sweep found no events");
        for (size_t k = 0; k < events_.size(); k++) process_event(k);
        return assemble();
    }

  private:
    enum class Mode { full, cone };

    void classify_viewpoint() {
        if (auto gv = P_.vertex_at(g_)) {
            mode_ = Mode::cone;
            self_vertex_ = (int)*gv;
            next_ = (*gv + 1) % n_;
            prev_ = (*gv + n_ - 1) % n_;
            skip_ = {*gv, prev_};  // edge ids incident to g
            cone_first_edge_ = (int)*gv;
            cone_last_edge_ = (int)prev_;
            return;
        }
        PointLocation loc = P_.locate(g_);
        if (loc == PointLocation::outside)
            throw BadInput("visibility_polygon: point outside polygon");
        if (loc == PointLocation::boundary) {
            mode_ = Mode::cone;
            for (size_t i = 0; i < n_; i++)
                if (on_segment(g_, P_.edge_a(i), P_.edge_b(i))) {
                    next_ = (i + 1) % n_;
                    prev_ = i;
                    skip_ = {i};
                    cone_first_edge_ = cone_last_edge_ = (int)i;
                    return;
                }
            throw ProtocolViolation("boundary point not on any edge");
        }
        mode_ = Mode::full;
    }

    size_t first_candidate() const {
        for (size_t i = 0; i < n_; i++)
            if (!(P_.vertex(i) == g_)) return i;
        throw BadInput("degenerate polygon");
    }

    bool skipped(size_t e) const {
        return std::find(skip_.begin(), skip_.end(), e) != skip_.end();
    }

    // Angular half relative to the start direction: half 0 covers [w0, w0+pi).
    int half(Point v) const {
        int c = orient2d_sign(g_, w0_anchor_, v);
        if (c > 0) return 0;
        if (c < 0) return 1;
        return dot(v - g_, w0_anchor_ - g_) > 0 ? 0 : 1;
    }

    bool in_cone(Point v) const {
        Point a = P_.vertex(next_), b = P_.vertex(prev_);
        int oa = orient2d_sign(g_, a, v);
        int ob = orient2d_sign(g_, v, b);
        int oab = orient2d_sign(g_, a, b);
        if (oa == 0) return dot(v - g_, a - g_) > 0;
        if (ob == 0) return dot(v - g_, b - g_) > 0;
        if (oab > 0) return oa > 0 && ob > 0;
        if (oab < 0) return oa > 0 || ob > 0;
        return oa > 0;  // straight cone boundary (viewpoint on an edge)
    }

    double param_on_ray(Point anchor, Point q) const {
        Point w = anchor - g_;
        return dot(q - g_, w) / norm2(w);
    }

    void build_events() {
        std::vector<int> cand;
        for (size_t i = 0; i < n_; i++) {
            if (self_vertex_ >= 0 && (int)i == self_vertex_) continue;
            if (P_.vertex(i) == g_) continue;
            if (mode_ == Mode::cone && !in_cone(P_.vertex(i))) continue;
            cand.push_back((int)i);
        }
        std::sort(cand.begin(), cand.end(), [&](int ia, int ib) {
            Point a = P_.vertex((size_t)ia), b = P_.vertex((size_t)ib);
            int ha = half(a), hb = half(b);
            if (ha != hb) return ha < hb;
            int c = orient2d_sign(g_, a, b);
            if (c != 0) return c > 0;
            return dist2(g_, a) < dist2(g_, b);
        });
        for (int vi : cand) {
            Point v = P_.vertex((size_t)vi);
            if (!events_.empty()) {
                Point a = events_.back().anchor;
                if (orient2d_sign(g_, a, v) == 0 && dot(v - g_, a - g_) > 0) {
                    events_.back().verts.emplace_back(param_on_ray(a, v), vi);
                    continue;
                }
            }
            events_.push_back({v, {{1.0, vi}}});
        }
        for (auto& e : events_) std::sort(e.verts.begin(), e.verts.end());
    }

    static void take(Cover& best, const Cover& c) {
        if (c.t < best.t || (c.t == best.t && c.edge_id < best.edge_id)) best = c;
    }

    void process_event(size_t k) {
        const Event& ev = events_[k];
        Point A = ev.anchor;
        Point w = A - g_;
        Cover before, after;
        for (size_t e = 0; e < n_; e++) {
            if (skipped(e)) continue;
            Point u = P_.edge_a(e), v = P_.edge_b(e);
            int su = orient2d_sign(g_, A, u);
            int sv = orient2d_sign(g_, A, v);
            if (su == 0 && sv == 0) continue;  // along the ray line, never blocks
            if (su == 0 || sv == 0) {
                Point q = (su == 0) ? u : v;
                int side = (su == 0) ? sv : su;
                if (dot(q - g_, w) <= 0) continue;  // touches the backward ray
                int qid = (su == 0) ? (int)e : (int)((e + 1) % n_);
                Cover c{param_on_ray(A, q), q, (int)e, qid};
                take(side > 0 ? after : before, c);
                continue;
            }
            if (su == sv) continue;
            double denom = cross(w, v - u);
            double t = cross(u - g_, v - u) / denom;
            if (t <= 0) continue;
            Cover c{t, g_ + t * w, (int)e, -1};
            take(before, c);
            take(after, c);
        }

        Cover nearest_vertex{ev.verts.front().first,
                             P_.vertex((size_t)ev.verts.front().second), kWindow,
                             ev.verts.front().second};
        bool first = (mode_ == Mode::cone) && k == 0;
        bool last = (mode_ == Mode::cone) && k + 1 == events_.size();
        if (first || !before.valid()) before = nearest_vertex;
        if (last || !after.valid()) after = nearest_vertex;

        double dmin = std::min(before.t, after.t);
        double dmax = std::max(before.t, after.t);
        double slop = 1e-9 * std::max(1.0, dmax);

        std::vector<std::pair<double, int>> vis;
        for (const auto& [t, vi] : ev.verts)
            if (t >= dmin - slop && t <= dmax + slop) vis.emplace_back(t, vi);

        if (vis.empty() && before.edge_id >= 0 && before.edge_id == after.edge_id) {
            incoming_wall_ = after.edge_id;  // occluded event, wall unchanged
            return;
        }

        std::vector<std::pair<Point, int>> items;
        items.emplace_back(before.pt, before.vertex_id);
        if (before.t <= after.t) {
            for (const auto& [t, vi] : vis) items.emplace_back(P_.vertex((size_t)vi), vi);
        } else {
            for (auto it = vis.rbegin(); it != vis.rend(); ++it)
                items.emplace_back(P_.vertex((size_t)it->second), it->second);
        }
        items.emplace_back(after.pt, after.vertex_id);

        for (size_t i = 0; i < items.size(); i++)
            emit(items[i].first, items[i].second, i == 0 ? incoming_wall_ : kWindow);
        incoming_wall_ = after.edge_id;
    }

    void emit(Point p, int vid, int arrival_tag) {
        if (!out_.empty() && out_.back().p == p) {
            if (out_.back().vertex_id < 0) out_.back().vertex_id = vid;
            return;
        }
        out_.push_back({p, vid});
        arr_tag_.push_back(arrival_tag);
    }

    VisibilityPolygon assemble() {
        VisibilityPolygon V;
        V.viewpoint = g_;
        if (mode_ == Mode::cone) {
            V.boundary.push_back({g_, self_vertex_});
            V.edges.push_back({cone_first_edge_});
            for (size_t i = 0; i < out_.size(); i++) {
                V.boundary.push_back({out_[i].p, out_[i].vertex_id});
                V.edges.push_back({i + 1 < out_.size() ? arr_tag_[i + 1] : cone_last_edge_});
            }
        } else {
            if (out_.size() > 1 && out_.front().p == out_.back().p) {
                out_.pop_back();
                arr_tag_.pop_back();
            }
            arr_tag_[0] = incoming_wall_;  // wrap-around wall
            size_t m = out_.size();
            for (size_t i = 0; i < m; i++) {
                V.boundary.push_back({out_[i].p, out_[i].vertex_id});
                V.edges.push_back({arr_tag_[(i + 1) % m]});
            }
        }
        if (V.boundary.size() < 3) throw ProtocolViolation("degenerate visibility polygon");
        return V;
    }

    struct OutPoint {
        Point p;
        int vertex_id;
    };

    const SimplePolygon& P_;
    Point g_;
    size_t n_;
    Mode mode_ = Mode::full;
    size_t next_ = 0, prev_ = 0;
    int self_vertex_ = -1;
    int cone_first_edge_ = -1, cone_last_edge_ = -1;
    std::vector<size_t> skip_;
    Point w0_anchor_;
    std::vector<Event> events_;
    std::vector<OutPoint> out_;
    std::vector<int> arr_tag_;
    int incoming_wall_ = kWindow;
};

}  // namespace

VisibilityPolygon visibility_polygon(const SimplePolygon& P, Point g,
                                     std::optional<size_t> orient_vertex) {
    Sweep s(P, g);
    return s.run(orient_vertex);
}

VertexLimitedVisibilityPolygon vertex_limited_visibility_polygon(
    const SimplePolygon& P, Point g, std::optional<size_t> orient_vertex, ClipOrder order) {
    VisibilityPolygon V = visibility_polygon(P, g, orient_vertex);

    std::vector<Point> pts;
    std::vector<int> vid;
    for (const auto& b : V.boundary) {
        pts.push_back(b.p);
        vid.push_back(b.vertex_id);
    }
    // Iteratively cut spurious vertices, joining predecessor and successor;
    // the discarded triangle never holds the viewpoint.
    while (true) {
        size_t m = pts.size();
        bool found = false;
        for (size_t step = 0; step < m; step++) {
            size_t i = (order == ClipOrder::forward) ? step : (m - 1 - step);
            if (vid[i] < 0) {
                pts.erase(pts.begin() + (long)i);
                vid.erase(vid.begin() + (long)i);
                found = true;
                break;
            }
        }
        if (!found) break;
        if (pts.size() < 3) throw ProtocolViolation("vertex-limited clipping degenerated");
    }

    VertexLimitedVisibilityPolygon out;
    out.viewpoint = g;
    out.vertex_ids.assign(vid.begin(), vid.end());
    size_t m = out.vertex_ids.size();
    size_t n = P.size();
    for (size_t i = 0; i < m; i++) {
        int a = out.vertex_ids[i];
        int b = out.vertex_ids[(i + 1) % m];
        VertexLimitedVisibilityPolygon::Edge e;
        if ((a + 1) % (int)n == b) {
            e.gap = false;
            e.polygon_edge = a;
        } else {
            e.gap = true;
        }
        out.edges.push_back(e);
    }
    return out;
}

}  // namespace polyguard
