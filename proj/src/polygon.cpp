#include "polyguard/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "polyguard/config.hpp"

namespace polyguard {

double signed_area(const std::vector<Point>& ring) {
    double s = 0;
    size_t n = ring.size();
    for (size_t i = 0; i < n; i++) s += cross(ring[i], ring[(i + 1) % n]);
    return 0.5 * s;
}

void SimplePolygon::finish_init() {
    area_ = signed_area(verts_);
    scale_ = 0;
    for (const Point& p : verts_)
        scale_ = std::max({scale_, std::abs(p.x), std::abs(p.y)});
}

SimplePolygon SimplePolygon::trusted(std::vector<Point> vertices) {
    SimplePolygon P;
    P.verts_ = std::move(vertices);
    P.finish_init();
    return P;
}

SimplePolygon::SimplePolygon(std::vector<Point> vertices) {
    verts_ = std::move(vertices);
    size_t n = verts_.size();
    if (n < 4) throw BadInput("polygon needs at least 4 vertices");
    for (const Point& p : verts_)
        if (!finite(p)) throw BadInput("polygon has non-finite coordinates");
    finish_init();
    if (area_ <= 0) throw BadInput("polygon must be counterclockwise (signed area > 0)");

    // Simplicity: non-adjacent edges must not intersect; adjacent edges meet
    // only at the shared vertex (zero-length edges rejected here too).
    for (size_t i = 0; i < n; i++)
        if (verts_[i] == verts_[(i + 1) % n]) throw BadInput("zero-length edge");
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(edge_a(i), edge_b(i), edge_a(j), edge_b(j)))
                throw BadInput("polygon boundary self-intersects");
        }
    }

    // General position: no three consecutive vertices collinear (straight or
    // spike corners). Wider alignments and cocircular quadruples are tolerated
    // here; the visibility sweep handles grazing alignments exactly and the
    // medial tracer rejects a genuinely degenerate four-way vertex node.
    for (size_t i = 0; i < n; i++) {
        if (orientation(verts_[(i + n - 1) % n], verts_[i], verts_[(i + 1) % n]) ==
            Orientation::collinear)
            throw BadInput("three consecutive vertices are collinear");
    }
}

PointLocation SimplePolygon::locate(Point p) const {
    size_t n = verts_.size();
    for (size_t i = 0; i < n; i++)
        if (on_segment(p, edge_a(i), edge_b(i))) return PointLocation::boundary;
    // Crossing count against a ray going in +x; boundary cases are excluded
    // above so vertex grazes are resolved with the half-open rule.
    bool inside = false;
    for (size_t i = 0; i < n; i++) {
        Point a = edge_a(i), b = edge_b(i);
        if ((a.y > p.y) != (b.y > p.y)) {
            int side = orient2d_sign(a, b, p);
            if ((b.y > a.y && side > 0) || (b.y < a.y && side < 0)) inside = !inside;
        }
    }
    return inside ? PointLocation::inside : PointLocation::outside;
}

std::optional<size_t> SimplePolygon::vertex_at(Point p) const {
    for (size_t i = 0; i < verts_.size(); i++)
        if (verts_[i] == p) return i;
    return std::nullopt;
}

bool points_visible(const SimplePolygon& P, Point a, Point b) {
    if (P.locate(a) == PointLocation::outside || P.locate(b) == PointLocation::outside)
        throw BadInput("points_visible: endpoint outside polygon");
    if (a == b) return true;  // empty open segment

    // Gather every boundary touch along [a,b] as a parameter, then test the
    // midpoint of each gap between touches for containment.
    size_t n = P.size();
    std::vector<double> ts = {0.0, 1.0};
    Point d = b - a;
    double len2 = norm2(d);
    auto param = [&](Point q) { return dot(q - a, d) / len2; };
    for (size_t i = 0; i < n; i++) {
        Point u = P.edge_a(i), v = P.edge_b(i);
        int ou = orient2d_sign(a, b, u);
        int ov = orient2d_sign(a, b, v);
        if (ou == 0 && ov == 0) {
            // Collinear overlap: both endpoints, clamped into [0,1].
            for (Point q : {u, v}) {
                double t = param(q);
                if (t > 0 && t < 1) ts.push_back(t);
            }
            continue;
        }
        int oa = orient2d_sign(u, v, a);
        int ob = orient2d_sign(u, v, b);
        if (ou == 0) {
            double t = param(u);
            if (t > 0 && t < 1) ts.push_back(t);
            continue;
        }
        if (ov == 0) {
            double t = param(v);
            if (t > 0 && t < 1) ts.push_back(t);
            continue;
        }
        if (oa == 0 || ob == 0) continue;  // touch at a or b only
        if (ou != ov && oa != ob) {
            // Proper crossing; still recorded as a touch and adjudicated by
            // the midpoint containment below (it will fail there).
            double t = cross(u - a, v - u) / cross(d, v - u);
            ts.push_back(std::clamp(t, 0.0, 1.0));
        }
    }
    std::sort(ts.begin(), ts.end());
    for (size_t i = 0; i + 1 < ts.size(); i++) {
        if (ts[i + 1] - ts[i] < 1e-15) continue;
        Point mid = a + (0.5 * (ts[i] + ts[i + 1])) * d;
        if (P.locate(mid) == PointLocation::outside) return false;
    }
    return true;
}

bool SimplePolygon::is_diagonal(size_t i, size_t j) const {
    size_t n = verts_.size();
    if (i == j) return false;
    if ((i + 1) % n == j || (j + 1) % n == i) return false;  // boundary edge
    Point a = verts_[i], b = verts_[j];
    Point mid = a + 0.5 * (b - a);
    if (locate(mid) != PointLocation::inside) return false;
    return points_visible(*this, a, b);
}

SimplePolygon crop(const SimplePolygon& P, Point c, size_t i, size_t j,
                   std::vector<size_t>* vertex_map) {
    size_t n = P.size();
    if (i >= n || j >= n) throw BadInput("crop: vertex index out of range");
    if (!P.is_diagonal(i, j)) throw BadInput("crop: segment is not an internal diagonal");
    if (on_segment(c, P.vertex(i), P.vertex(j))) throw BadInput("crop: point lies on the cut");
    if (P.locate(c) == PointLocation::outside) throw BadInput("crop: point outside polygon");

    auto walk = [&](size_t from, size_t to) {
        std::vector<size_t> idx;
        for (size_t k = from;; k = (k + 1) % n) {
            idx.push_back(k);
            if (k == to) break;
        }
        return idx;
    };
    std::vector<size_t> ring_a = walk(i, j);  // i..j plus closing diagonal j->i
    std::vector<size_t> ring_b = walk(j, i);

    auto materialize = [&](const std::vector<size_t>& idx) {
        std::vector<Point> pts;
        pts.reserve(idx.size());
        for (size_t k : idx) pts.push_back(P.vertex(k));
        return pts;
    };
    std::vector<Point> pa = materialize(ring_a);
    SimplePolygon A = SimplePolygon::trusted(pa);
    bool c_in_a = A.locate(c) != PointLocation::outside;
    const std::vector<size_t>& keep = c_in_a ? ring_b : ring_a;
    if (vertex_map) *vertex_map = keep;
    return SimplePolygon::trusted(materialize(keep));
}

}  // namespace polyguard
