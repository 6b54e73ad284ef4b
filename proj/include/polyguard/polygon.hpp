#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyguard/geom.hpp"

namespace polyguard {

// A vertex or edge of a polygon. Indices are 0-based in memory; serialized
// forms are 1-based. Edge k joins vertex k and vertex (k+1) mod n.
struct ObjectRef {
    enum class Kind : uint8_t { vertex, edge };
    Kind kind = Kind::vertex;
    int index = 0;

    friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
    friend auto operator<=>(const ObjectRef&, const ObjectRef&) = default;
};

enum class PointLocation { outside, boundary, inside };

// Simple polygon, counterclockwise, n >= 4, general position enforced on
// construction (no three collinear vertices; near-cocircular quadruples are
// screened exhaustively for small n and caught lazily by the medial tracer
// otherwise).
class SimplePolygon {
  public:
    // Validating constructor; throws BadInput on violation.
    explicit SimplePolygon(std::vector<Point> vertices);

    // Construction-by-parts (crops, clipped regions): skips the quadratic and
    // cubic validation passes; caller guarantees validity.
    static SimplePolygon trusted(std::vector<Point> vertices);

    size_t size() const { return verts_.size(); }
    const std::vector<Point>& vertices() const { return verts_; }
    Point vertex(size_t i) const { return verts_[i]; }
    Point edge_a(size_t i) const { return verts_[i]; }
    Point edge_b(size_t i) const { return verts_[(i + 1) % verts_.size()]; }

    double area() const { return area_; }
    // Largest coordinate magnitude; the scale for relative tolerances.
    double scale() const { return scale_; }

    PointLocation locate(Point p) const;
    bool contains(Point p) const { return locate(p) != PointLocation::outside; }

    // Exact index of the vertex equal to p, if any.
    std::optional<size_t> vertex_at(Point p) const;

    // True when the open segment between distinct vertices i,j lies in the
    // interior (an internal diagonal).
    bool is_diagonal(size_t i, size_t j) const;

  private:
    SimplePolygon() = default;
    void finish_init();
    std::vector<Point> verts_;
    double area_ = 0;
    double scale_ = 0;
};

// True iff the open segment ab stays within P (grazing the boundary at
// isolated points or running along it does not block). Requires a,b in P.
bool points_visible(const SimplePolygon& P, Point a, Point b);

// Sub-polygon cut off by the diagonal (i,j), discarding the side holding c.
// The vertex_map output (optional) gives, per result vertex, its index in P.
SimplePolygon crop(const SimplePolygon& P, Point c, size_t i, size_t j,
                   std::vector<size_t>* vertex_map = nullptr);

double signed_area(const std::vector<Point>& ring);

}  // namespace polyguard
