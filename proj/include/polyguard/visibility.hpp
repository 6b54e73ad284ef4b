#pragma once

#include <optional>
#include <vector>

#include "polyguard/polygon.hpp"

namespace polyguard {

// Star-shaped region of everything in line of sight from the viewpoint.
// Boundary is counterclockwise; vertices that are not polygon vertices
// (window endpoints) carry vertex_id == -1.
struct VisibilityPolygon {
    struct BoundaryPoint {
        Point p;
        int vertex_id = -1;
    };
    // Edge i joins boundary[i] -> boundary[i+1 mod size]; polygon_edge is the
    // source edge index for wall fragments, -1 for window (radial) edges.
    struct EdgeInfo {
        int polygon_edge = -1;
        bool window() const { return polygon_edge < 0; }
    };

    Point viewpoint;
    std::vector<BoundaryPoint> boundary;
    std::vector<EdgeInfo> edges;

    std::vector<Point> ring() const;
    double area() const;
};

// Visibility polygon clipped until every boundary vertex is a polygon
// vertex. Edges are either whole polygon edges or gap edges (internal
// diagonals fencing off unseen territory).
struct VertexLimitedVisibilityPolygon {
    struct Edge {
        bool gap = false;
        int polygon_edge = -1;  // valid when !gap
    };

    Point viewpoint;
    std::vector<int> vertex_ids;  // ccw, polygon vertex indices
    std::vector<Edge> edges;      // edge i joins vertex_ids[i] -> [i+1 mod size]

    std::vector<std::pair<int, int>> gap_edges() const;
    std::vector<Point> ring(const SimplePolygon& P) const;
    double area(const SimplePolygon& P) const;
};

// Angular sweep around g. orient_vertex, when given, fixes the sweep start
// ray (and therefore where the boundary walk begins).
VisibilityPolygon visibility_polygon(const SimplePolygon& P, Point g,
                                     std::optional<size_t> orient_vertex = std::nullopt);

enum class ClipOrder { forward, reverse };

VertexLimitedVisibilityPolygon vertex_limited_visibility_polygon(
    const SimplePolygon& P, Point g, std::optional<size_t> orient_vertex = std::nullopt,
    ClipOrder order = ClipOrder::forward);

}  // namespace polyguard
