#pragma once

#include <optional>
#include <vector>

#include "polyguard/polygon.hpp"

namespace polyguard {

struct Clearance {
    double radius = 0;
    std::vector<ObjectRef> nearest;  // all objects attaining the minimum
};

// Minimum distance from x to any polygon object, with the attaining set.
Clearance clearance(const SimplePolygon& P, Point x);

double object_distance(const SimplePolygon& P, ObjectRef o, Point x);
Point object_nearest_point(const SimplePolygon& P, ObjectRef o, Point x);

enum class CurveKind { line_segment, parabolic_arc };

// Bisector curve of two objects, parametrized for marching and sampling.
struct Bisector {
    CurveKind kind = CurveKind::line_segment;
    // line: p0 + s*dir (dir unit)
    Point p0, dir;
    // parabola frame: origin at the focus foot on the directrix, dx along the
    // directrix (unit), dy toward the focus (unit), h = focus height
    Point o, dx, dy;
    double h = 0;

    Point eval(double s) const;
    double speed(double s) const;  // |d eval / ds|
    double param_of(Point q) const;
};

// Bisector of the pair; nullopt for degenerate pairs (e.g. an edge with its
// own endpoint) which never carry a medial edge.
std::optional<Bisector> bisector_for(const SimplePolygon& P, ObjectRef a, ObjectRef b);

struct MedialNode {
    Point position;
    double clearance = 0;
    std::vector<ObjectRef> defining;
    bool is_leaf = false;
    int leaf_vertex = -1;  // polygon vertex index when is_leaf
};

struct MedialEdge {
    int a = -1, b = -1;  // node ids
    CurveKind kind = CurveKind::line_segment;
    ObjectRef def1, def2;
    Bisector curve;
    double s_a = 0, s_b = 0;  // curve params of the endpoints

    Point sample(double u) const {  // u in (0,1)
        return curve.eval(s_a + u * (s_b - s_a));
    }
};

struct MedialAxis {
    std::vector<MedialNode> nodes;
    std::vector<MedialEdge> edges;
    std::vector<std::vector<int>> adj;  // node -> edge ids
    int diameter = 0;

    int other_end(int edge_id, int node) const {
        const MedialEdge& e = edges[(size_t)edge_id];
        return e.a == node ? e.b : e.a;
    }
};

struct TraceResult {
    MedialNode node;
    CurveKind kind = CurveKind::line_segment;
    Bisector curve;
    double s_from = 0, s_to = 0;
};

// Follows the bisector of the pair away from x until a third object reaches
// the clearance distance (or the curve closes on a convex vertex). `sign`
// forces a direction; by default the unique locally valid one is taken.
TraceResult trace_adjacent_node(const SimplePolygon& P, Point x,
                                std::pair<ObjectRef, ObjectRef> pair,
                                std::optional<int> sign = std::nullopt);

// True when the ordered direction (away from x along the pair's bisector,
// signed) keeps the pair as the nearest objects.
std::vector<int> valid_trace_signs(const SimplePolygon& P, Point x,
                                   std::pair<ObjectRef, ObjectRef> pair);

// Objects tied at x, in angular order of their touch points around x;
// consecutive entries are the pairs whose bisectors leave x.
std::vector<ObjectRef> defining_objects_in_order(const SimplePolygon& P, Point x);

// Complete medial axis, traced outward from a convex-vertex leaf.
MedialAxis medial_axis(const SimplePolygon& P);

int unweighted_diameter(const MedialAxis& M);

bool vertex_is_convex(const SimplePolygon& P, size_t i);

// First medial axis point reachable from a start vertex: the adjacent node
// for a convex vertex, or the first maximal-disc center along the inward
// normal-cone bisector for a reflex one.
MedialNode initial_medial_point(const SimplePolygon& P, size_t vertex);

}  // namespace polyguard
