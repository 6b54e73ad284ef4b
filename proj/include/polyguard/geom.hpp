#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace polyguard {

struct Point {
    double x = 0;
    double y = 0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
    friend auto operator<=>(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline double dist2(Point a, Point b) { return norm2(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }  // rotate +90 degrees
inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

enum class Orientation { clockwise = -1, collinear = 0, counterclockwise = 1 };

// Exact sign of cross(q - p, r - p). Fast float filter with an exact
// expansion-arithmetic fallback, never wrong.
int orient2d_sign(Point p, Point q, Point r);

// Toleranced orientation: collinear whenever the exact cross product
// magnitude is at most 1e-12 * max coordinate magnitude squared.
Orientation orientation(Point p, Point q, Point r);

// Sign of the incircle determinant for a,b,c counterclockwise; float filter
// only — returns 0 when the test is within rounding slop of degenerate,
// which is exactly the "too close to cocircular" verdict validation needs.
int incircle_sign(Point a, Point b, Point c, Point d);

// Squared distance from x to the closed segment [a,b]; t_out, when non-null,
// receives the clamped projection parameter in [0,1].
double segment_dist2(Point x, Point a, Point b, double* t_out = nullptr);

// True when the closed segments [a,b] and [c,d] intersect (exact predicates).
bool segments_intersect(Point a, Point b, Point c, Point d);

// True when x lies on the closed segment [a,b] (exact collinearity + box test).
bool on_segment(Point x, Point a, Point b);

}  // namespace polyguard
