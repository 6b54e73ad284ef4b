#include "polyguard/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>

// Exact floating-point expansion arithmetic (error-free transforms) backing
// the orientation predicate. The fast path is a filtered double evaluation;
// the exact path runs only near degeneracy.

namespace polyguard {
namespace {

struct TwoFloat {
    double hi, lo;
};

inline TwoFloat two_sum(double a, double b) {
    double s = a + b;
    double bv = s - a;
    double av = s - bv;
    return {s, (a - av) + (b - bv)};
}

inline TwoFloat two_product(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Merge two nonoverlapping expansions (increasing magnitude order) into one,
// dropping zero components. Classic fast-expansion-sum.
int expansion_sum(int elen, const double* e, int flen, const double* f, double* h) {
    int eidx = 0, fidx = 0, hidx = 0;
    double enow = e[eidx], fnow = f[fidx];
    double q;
    if ((fnow > enow) == (fnow > -enow)) {
        q = enow;
        eidx++;
    } else {
        q = fnow;
        fidx++;
    }
    auto advance = [&](double g) {
        TwoFloat r = two_sum(q, g);
        q = r.hi;
        if (r.lo != 0.0) h[hidx++] = r.lo;
    };
    while (eidx < elen && fidx < flen) {
        enow = e[eidx];
        fnow = f[fidx];
        if ((fnow > enow) == (fnow > -enow)) {
            advance(enow);
            eidx++;
        } else {
            advance(fnow);
            fidx++;
        }
    }
    while (eidx < elen) advance(e[eidx++]);
    while (fidx < flen) advance(f[fidx++]);
    if (q != 0.0 || hidx == 0) h[hidx++] = q;
    return hidx;
}

// Exact value of the 2x2 orientation determinant as an expansion estimate.
// det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + cy*bx
double orient2d_exact_estimate(Point a, Point b, Point c) {
    TwoFloat terms[6] = {
        two_product(a.x, b.y), two_product(-a.x, c.y), two_product(-c.x, b.y),
        two_product(-a.y, b.x), two_product(a.y, c.x), two_product(c.y, b.x),
    };
    double acc[16], tmp[16];
    int acclen = 0;
    for (const TwoFloat& t : terms) {
        double pair[2] = {t.lo, t.hi};
        int plen = (t.lo == 0.0) ? 1 : 2;
        const double* p = (plen == 1) ? &pair[1] : pair;
        if (acclen == 0) {
            for (int i = 0; i < plen; i++) acc[i] = p[i];
            acclen = plen;
        } else {
            acclen = expansion_sum(acclen, acc, plen, p, tmp);
            std::copy(tmp, tmp + acclen, acc);
        }
    }
    double est = 0;
    for (int i = 0; i < acclen; i++) est += acc[i];
    return est;
}

inline double coord_scale(Point a, Point b, Point c) {
    return std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y),
                     std::abs(c.x), std::abs(c.y)});
}

constexpr double kOrientFilter = 3.3306690738754716e-16;  // (3 + 16 eps) eps

}  // namespace

int orient2d_sign(Point p, Point q, Point r) {
    double detleft = (q.x - p.x) * (r.y - p.y);
    double detright = (q.y - p.y) * (r.x - p.x);
    double det = detleft - detright;
    double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) > kOrientFilter * detsum) return det > 0 ? 1 : -1;
    double exact = orient2d_exact_estimate(p, q, r);
    return exact > 0 ? 1 : (exact < 0 ? -1 : 0);
}

Orientation orientation(Point p, Point q, Point r) {
    double scale = coord_scale(p, q, r);
    double thresh = 1e-12 * scale * scale;
    double detleft = (q.x - p.x) * (r.y - p.y);
    double detright = (q.y - p.y) * (r.x - p.x);
    double det = detleft - detright;
    double slop = kOrientFilter * (std::abs(detleft) + std::abs(detright));
    if (std::abs(det) > thresh + slop)
        return det > 0 ? Orientation::counterclockwise : Orientation::clockwise;
    double exact = orient2d_exact_estimate(p, q, r);
    if (std::abs(exact) <= thresh) return Orientation::collinear;
    return exact > 0 ? Orientation::counterclockwise : Orientation::clockwise;
}

int incircle_sign(Point a, Point b, Point c, Point d) {
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;
    double ad2 = adx * adx + ady * ady;
    double bd2 = bdx * bdx + bdy * bdy;
    double cd2 = cdx * cdx + cdy * cdy;
    double det = ad2 * (bdx * cdy - bdy * cdx) - bd2 * (adx * cdy - ady * cdx) +
                 cd2 * (adx * bdy - ady * bdx);
    double scale = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y),
                             std::abs(c.x), std::abs(c.y), std::abs(d.x), std::abs(d.y)});
    double s2 = scale * scale;
    double thresh = 1e-12 * s2 * s2;
    if (std::abs(det) <= thresh) return 0;
    return det > 0 ? 1 : -1;
}

double segment_dist2(Point x, Point a, Point b, double* t_out) {
    Point ab = b - a;
    double len2 = norm2(ab);
    double t = len2 > 0 ? dot(x - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    if (t_out) *t_out = t;
    Point proj = a + t * ab;
    return dist2(x, proj);
}

bool on_segment(Point x, Point a, Point b) {
    if (orient2d_sign(a, b, x) != 0) return false;
    return std::min(a.x, b.x) <= x.x && x.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= x.y && x.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
    int o1 = orient2d_sign(a, b, c);
    int o2 = orient2d_sign(a, b, d);
    int o3 = orient2d_sign(c, d, a);
    int o4 = orient2d_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

}  // namespace polyguard
