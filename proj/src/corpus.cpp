#include "polyguard/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyguard/config.hpp"

namespace polyguard {

namespace {

// Remove tour crossings by reversing segments; repeated sweeps until a clean
// pass. Proper crossings shorten the tour, so this terminates.
bool uncross(std::vector<Point>& ring, size_t max_passes) {
    size_t n = ring.size();
    for (size_t pass = 0; pass < max_passes; pass++) {
        bool dirty = false;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = i + 1; j < n; j++) {
                if (j == i + 1 || (i == 0 && j == n - 1)) continue;
                Point a = ring[i], b = ring[(i + 1) % n];
                Point c = ring[j], d = ring[(j + 1) % n];
                if (!segments_intersect(a, b, c, d)) continue;
                std::reverse(ring.begin() + (long)i + 1, ring.begin() + (long)j + 1);
                dirty = true;
            }
        }
        if (!dirty) return true;
    }
    return false;
}

}  // namespace

SimplePolygon random_simple_polygon(Rng& rng, size_t n) {
    for (int attempt = 0; attempt < 100; attempt++) {
        std::vector<Point> pts(n);
        for (auto& p : pts) p = {rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)};
        for (size_t i = n - 1; i > 0; i--) std::swap(pts[i], pts[rng.below(i + 1)]);
        if (!uncross(pts, 40 * n + 100)) continue;
        if (signed_area(pts) < 0) std::reverse(pts.begin(), pts.end());
        try {
            return SimplePolygon(pts);
        } catch (const BadInput&) {
            continue;
        }
    }
    throw ResourceExhausted("random polygon generation failed repeatedly");
}

std::vector<SimplePolygon> corpus(uint64_t seed, size_t count, size_t n_min, size_t n_max) {
    if (n_min < 4 || n_max < n_min) throw BadInput("corpus: bad vertex range");
    Rng rng(seed);
    std::vector<SimplePolygon> out;
    out.reserve(count);
    for (size_t i = 0; i < count; i++) {
        size_t n = n_min + (size_t)rng.below(n_max - n_min + 1);
        out.push_back(random_simple_polygon(rng, n));
    }
    return out;
}

SimplePolygon spiral_polygon(size_t turns) {
    // Polygonal spiral corridor: outer wall winding out, inner wall back.
    const double width = 1.0;
    const double growth = 1.6;               // radius gain per full turn (> width)
    const double step = std::numbers::pi / 4.5;  // 9 segments per turn
    const double r0 = 3.0;
    size_t m = (size_t)std::ceil(2 * std::numbers::pi * (double)turns / step);
    Rng jitter(12345);
    auto at = [&](double theta, double off) {
        double r = r0 + growth * theta / (2 * std::numbers::pi) + off;
        double jx = 1e-5 * (jitter.uniform() - 0.5);
        double jy = 1e-5 * (jitter.uniform() - 0.5);
        return Point{r * std::cos(theta) + jx, r * std::sin(theta) + jy};
    };
    std::vector<Point> pts;
    for (size_t i = 0; i <= m; i++) pts.push_back(at((double)i * step, 0.0));
    for (size_t i = m + 1; i-- > 0;) pts.push_back(at((double)i * step, width));
    if (signed_area(pts) < 0) std::reverse(pts.begin(), pts.end());
    return SimplePolygon(pts);
}

SimplePolygon comb_polygon(size_t teeth) {
    if (teeth < 1) throw BadInput("comb needs at least one tooth");
    double W = 3.0 * (double)teeth + 1.0;
    std::vector<Point> pts = {{0, 0}, {W, 0}, {W, 1}};
    for (size_t i = teeth; i-- > 0;) {
        double x1 = 3.0 * (double)i + 1.0, x2 = x1 + 1.0;
        pts.push_back({x2, 1});
        pts.push_back({x2, 3});
        pts.push_back({x1, 3});
        pts.push_back({x1, 1});
    }
    pts.push_back({0, 1});
    // nudge the collinear y=1 row so consecutive corners stay distinct turns
    return SimplePolygon(pts);
}

}  // namespace polyguard
