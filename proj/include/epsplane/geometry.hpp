#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace epsplane {

// ============================================================================
// Closed axis-aligned geometry on the permittivity plane
// ============================================================================

/// Closed axis-aligned rectangle. Boundary points are inside.
struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    [[nodiscard]] bool contains(double x, double y) const noexcept {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

/// True when the closed segment (x1,y1)-(x2,y2) meets the closed rectangle.
/// The segment's x-range is clipped to the rectangle; the y-values at the
/// clipped ends are then compared against the rectangle's y-range. Degenerate
/// (vertical or zero-length) segments fall out of the same arithmetic.
[[nodiscard]] inline bool segment_intersects_rect(double x1, double y1, double x2, double y2,
                                                  const Rect& r) noexcept {
    if (x1 > x2) {
        std::swap(x1, x2);
        std::swap(y1, y2);
    }
    if (x2 < r.x_min || x1 > r.x_max)
        return false;

    double ya = y1;
    double yb = y2;
    const double dx = x2 - x1;
    if (dx > 0.0) {
        const double slope = (y2 - y1) / dx;
        const double cx1 = std::max(x1, r.x_min);
        const double cx2 = std::min(x2, r.x_max);
        ya = y1 + slope * (cx1 - x1);
        yb = y1 + slope * (cx2 - x1);
    }
    const double y_lo = std::min(ya, yb);
    const double y_hi = std::max(ya, yb);
    return y_hi >= r.y_min && y_lo <= r.y_max;
}

/// True when the union of the closed intervals covers [lo, hi] completely.
/// A zero-width target [v, v] is covered iff some interval contains v.
[[nodiscard]] inline bool intervals_cover(std::vector<std::pair<double, double>> intervals,
                                          double lo, double hi) noexcept {
    std::sort(intervals.begin(), intervals.end());
    double reach = lo;
    bool touched = false;
    for (const auto& [a, b] : intervals) {
        if (b < lo || a > hi)
            continue;
        if (a > reach)
            return false;
        reach = std::max(reach, b);
        touched = true;
        if (reach >= hi)
            return true;
    }
    return touched && reach >= hi;
}

} // namespace epsplane
