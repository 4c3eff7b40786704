#include "adomit/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "adomit/errors.hpp"

namespace adomit {

double degrees_from_radians(double rad) {
    return rad * (180.0 / std::numbers::pi);
}

double radians_from_degrees(double deg) {
    return deg * (std::numbers::pi / 180.0);
}

namespace {

std::string point_str(const MapPoint& p) {
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

double slope_angle(const MapPoint& a, const MapPoint& b) {
    if (a == b)
        throw GeometryError("degenerate segment: identical points " + point_str(a));
    if (b.x < a.x)
        throw GeometryError("segment endpoints out of order: " + point_str(a) +
                            " -> " + point_str(b));
    const offset_t dx = b.x - a.x;
    const offset_t dy = b.y - a.y;
    if (dx == 0) return 90.0;
    if (dy == 0) return 0.0;
    return degrees_from_radians(
        std::atan2(static_cast<double>(dy), static_cast<double>(dx)));
}

bool angle_below(const MapPoint& a, const MapPoint& b, double threshold_degrees) {
    if (a == b)
        throw GeometryError("degenerate segment: identical points " + point_str(a));
    const offset_t dx = b.x - a.x;
    const offset_t dy = b.y - a.y;
    if (dx <= 0) return false;  // vertical (90 deg) never beats a threshold < 90
    return static_cast<double>(dy) <
           static_cast<double>(dx) * std::tan(radians_from_degrees(threshold_degrees));
}

Baseline build_baseline(std::span<const MapPoint> points,
                        offset_t space_width, offset_t space_height) {
    if (points.empty())
        throw GeometryError("cannot build a baseline from an empty point set");
    if (space_width <= 0 || space_height <= 0)
        throw GeometryError("bitext space dimensions must be positive");

    Baseline line;
    line.slope = static_cast<double>(space_height) / static_cast<double>(space_width);
    double intercept = std::numeric_limits<double>::infinity();
    for (const MapPoint& p : points) {
        const double c = static_cast<double>(p.y) - line.slope * static_cast<double>(p.x);
        if (c < intercept) intercept = c;
    }
    line.intercept = intercept;
    return line;
}

RealPoint ray_baseline_intersection(const MapPoint& s, double t_degrees,
                                    const Baseline& baseline) {
    const double tan_t = std::tan(radians_from_degrees(t_degrees));
    if (!(tan_t < baseline.slope))
        throw GeometryError(
            "ray at " + std::to_string(t_degrees) +
            " deg never meets the baseline: tan(t) >= baseline slope");
    if (static_cast<double>(s.y) < baseline.y_at(static_cast<double>(s.x)))
        throw GeometryError("ray origin " + point_str(s) + " lies below the baseline");

    // Solve s.y + (x - s.x)*tan(t) = slope*x + intercept for x >= s.x.
    const double x = (static_cast<double>(s.y) - baseline.intercept -
                      static_cast<double>(s.x) * tan_t) /
                     (baseline.slope - tan_t);
    return RealPoint{x, baseline.y_at(x)};
}

bool in_search_triangle(const MapPoint& e, const MapPoint& s,
                        double t_degrees, const Baseline& baseline) {
    if (e.x <= s.x) return false;
    if (!baseline.on_or_above(e)) return false;
    return angle_below(s, e, t_degrees);
}

}  // namespace adomit
