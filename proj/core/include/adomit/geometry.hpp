#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace adomit {

/// Character offset into one half of a bitext.
using offset_t = std::int64_t;

/// One known correspondence: character x of the original text lines up
/// with character y of the translation.
struct MapPoint {
    offset_t x = 0;
    offset_t y = 0;

    friend constexpr auto operator<=>(const MapPoint&, const MapPoint&) = default;
};

/// Real-valued point for geometric intermediates (intersections etc.).
struct RealPoint {
    double x = 0.0;
    double y = 0.0;
};

/// A line of diagonal slope placed below a set of points. Used to bound
/// the search for reconstructable omitted segments from below.
struct Baseline {
    double slope = 1.0;      // height/width ratio of the bitext space, > 0
    double intercept = 0.0;  // chosen so every relevant point satisfies y >= slope*x + intercept

    double y_at(double x) const { return slope * x + intercept; }
    bool on_or_above(const MapPoint& p) const {
        return static_cast<double>(p.y) >= y_at(static_cast<double>(p.x));
    }
};

double degrees_from_radians(double rad);
double radians_from_degrees(double deg);

/// Slope angle of the segment a -> b in degrees. Exact 0 for horizontal
/// segments and exact 90 for vertical ones; in [0, 90] whenever b.y >= a.y.
/// Requires b.x >= a.x and a != b.
double slope_angle(const MapPoint& a, const MapPoint& b);

/// True iff the slope angle of a -> b is strictly below threshold_degrees.
/// Compared in tangent space so detection, reconstruction and the triangle
/// test all share one boundary convention.
bool angle_below(const MapPoint& a, const MapPoint& b, double threshold_degrees);

/// Diagonal-slope line lying on or below every given point, touching at
/// least one of them. slope = space_height / space_width.
Baseline build_baseline(std::span<const MapPoint> points,
                        offset_t space_width, offset_t space_height);

/// Intersection of the ray leaving s at slope angle t_degrees with the
/// baseline, to the right of s. Requires tan(t) < baseline.slope and s on
/// or above the baseline.
RealPoint ray_baseline_intersection(const MapPoint& s, double t_degrees,
                                    const Baseline& baseline);

/// Membership test for the search triangle spanned by s, the ray/baseline
/// intersection and the baseline point below s: true iff e lies strictly
/// right of s, on or above the baseline, and strictly below the ray.
bool in_search_triangle(const MapPoint& e, const MapPoint& s,
                        double t_degrees, const Baseline& baseline);

}  // namespace adomit
