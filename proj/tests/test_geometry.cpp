#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "adomit/errors.hpp"
#include "adomit/geometry.hpp"
#include "oracles.hpp"

using namespace adomit;

TEST_CASE("slope_angle: axis-aligned segments are exact") {
    CHECK(slope_angle({0, 0}, {100, 0}) == 0.0);
    CHECK(slope_angle({5, 0}, {5, 9}) == 90.0);
}

TEST_CASE("slope_angle: main diagonal of a square space") {
    CHECK(slope_angle({0, 0}, {100, 100}) == doctest::Approx(45.0).epsilon(1e-12));
}

TEST_CASE("slope_angle: a known hand-aligned flagged segment is shallow") {
    const double a = slope_angle({26869, 29175}, {26917, 29176});
    CHECK(a == doctest::Approx(std::atan2(1.0, 48.0) * 180.0 / std::numbers::pi));
    CHECK(a < 15.0);
    CHECK(a > 1.0);
}

TEST_CASE("slope_angle: degenerate and disordered input") {
    CHECK_THROWS_AS(slope_angle({7, 7}, {7, 7}), GeometryError);
    CHECK_THROWS_AS(slope_angle({10, 0}, {5, 5}), GeometryError);
    CHECK_THROWS_AS(angle_below({7, 7}, {7, 7}, 15.0), GeometryError);
}

TEST_CASE("slope_angle: swapping axes complements to 90 degrees") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<offset_t> d(1, 100000);
    for (int i = 0; i < 500; ++i) {
        const offset_t x = d(rng), y = d(rng), dx = d(rng), dy = d(rng);
        const double a = slope_angle({x, y}, {x + dx, y + dy});
        const double b = slope_angle({y, x}, {y + dy, x + dx});
        CHECK(a + b == doctest::Approx(90.0).epsilon(1e-12));
    }
}

TEST_CASE("slope_angle: invariant under translation of both endpoints") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<offset_t> d(0, 100000);
    std::uniform_int_distribution<offset_t> shift(0, 50000);
    for (int i = 0; i < 500; ++i) {
        const MapPoint a{d(rng), d(rng)};
        const MapPoint b{a.x + d(rng) + 1, a.y + d(rng)};
        const offset_t sx = shift(rng), sy = shift(rng);
        CHECK(slope_angle(a, b) ==
              slope_angle({a.x + sx, a.y + sy}, {b.x + sx, b.y + sy}));
    }
}

TEST_CASE("angle_below agrees with slope_angle away from the boundary") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<offset_t> d(0, 10000);
    std::uniform_real_distribution<double> t_dist(1.0, 89.0);
    for (int i = 0; i < 2000; ++i) {
        const MapPoint a{d(rng), d(rng)};
        const MapPoint b{a.x + d(rng) + 1, a.y + d(rng)};
        const double t = t_dist(rng);
        const double angle = slope_angle(a, b);
        if (std::abs(angle - t) < 1e-6) continue;
        CHECK(angle_below(a, b, t) == (angle < t));
    }
}

TEST_CASE("build_baseline: points on the diagonal") {
    const std::vector<MapPoint> pts{{0, 0}, {10, 10}};
    const Baseline line = build_baseline(pts, 10, 10);
    CHECK(line.slope == 1.0);
    CHECK(line.intercept == 0.0);
}

TEST_CASE("build_baseline: intercept is the smallest residual") {
    const std::vector<MapPoint> pts{{0, 5}, {10, 12}};
    const Baseline line = build_baseline(pts, 10, 10);
    CHECK(line.slope == 1.0);
    CHECK(line.intercept == 2.0);
}

TEST_CASE("build_baseline: every point on or above, at least one on the line") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<offset_t> d(0, 100000);
    std::uniform_int_distribution<offset_t> dim(1, 200000);
    for (int i = 0; i < 200; ++i) {
        std::vector<MapPoint> pts;
        const int n = 1 + static_cast<int>(d(rng) % 40);
        for (int k = 0; k < n; ++k) pts.push_back({d(rng), d(rng)});
        const Baseline line = build_baseline(pts, dim(rng), dim(rng));
        double min_gap = std::numeric_limits<double>::infinity();
        for (const MapPoint& p : pts) {
            const double gap = static_cast<double>(p.y) - line.y_at(static_cast<double>(p.x));
            CHECK(gap >= -1e-9);
            min_gap = std::min(min_gap, gap);
        }
        CHECK(min_gap <= 1e-9);  // touches at least one point
    }
}

TEST_CASE("build_baseline: empty input is an error") {
    CHECK_THROWS_AS(build_baseline({}, 10, 10), GeometryError);
    const std::vector<MapPoint> pts{{0, 0}};
    CHECK_THROWS_AS(build_baseline(pts, 0, 10), GeometryError);
}

TEST_CASE("ray_baseline_intersection: horizontal ray meets y = x - 10") {
    const Baseline line{1.0, -10.0};
    const RealPoint i = ray_baseline_intersection({0, 0}, 0.0, line);
    CHECK(i.x == doctest::Approx(10.0));
    CHECK(i.y == doctest::Approx(0.0));
}

TEST_CASE("ray_baseline_intersection: abscissa grows without bound near parallel") {
    const Baseline line{1.0, -10.0};
    double prev = 0.0;
    for (double eps : {5.0, 1.0, 0.1, 0.01, 0.001}) {
        const RealPoint i = ray_baseline_intersection({0, 0}, 45.0 - eps, line);
        CHECK(i.x > prev);
        prev = i.x;
    }
    CHECK(prev > 1e5);
}

TEST_CASE("ray_baseline_intersection: solution satisfies both line equations") {
    const Baseline line{1.103, 0.0};
    const MapPoint s{5, 7};
    const double t = 37.0;
    const RealPoint i = ray_baseline_intersection(s, t, line);
    const double tan_t = std::tan(radians_from_degrees(t));
    CHECK(i.y == doctest::Approx(7.0 + (i.x - 5.0) * tan_t).epsilon(1e-12));
    CHECK(i.y == doctest::Approx(1.103 * i.x).epsilon(1e-12));
    CHECK(i.x >= 5.0);
}

TEST_CASE("ray_baseline_intersection: rejects rays at or above the baseline slope") {
    const Baseline line{1.0, -10.0};
    CHECK_THROWS_AS(ray_baseline_intersection({0, 0}, 50.0, line), GeometryError);
    CHECK_THROWS_AS(ray_baseline_intersection({0, 0}, 45.0, line), GeometryError);
}

TEST_CASE("ray_baseline_intersection: rejects origins below the baseline") {
    const Baseline line{1.0, 100.0};
    CHECK_THROWS_AS(ray_baseline_intersection({0, 0}, 10.0, line), GeometryError);
}

TEST_CASE("in_search_triangle: boundary and trivial exclusions") {
    const Baseline line{2.0, -1000.0};
    const MapPoint s{0, 0};
    // On the ray itself: strict comparison keeps it out.
    CHECK_FALSE(in_search_triangle({10, 10}, s, 45.0, line));
    // Not to the right of s.
    CHECK_FALSE(in_search_triangle(s, s, 45.0, line));
    CHECK_FALSE(in_search_triangle({0, 5}, s, 45.0, line));
    // Below the baseline.
    CHECK_FALSE(in_search_triangle({600, 1}, s, 45.0, line));
    // Comfortably inside.
    CHECK(in_search_triangle({100, 10}, s, 45.0, line));
}

TEST_CASE("in_search_triangle matches the classical point-in-triangle test") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coord(0.0, 1000.0);
    std::uniform_real_distribution<double> spread(-50.0, 800.0);
    std::uniform_real_distribution<double> scale(1.1, 2.5);
    std::uniform_real_distribution<double> lower(0.0, 200.0);
    std::uniform_real_distribution<double> t_frac(0.3, 0.9);

    int compared = 0;
    while (compared < 1000) {
        const MapPoint s{static_cast<offset_t>(coord(rng)), static_cast<offset_t>(coord(rng))};
        Baseline line;
        const double t = [&] {
            double slope = scale(rng);
            line.slope = slope;
            line.intercept = static_cast<double>(s.y) - slope * static_cast<double>(s.x) -
                             lower(rng);
            return degrees_from_radians(std::atan(slope)) * t_frac(rng);
        }();
        const MapPoint e{s.x + static_cast<offset_t>(spread(rng)),
                         s.y + static_cast<offset_t>(spread(rng))};
        if (e == s) continue;
        const auto expected = testing::oracle_in_triangle(
            {static_cast<double>(e.x), static_cast<double>(e.y)},
            {static_cast<double>(s.x), static_cast<double>(s.y)}, t, line);
        if (!expected) continue;  // edge-proximal sample, conventions differ
        CHECK(in_search_triangle(e, s, t, line) == *expected);
        ++compared;
    }
}

TEST_CASE("in_search_triangle membership implies a below-threshold angle") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<offset_t> d(0, 2000);
    std::uniform_real_distribution<double> t_dist(5.0, 40.0);
    int hits = 0;
    for (int i = 0; i < 5000; ++i) {
        const MapPoint s{d(rng), d(rng)};
        const MapPoint e{d(rng), d(rng)};
        const double t = t_dist(rng);
        Baseline line{std::tan(radians_from_degrees(t)) * 1.5,
                      static_cast<double>(std::min(s.y, e.y)) - 500.0};
        if (e == s) continue;
        if (in_search_triangle(e, s, t, line)) {
            CHECK(slope_angle(s, e) < t + 1e-9);
            ++hits;
        }
    }
    CHECK(hits > 100);  // the sample actually exercises the membership path
}
