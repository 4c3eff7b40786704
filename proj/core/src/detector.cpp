#include "adomit/detector.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "adomit/errors.hpp"

namespace adomit {

std::string to_string(Axis axis) {
    return axis == Axis::translation ? "translation" : "original";
}

std::string to_string(Method method) {
    return method == Method::basic ? "basic" : "adomit";
}

Axis axis_from_string(const std::string& s) {
    if (s == "translation") return Axis::translation;
    if (s == "original") return Axis::original;
    throw ConfigError("unknown axis \"" + s + "\" (expected translation|original)");
}

Method method_from_string(const std::string& s) {
    if (s == "basic") return Method::basic;
    if (s == "adomit") return Method::adomit;
    throw ConfigError("unknown method \"" + s + "\" (expected basic|adomit)");
}

namespace {

void check_threshold(double t) {
    if (!(t > 0.0 && t < 90.0))
        throw ConfigError("slope angle threshold must lie in (0, 90) degrees, got " +
                          std::to_string(t));
}

OmittedSegment make_segment(const MapPoint& start, const MapPoint& end) {
    OmittedSegment seg;
    seg.start = start;
    seg.end = end;
    seg.axis = Axis::translation;
    seg.length = end.x - start.x;
    seg.angle_degrees = slope_angle(start, end);
    return seg;
}

}  // namespace

std::vector<OmittedSegment> minimal_omitted_segments(const BitextMap& map,
                                                     double threshold_degrees) {
    check_threshold(threshold_degrees);
    std::vector<OmittedSegment> out;
    const auto& pts = map.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (angle_below(pts[i], pts[i + 1], threshold_degrees))
            out.push_back(make_segment(pts[i], pts[i + 1]));
    }
    return out;
}

std::vector<OmittedSegment> reconstruct_maximal(const std::vector<OmittedSegment>& minimal,
                                                double threshold_degrees,
                                                const Baseline& baseline) {
    check_threshold(threshold_degrees);
    const double tan_t = std::tan(radians_from_degrees(threshold_degrees));
    if (!(tan_t < baseline.slope))
        throw ConfigError(
            "threshold angle reaches the bitext diagonal (tan(t) >= baseline slope); "
            "lower the threshold");

    for (std::size_t i = 0; i + 1 < minimal.size(); ++i)
        if (minimal[i + 1].start.x < minimal[i].start.x)
            throw ValidationError("minimal omitted segments must be sorted by start abscissa");

    std::vector<OmittedSegment> out;
    std::size_t i = 0;
    while (i < minimal.size()) {
        const MapPoint s = minimal[i].start;
        const RealPoint apex = ray_baseline_intersection(s, threshold_degrees, baseline);

        std::optional<std::size_t> last;
        for (std::size_t k = i; k < minimal.size(); ++k) {
            const MapPoint& e = minimal[k].end;
            // Past the triangle's apex no endpoint can qualify, and map
            // endpoints only rise from here.
            if (static_cast<double>(e.y) > apex.y) break;
            if (in_search_triangle(e, s, threshold_degrees, baseline)) last = k;
        }

        if (!last) {
            out.push_back(minimal[i]);
            ++i;
        } else {
            out.push_back(make_segment(s, minimal[*last].end));
            i = *last + 1;
        }
    }
    return out;
}

DetectionReport detect(const BitextMap& map, double threshold_degrees,
                       Method method, Axis axis, offset_t min_length) {
    check_threshold(threshold_degrees);
    if (min_length < 0) throw ConfigError("min_length must be non-negative");

    const BitextMap* oriented = &map;
    std::optional<BitextMap> transposed;
    if (axis == Axis::original) {
        transposed = map.transpose();
        oriented = &*transposed;
    }

    std::vector<OmittedSegment> segs = minimal_omitted_segments(*oriented, threshold_degrees);
    if (method == Method::adomit && !segs.empty()) {
        std::vector<MapPoint> endpoints;
        endpoints.reserve(segs.size() * 2);
        for (const OmittedSegment& seg : segs) {
            endpoints.push_back(seg.start);
            endpoints.push_back(seg.end);
        }
        const Baseline baseline =
            build_baseline(endpoints, oriented->width(), oriented->height());
        segs = reconstruct_maximal(segs, threshold_degrees, baseline);
    }

    if (axis == Axis::original) {
        for (OmittedSegment& seg : segs) {
            seg.axis = Axis::original;
            std::swap(seg.start.x, seg.start.y);
            std::swap(seg.end.x, seg.end.y);
        }
    }

    if (min_length > 0)
        std::erase_if(segs, [min_length](const OmittedSegment& s) {
            return s.length < min_length;
        });

    std::sort(segs.begin(), segs.end(), [](const OmittedSegment& a, const OmittedSegment& b) {
        if (a.length != b.length) return a.length > b.length;
        if (a.start.x != b.start.x) return a.start.x < b.start.x;
        return a.start.y < b.start.y;
    });

    DetectionReport report;
    report.segments = std::move(segs);
    report.threshold_degrees = threshold_degrees;
    report.method = method;
    report.axis = axis;
    return report;
}

}  // namespace adomit
