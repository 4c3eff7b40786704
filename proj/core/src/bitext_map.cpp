#include "adomit/bitext_map.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <string>
#include <string_view>

#include "adomit/errors.hpp"

namespace adomit {

namespace {

std::string point_str(const MapPoint& p) {
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

void validate(const std::vector<MapPoint>& pts, offset_t width, offset_t height) {
    if (width <= 0 || height <= 0)
        throw ValidationError("bitext space dimensions must be positive");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const MapPoint& p = pts[i];
        if (p.x < 0 || p.y < 0 || p.x > width || p.y > height)
            throw ValidationError("point " + point_str(p) + " outside bitext space " +
                                  std::to_string(width) + "x" + std::to_string(height));
        if (i == 0) continue;
        const MapPoint& q = pts[i - 1];
        if (p.x == q.x)
            throw ValidationError("duplicate x offset: points " + point_str(q) +
                                  " and " + point_str(p) + " share an abscissa");
        if (p.y < q.y)
            throw ValidationError("y decreases from " + point_str(q) + " to " +
                                  point_str(p));
    }
}

}  // namespace

BitextMap BitextMap::create(std::vector<MapPoint> points, offset_t width, offset_t height) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    validate(points, width, height);
    return BitextMap(std::move(points), width, height, 0);
}

std::vector<MapSegment> BitextMap::segments() const {
    std::vector<MapSegment> out;
    if (points_.size() < 2) return out;
    out.reserve(points_.size() - 1);
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        out.push_back(MapSegment{points_[i], points_[i + 1]});
    return out;
}

BitextMap BitextMap::transpose() const {
    std::vector<MapPoint> flipped;
    flipped.reserve(points_.size());
    for (const MapPoint& p : points_) flipped.push_back(MapPoint{p.y, p.x});
    std::sort(flipped.begin(), flipped.end());

    // Horizontal runs in the source become x-ties here; keep the largest y.
    std::vector<MapPoint> kept;
    kept.reserve(flipped.size());
    std::size_t dropped = 0;
    for (const MapPoint& p : flipped) {
        if (!kept.empty() && kept.back().x == p.x) {
            kept.back() = p;  // sorted order makes this the larger y
            ++dropped;
        } else {
            kept.push_back(p);
        }
    }
    validate(kept, height_, width_);
    return BitextMap(std::move(kept), height_, width_, dropped);
}

double BitextMap::interpolate(double x) const {
    if (points_.size() < 2)
        throw ValidationError("interpolation needs a map of at least 2 points");
    if (x < 0.0 || x > static_cast<double>(width_))
        throw ValidationError("interpolation abscissa " + std::to_string(x) +
                              " outside [0, " + std::to_string(width_) + "]");

    // Bracketing pair; clamped to the first/last segment for extrapolation.
    std::size_t hi = std::upper_bound(points_.begin(), points_.end(), x,
                                      [](double v, const MapPoint& p) {
                                          return v < static_cast<double>(p.x);
                                      }) -
                     points_.begin();
    if (hi == 0) hi = 1;
    if (hi == points_.size()) hi = points_.size() - 1;
    const MapPoint& a = points_[hi - 1];
    const MapPoint& b = points_[hi];

    if (x == static_cast<double>(a.x)) return static_cast<double>(a.y);
    if (x == static_cast<double>(b.x)) return static_cast<double>(b.y);
    const double t = (x - static_cast<double>(a.x)) /
                     static_cast<double>(b.x - a.x);
    return static_cast<double>(a.y) + t * static_cast<double>(b.y - a.y);
}

namespace {

bool parse_offset(std::string_view field, offset_t& out) {
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

BitextMap parse_map(std::istream& in, offset_t width, offset_t height) {
    std::vector<MapPoint> points;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::string_view sv(line);
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
        while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t')) sv.remove_suffix(1);
        if (sv.empty() || sv.front() == '#') continue;

        std::vector<std::string_view> fields;
        std::size_t pos = 0;
        while (pos < sv.size()) {
            std::size_t end = sv.find_first_of(" \t", pos);
            if (end == std::string_view::npos) end = sv.size();
            if (end > pos) fields.push_back(sv.substr(pos, end - pos));
            pos = sv.find_first_not_of(" \t", end);
            if (pos == std::string_view::npos) break;
        }
        if (fields.size() != 2)
            throw ParseError("expected two tab-separated offsets, got " +
                                 std::to_string(fields.size()) + " field(s)",
                             line_no);
        MapPoint p;
        if (!parse_offset(fields[0], p.x) || !parse_offset(fields[1], p.y))
            throw ParseError("non-integer offset in \"" + std::string(sv) + "\"", line_no);
        if (p.x < 0 || p.y < 0)
            throw ParseError("negative offset in \"" + std::string(sv) + "\"", line_no);
        points.push_back(p);
    }
    return BitextMap::create(std::move(points), width, height);
}

}  // namespace adomit
