#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "adomit/geometry.hpp"

namespace adomit {

/// Segment between two adjacent map points.
struct MapSegment {
    MapPoint start;
    MapPoint end;
};

/// A validated bitext map: correspondence points over a bitext space of
/// known dimensions, strictly increasing in x and non-decreasing in y.
/// Horizontal runs (repeated y over several x) are legal; they are exactly
/// what an omission in the translation looks like. Immutable once built.
class BitextMap {
  public:
    /// Sorts by (x, y), drops exact duplicates, then validates:
    /// strictly increasing x, non-decreasing y, all points within
    /// [0,width] x [0,height]. Throws ValidationError on violations.
    static BitextMap create(std::vector<MapPoint> points,
                            offset_t width, offset_t height);

    const std::vector<MapPoint>& points() const { return points_; }
    offset_t width() const { return width_; }
    offset_t height() const { return height_; }
    std::size_t size() const { return points_.size(); }

    /// Points dropped while resolving x-ties during transposition.
    std::size_t dropped_points() const { return dropped_; }

    /// Adjacent-point segments in x order; empty for maps of < 2 points.
    std::vector<MapSegment> segments() const;

    /// Swap the axes. Horizontal runs in this map become x-ties in the
    /// transposed point set; ties are resolved by keeping the point with
    /// the largest y (the rightmost original x), and the number of points
    /// dropped that way is recorded on the result.
    BitextMap transpose() const;

    /// Piecewise-linear interpolation at x in [0, width]. Outside the
    /// point span the nearest segment is extended linearly. Requires at
    /// least 2 points.
    double interpolate(double x) const;

  private:
    BitextMap(std::vector<MapPoint> points, offset_t width, offset_t height,
              std::size_t dropped)
        : points_(std::move(points)), width_(width), height_(height), dropped_(dropped) {}

    std::vector<MapPoint> points_;
    offset_t width_ = 0;
    offset_t height_ = 0;
    std::size_t dropped_ = 0;
};

/// Parse "X<TAB>Y" lines (whitespace-separated decimal offsets; blank lines
/// and '#' comments skipped; CRLF tolerated) into a validated map. Input
/// order is irrelevant: points are sorted before validation.
BitextMap parse_map(std::istream& in, offset_t width, offset_t height);

}  // namespace adomit
