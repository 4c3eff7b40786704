#pragma once

#include <string>
#include <vector>

#include "adomit/bitext_map.hpp"
#include "adomit/geometry.hpp"

namespace adomit {

/// Which half of the bitext the omission is in. An omission in the
/// translation shows up as a nearly horizontal map region (extent measured
/// along x); an omission in the original as a nearly vertical one (extent
/// measured along y, detected on the transposed map).
enum class Axis { translation, original };

enum class Method { basic, adomit };

std::string to_string(Axis axis);
std::string to_string(Method method);
Axis axis_from_string(const std::string& s);
Method method_from_string(const std::string& s);

/// A span of text flagged as having (nearly) no counterpart in the other
/// half. Endpoints are in the coordinates of the map that was searched;
/// length and angle are measured in detection orientation, i.e. after
/// transposition when axis == original.
struct OmittedSegment {
    MapPoint start;
    MapPoint end;
    Axis axis = Axis::translation;
    offset_t length = 0;     // extent along the axis of omission
    double angle_degrees = 0.0;
};

/// The translator-facing artifact: flagged segments sorted longest first
/// so accidental omissions float to the top.
struct DetectionReport {
    std::vector<OmittedSegment> segments;
    double threshold_degrees = 0.0;
    Method method = Method::adomit;
    Axis axis = Axis::translation;
};

/// Adjacent-point segments whose slope angle is strictly below
/// threshold_degrees, in x order. Detection orientation only (axis is
/// reported as translation); callers handle the original axis through
/// transpose(). Requires 0 < threshold < 90.
std::vector<OmittedSegment> minimal_omitted_segments(const BitextMap& map,
                                                     double threshold_degrees);

/// Reconstruct maximal omitted segments from minimal ones fragmented by
/// map noise. Greedy left-to-right scan: for each unconsumed segment with
/// left endpoint s, find the rightmost later segment whose right endpoint
/// still lies in the search triangle of s, and concatenate everything in
/// between. The scan past s stops at the first right endpoint higher than
/// the ray/baseline intersection; outputs are disjoint in x.
///
/// `minimal` must be sorted by start abscissa and the baseline must lie on
/// or below every endpoint (build_baseline over the endpoints does this).
/// Requires tan(threshold) < baseline.slope.
std::vector<OmittedSegment> reconstruct_maximal(const std::vector<OmittedSegment>& minimal,
                                                double threshold_degrees,
                                                const Baseline& baseline);

/// Full pipeline: orient the map for the requested axis, flag minimal
/// segments, optionally reconstruct maximal ones, filter by min_length,
/// and sort longest-first (ties by start.x, then start.y).
DetectionReport detect(const BitextMap& map, double threshold_degrees,
                       Method method, Axis axis, offset_t min_length = 0);

}  // namespace adomit
