#pragma once

#include <string>

#include "adomit/detector.hpp"

namespace adomit {

/// Human-readable report: a header comment and one line per segment
/// (rank, axis, endpoints, length, slope angle). Byte-stable for
/// identical inputs.
std::string format_report_text(const DetectionReport& report);

/// Machine-readable report: one JSON object per line with fields
/// rank, axis, x_start, y_start, x_end, y_end, length, angle_degrees,
/// method, threshold_degrees.
std::string format_report_records(const DetectionReport& report);

}  // namespace adomit
