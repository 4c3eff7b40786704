#include "adomit/report_format.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace adomit {

std::string format_report_text(const DetectionReport& report) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "# omitted segments: %zu  method=%s  threshold=%.6g  axis=%s\n",
                  report.segments.size(), to_string(report.method).c_str(),
                  report.threshold_degrees, to_string(report.axis).c_str());
    out += buf;
    out += "# rank axis         x_start    y_start      x_end      y_end     length  angle_deg\n";
    int rank = 0;
    for (const OmittedSegment& s : report.segments) {
        ++rank;
        std::snprintf(buf, sizeof(buf), "%6d %-11s %10lld %10lld %10lld %10lld %10lld %10.4f\n",
                      rank, to_string(s.axis).c_str(),
                      static_cast<long long>(s.start.x), static_cast<long long>(s.start.y),
                      static_cast<long long>(s.end.x), static_cast<long long>(s.end.y),
                      static_cast<long long>(s.length), s.angle_degrees);
        out += buf;
    }
    return out;
}

std::string format_report_records(const DetectionReport& report) {
    std::string out;
    int rank = 0;
    for (const OmittedSegment& s : report.segments) {
        ++rank;
        nlohmann::ordered_json rec{
            {"rank", rank},
            {"axis", to_string(s.axis)},
            {"x_start", s.start.x},
            {"y_start", s.start.y},
            {"x_end", s.end.x},
            {"y_end", s.end.y},
            {"length", s.length},
            {"angle_degrees", s.angle_degrees},
            {"method", to_string(report.method)},
            {"threshold_degrees", report.threshold_degrees},
        };
        out += rec.dump();
        out += '\n';
    }
    return out;
}

}  // namespace adomit
