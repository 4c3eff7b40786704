#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "adomit/bitext_map.hpp"
#include "adomit/detector.hpp"
#include "adomit/errors.hpp"
#include "adomit/report_format.hpp"
#include "oracles.hpp"

using namespace adomit;

namespace {

// Flagged output of a hand-aligned Hansard half at a 15-degree threshold;
// ten shallow segments separated by ordinary near-diagonal stretches.
const std::vector<std::pair<MapPoint, MapPoint>> kHandAlignedFlagged = {
    {{26869, 29175}, {26917, 29176}},
    {{42075, 45647}, {42179, 45648}},
    {{44172, 47794}, {44236, 47795}},
    {{211071, 230935}, {211379, 231007}},
    {{211725, 231714}, {211795, 231715}},
    {{319179, 348672}, {319207, 348673}},
    {{436118, 479850}, {436163, 479857}},
    {{453064, 499175}, {453116, 499176}},
    {{504626, 556847}, {504663, 556848}},
    {{658098, 726197}, {658225, 726198}},
};

BitextMap hand_aligned_fixture() {
    std::vector<MapPoint> pts;
    for (const auto& [a, b] : kHandAlignedFlagged) {
        pts.push_back(a);
        pts.push_back(b);
    }
    return BitextMap::create(std::move(pts), 659000, 727000);
}

std::set<std::pair<offset_t, offset_t>> segment_keys(const std::vector<OmittedSegment>& segs) {
    std::set<std::pair<offset_t, offset_t>> keys;
    for (const OmittedSegment& s : segs) keys.insert({s.start.x, s.end.x});
    return keys;
}

}  // namespace

TEST_CASE("minimal_omitted_segments: only the shallow segment is flagged") {
    const BitextMap m = BitextMap::create({{0, 0}, {100, 1}, {200, 101}}, 200, 101);
    const auto segs = minimal_omitted_segments(m, 15.0);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].start == MapPoint{0, 0});
    CHECK(segs[0].end == MapPoint{100, 1});
    CHECK(segs[0].length == 100);
    CHECK(segs[0].axis == Axis::translation);
}

TEST_CASE("minimal_omitted_segments: nothing below threshold, nothing flagged") {
    const BitextMap m = BitextMap::create({{0, 0}, {100, 110}, {200, 230}}, 200, 230);
    CHECK(minimal_omitted_segments(m, 15.0).empty());
}

TEST_CASE("minimal_omitted_segments: hand-aligned fixture reproduces the flagged list") {
    const BitextMap m = hand_aligned_fixture();
    const auto at15 = minimal_omitted_segments(m, 15.0);
    REQUIRE(at15.size() == kHandAlignedFlagged.size());
    for (std::size_t i = 0; i < at15.size(); ++i) {
        CHECK(at15[i].start == kHandAlignedFlagged[i].first);
        CHECK(at15[i].end == kHandAlignedFlagged[i].second);
        CHECK(at15[i].angle_degrees < 15.0);
    }
    // Tightening the threshold keeps nested subsets of the same list.
    CHECK(minimal_omitted_segments(m, 10.0).size() == 9);
    CHECK(minimal_omitted_segments(m, 5.0).size() == 8);
}

TEST_CASE("minimal_omitted_segments: threshold must be inside (0, 90)") {
    const BitextMap m = BitextMap::create({{0, 0}, {10, 10}}, 10, 10);
    CHECK_THROWS_AS(minimal_omitted_segments(m, 0.0), ConfigError);
    CHECK_THROWS_AS(minimal_omitted_segments(m, 90.0), ConfigError);
}

TEST_CASE("reconstruct_maximal: a single segment is its own maximal segment") {
    const BitextMap m = BitextMap::create({{0, 0}, {100, 1}, {200, 101}}, 200, 101);
    const auto minimal = minimal_omitted_segments(m, 15.0);
    const Baseline line{101.0 / 200.0, -49.0};
    const auto maximal = reconstruct_maximal(minimal, 15.0, line);
    REQUIRE(maximal.size() == 1);
    CHECK(maximal[0].start == minimal[0].start);
    CHECK(maximal[0].end == minimal[0].end);
}

TEST_CASE("reconstruct_maximal: spans an interfering gap when the whole run stays shallow") {
    // Two shallow segments around a steep 45-degree insert; the full span
    // (0,0)->(200,12) is at about 3.4 degrees, well under the threshold.
    std::vector<OmittedSegment> minimal;
    OmittedSegment a;
    a.start = {0, 0};
    a.end = {100, 1};
    a.axis = Axis::translation;
    a.length = 100;
    a.angle_degrees = slope_angle(a.start, a.end);
    OmittedSegment b;
    b.start = {110, 11};
    b.end = {200, 12};
    b.axis = Axis::translation;
    b.length = 90;
    b.angle_degrees = slope_angle(b.start, b.end);
    minimal = {a, b};

    CHECK(slope_angle({100, 1}, {110, 11}) == doctest::Approx(45.0));
    CHECK(slope_angle({0, 0}, {200, 12}) < 15.0);

    const Baseline line{1.0, -200.0};
    CHECK(line.on_or_above({200, 12}));
    const auto maximal = reconstruct_maximal(minimal, 15.0, line);
    REQUIRE(maximal.size() == 1);
    CHECK(maximal[0].start == MapPoint{0, 0});
    CHECK(maximal[0].end == MapPoint{200, 12});
    CHECK(maximal[0].length == 200);
}

TEST_CASE("reconstruct_maximal: matches the all-pairs reference on random instances") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto inst = testing::random_reconstruct_instance(rng);
        const auto fast = reconstruct_maximal(inst.minimal, inst.t_degrees, inst.baseline);
        const auto brute = testing::brute_force_maximal(inst.minimal, inst.t_degrees);
        REQUIRE(fast.size() == brute.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i].start == brute[i].start);
            CHECK(fast[i].end == brute[i].end);
        }
    }
}

TEST_CASE("reconstruct_maximal: outputs are disjoint and cover every input") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = testing::random_reconstruct_instance(rng);
        const auto maximal = reconstruct_maximal(inst.minimal, inst.t_degrees, inst.baseline);
        REQUIRE(!maximal.empty());
        for (std::size_t i = 0; i + 1 < maximal.size(); ++i)
            CHECK(maximal[i].end.x <= maximal[i + 1].start.x);
        // Each minimal segment lies inside exactly one output segment.
        for (const OmittedSegment& m : inst.minimal) {
            int containers = 0;
            for (const OmittedSegment& s : maximal)
                if (s.start.x <= m.start.x && m.end.x <= s.end.x) ++containers;
            CHECK(containers == 1);
        }
        // And every output stays below the threshold.
        for (const OmittedSegment& s : maximal)
            CHECK(slope_angle(s.start, s.end) < inst.t_degrees + 1e-9);
    }
}

TEST_CASE("reconstruct_maximal: threshold at the diagonal is a configuration error") {
    std::vector<OmittedSegment> minimal;
    OmittedSegment a;
    a.start = {0, 0};
    a.end = {100, 1};
    a.axis = Axis::translation;
    a.length = 100;
    minimal.push_back(a);
    const Baseline shallow{0.2, -10.0};
    CHECK_THROWS_AS(reconstruct_maximal(minimal, 45.0, shallow), ConfigError);
}

TEST_CASE("reconstruct_maximal: input must be sorted by start abscissa") {
    OmittedSegment a;
    a.start = {100, 10};
    a.end = {200, 11};
    a.axis = Axis::translation;
    OmittedSegment b;
    b.start = {0, 0};
    b.end = {50, 1};
    b.axis = Axis::translation;
    CHECK_THROWS_AS(reconstruct_maximal({a, b}, 15.0, Baseline{1.0, -500.0}),
                    ValidationError);
}

TEST_CASE("detect: a single injected horizontal jump is the whole report") {
    const BitextMap m =
        BitextMap::create({{0, 0}, {100, 110}, {653, 111}, {753, 221}, {853, 331}}, 853, 331);
    for (Method method : {Method::basic, Method::adomit}) {
        const DetectionReport report = detect(m, 15.0, method, Axis::translation);
        REQUIRE(report.segments.size() == 1);
        CHECK(report.segments[0].length == 553);
        CHECK(report.segments[0].start == MapPoint{100, 110});
        CHECK(report.segments[0].end == MapPoint{653, 111});
    }
    // No vertical jump anywhere: the original axis is clean.
    for (Method method : {Method::basic, Method::adomit}) {
        const DetectionReport report = detect(m, 15.0, method, Axis::original);
        CHECK(report.segments.empty());
    }
}

TEST_CASE("detect: fragmented omission, basic sees pieces, adomit sees the whole") {
    const BitextMap m = BitextMap::create({{0, 0}, {100, 1}, {110, 11}, {200, 12}}, 200, 212);
    const DetectionReport basic = detect(m, 15.0, Method::basic, Axis::translation);
    REQUIRE(basic.segments.size() == 2);
    CHECK(basic.segments[0].length == 100);  // longest first
    CHECK(basic.segments[1].length == 90);

    const DetectionReport adomit = detect(m, 15.0, Method::adomit, Axis::translation);
    REQUIRE(adomit.segments.size() == 1);
    CHECK(adomit.segments[0].length == 200);
    CHECK(adomit.segments[0].start == MapPoint{0, 0});
    CHECK(adomit.segments[0].end == MapPoint{200, 12});

    CHECK(adomit.segments[0].length >= basic.segments[0].length);
}

TEST_CASE("detect: vertical omissions are reported in original coordinates") {
    // Transposed view of the fragmented fixture: a near-vertical region.
    const BitextMap m = BitextMap::create({{0, 0}, {1, 100}, {11, 110}, {12, 200}}, 212, 200);
    const DetectionReport report = detect(m, 15.0, Method::adomit, Axis::original);
    REQUIRE(report.segments.size() == 1);
    CHECK(report.segments[0].axis == Axis::original);
    CHECK(report.segments[0].start == MapPoint{0, 0});
    CHECK(report.segments[0].end == MapPoint{12, 200});
    CHECK(report.segments[0].length == 200);  // measured along y
}

TEST_CASE("detect: min_length filters short segments") {
    const BitextMap m = BitextMap::create({{0, 0}, {100, 1}, {110, 11}, {200, 12}}, 200, 212);
    const DetectionReport filtered = detect(m, 15.0, Method::basic, Axis::translation, 95);
    REQUIRE(filtered.segments.size() == 1);
    CHECK(filtered.segments[0].length == 100);
}

TEST_CASE("detect: equal lengths break ties by start abscissa") {
    const BitextMap m =
        BitextMap::create({{0, 0}, {100, 1}, {200, 220}, {300, 221}, {400, 440}}, 400, 440);
    const DetectionReport report = detect(m, 15.0, Method::basic, Axis::translation);
    REQUIRE(report.segments.size() == 2);
    CHECK(report.segments[0].start.x == 0);
    CHECK(report.segments[1].start.x == 200);
}

TEST_CASE("detect: flagged sets nest as the threshold grows") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const BitextMap m = testing::random_monotone_map(rng);
        std::set<std::pair<offset_t, offset_t>> prev;
        for (double t : {5.0, 10.0, 15.0, 20.0, 25.0}) {
            const auto keys = segment_keys(minimal_omitted_segments(m, t));
            CHECK(std::includes(keys.begin(), keys.end(), prev.begin(), prev.end()));
            prev = keys;
        }
    }
}

TEST_CASE("detect: every reported segment is below threshold in detection orientation") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 50; ++i) {
        const BitextMap m = testing::random_monotone_map(rng);
        for (Method method : {Method::basic, Method::adomit}) {
            const DetectionReport r = detect(m, 25.0, method, Axis::translation);
            for (const OmittedSegment& s : r.segments) {
                CHECK(slope_angle(s.start, s.end) < 25.0 + 1e-9);
                CHECK(s.length > 0);
            }
            const DetectionReport v = detect(m, 25.0, method, Axis::original);
            for (const OmittedSegment& s : v.segments) {
                CHECK(slope_angle({s.start.y, s.start.x}, {s.end.y, s.end.x}) < 25.0 + 1e-9);
                CHECK(s.length > 0);
            }
        }
    }
}

TEST_CASE("report formats are deterministic and carry the contract fields") {
    const BitextMap m = BitextMap::create({{0, 0}, {100, 1}, {110, 11}, {200, 12}}, 200, 212);
    const DetectionReport report = detect(m, 15.0, Method::adomit, Axis::translation);

    CHECK(format_report_text(report) == format_report_text(report));
    const std::string records = format_report_records(report);
    CHECK(records == format_report_records(report));

    std::istringstream lines(records);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        for (const char* key : {"rank", "axis", "x_start", "y_start", "x_end", "y_end",
                                "length", "angle_degrees", "method", "threshold_degrees"})
            CHECK(j.contains(key));
        CHECK(j.at("method") == "adomit");
        ++n;
    }
    CHECK(n == 1);
}
