#include "adomit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>
#include <utility>

#include "adomit/errors.hpp"

namespace adomit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

seed_t mix_seed(seed_t a, seed_t b) {
    return splitmix64(a ^ splitmix64(b + 0x9E3779B97F4A7C15ull));
}

BitextMap generate_gold_map(offset_t width, double slope_ratio,
                            offset_t mean_spacing, double jitter, seed_t seed) {
    if (width <= 0)
        throw ConfigError("gold map width must be positive");
    if (mean_spacing <= 0)
        throw ConfigError("mean point spacing must be positive");
    if (!(slope_ratio > 0.0))
        throw ConfigError("slope ratio must be positive");
    if (jitter < 0.0)
        throw ConfigError("jitter must be non-negative");

    const offset_t height = std::llround(slope_ratio * static_cast<double>(width));
    if (height <= 0)
        throw ConfigError("slope ratio too small: bitext space has zero height");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<offset_t> step(1, 2 * mean_spacing - 1);
    std::uniform_real_distribution<double> wobble(-jitter, jitter);

    std::vector<MapPoint> points;
    points.push_back({0, 0});
    offset_t prev_y = 0;
    for (offset_t x = step(rng); x < width; x += step(rng)) {
        double y_ideal = slope_ratio * static_cast<double>(x);
        if (jitter > 0.0) y_ideal += wobble(rng);
        offset_t y = std::llround(y_ideal);
        y = std::clamp(y, prev_y, height);
        points.push_back({x, y});
        prev_y = y;
    }
    points.push_back({width, height});
    return BitextMap::create(std::move(points), width, height);
}

InjectResult inject_omissions_at(const BitextMap& gold,
                                 const std::vector<offset_t>& y_starts,
                                 offset_t length, offset_t min_gap) {
    if (gold.size() < 2)
        throw ValidationError("gold map needs at least 2 points");
    if (!y_starts.empty() && length <= 0)
        throw ConfigError("omission length must be positive");
    if (min_gap < 0)
        throw ConfigError("min_gap must be non-negative");

    std::vector<offset_t> starts = y_starts;
    std::sort(starts.begin(), starts.end());
    const auto n = static_cast<offset_t>(starts.size());
    const offset_t height = gold.height();
    for (std::size_t i = 0; i < starts.size(); ++i) {
        if (starts[i] < 0 || starts[i] + length > height)
            throw PlacementError("omission span [" + std::to_string(starts[i]) + ", " +
                                 std::to_string(starts[i] + length) +
                                 ") falls outside the translation");
        if (i > 0 && starts[i] - (starts[i - 1] + length) < min_gap)
            throw PlacementError("omissions at " + std::to_string(starts[i - 1]) +
                                 " and " + std::to_string(starts[i]) +
                                 " are closer than the required gap of " +
                                 std::to_string(min_gap));
    }
    if (n * length >= height && n > 0)
        throw PlacementError("omissions would consume the whole translation");

    // Project the deleted spans onto the original-text axis through the
    // unmodified gold map; these are the spans detection is scored against.
    std::vector<Omission> omissions;
    if (n > 0) {
        const BitextMap inverse = gold.transpose();
        omissions.reserve(starts.size());
        for (offset_t a : starts) {
            Omission om;
            om.y_start = a;
            om.y_end = a + length;
            om.x_start = inverse.interpolate(static_cast<double>(a));
            om.x_end = inverse.interpolate(static_cast<double>(a + length));
            if (!(om.x_end > om.x_start))
                throw PlacementError("omission at y=" + std::to_string(a) +
                                     " projects to an empty original-text span");
            omissions.push_back(om);
        }
    }

    // Drop gold points inside the spans and shift later points down.
    struct Candidate {
        MapPoint p;
        bool survivor;
    };
    std::vector<Candidate> merged;
    merged.reserve(gold.size() + 2 * starts.size());
    {
        std::size_t span = 0;
        offset_t shift = 0;
        for (const MapPoint& p : gold.points()) {
            while (span < starts.size() && p.y >= starts[span] + length) {
                shift += length;
                ++span;
            }
            if (span < starts.size() && p.y >= starts[span]) continue;  // deleted
            merged.push_back({MapPoint{p.x, p.y - shift}, true});
        }
    }

    // A perfect mapper still knows where the deletion happened: both edges
    // of the cut map to the same translation offset, giving each omission
    // an exactly horizontal jump of the projected width.
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const offset_t level = starts[i] - static_cast<offset_t>(i) * length;
        const offset_t xs = std::llround(omissions[i].x_start);
        const offset_t xe = std::llround(omissions[i].x_end);
        if (xe <= xs) continue;
        merged.push_back({MapPoint{xs, level}, false});
        merged.push_back({MapPoint{xe, level}, false});
    }

    // Resolve abscissa collisions in favour of surviving gold points.
    std::sort(merged.begin(), merged.end(), [](const Candidate& a, const Candidate& b) {
        if (a.p.x != b.p.x) return a.p.x < b.p.x;
        if (a.survivor != b.survivor) return a.survivor;
        return a.p.y < b.p.y;
    });
    std::vector<MapPoint> points;
    points.reserve(merged.size());
    for (const Candidate& c : merged) {
        if (!points.empty() && points.back().x == c.p.x) continue;
        points.push_back(c.p);
    }

    return InjectResult{
        BitextMap::create(std::move(points), gold.width(), height - n * length),
        std::move(omissions)};
}

InjectResult inject_omissions(const BitextMap& gold, int count, offset_t length,
                              offset_t min_gap, seed_t seed) {
    if (count < 0) throw ConfigError("omission count must be non-negative");
    if (count == 0) return inject_omissions_at(gold, {}, length, min_gap);
    if (length <= 0) throw ConfigError("omission length must be positive");

    const offset_t height = gold.height();
    const offset_t capacity = (height + min_gap) / (length + min_gap);
    if (capacity < count)
        throw PlacementError("cannot place " + std::to_string(count) + " omissions of " +
                             std::to_string(length) + " chars with gap " +
                             std::to_string(min_gap) + "; only " +
                             std::to_string(std::max<offset_t>(capacity, 0)) + " fit");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<offset_t> pos(0, height - length);
    std::set<offset_t> placed;
    constexpr long kMaxAttempts = 1'000'000;
    long attempts = 0;
    while (static_cast<int>(placed.size()) < count) {
        if (++attempts > kMaxAttempts)
            throw PlacementError("gave up placing omissions after " +
                                 std::to_string(kMaxAttempts) + " attempts; placed " +
                                 std::to_string(placed.size()) + " of " +
                                 std::to_string(count));
        const offset_t a = pos(rng);
        auto next = placed.lower_bound(a);
        if (next != placed.end() && a + length + min_gap > *next) continue;
        if (next != placed.begin() && *std::prev(next) + length + min_gap > a) continue;
        placed.insert(a);
    }
    return inject_omissions_at(gold, {placed.begin(), placed.end()}, length, min_gap);
}

namespace {

// Fragment one omission's horizontal jump: replace its right boundary
// point with `count` steep two-point risers spread across the jump,
// climbing exactly to the next survivor's level. The flats between risers
// stay below any useful slope threshold while the risers land well above
// it, which is what splits one long omitted segment into several short
// ones without breaking map monotonicity.
void fragment_jump(std::vector<MapPoint>& pts, const Omission& om, offset_t level,
                   int count, std::mt19937_64& rng) {
    const offset_t xs = std::llround(om.x_start);
    const offset_t xe = std::llround(om.x_end);
    const MapPoint left{xs, level};
    const MapPoint right{xe, level};

    auto it = std::lower_bound(pts.begin(), pts.end(), left);
    if (it == pts.end() || !(*it == left)) return;  // boundary lost to a collision
    const std::size_t il = static_cast<std::size_t>(it - pts.begin());
    if (il + 2 >= pts.size() || !(pts[il + 1] == right)) return;

    const offset_t rise = pts[il + 2].y - level;  // room up to the next survivor
    const offset_t width = xe - xs;
    const offset_t k = std::min<offset_t>({static_cast<offset_t>(count), rise, (width - 4) / 3});
    if (k < 1) return;

    // One riser site per stratum keeps risers spread out and >= 2 apart.
    const offset_t lo0 = xs + 2;
    const offset_t stratum = (xe - 2 - lo0) / k;
    std::vector<MapPoint> inserted;
    inserted.reserve(2 * static_cast<std::size_t>(k));
    offset_t y = level;
    for (offset_t j = 0; j < k; ++j) {
        const offset_t lo = lo0 + j * stratum;
        std::uniform_int_distribution<offset_t> site_dist(lo, lo + stratum - 2);
        const offset_t site = site_dist(rng);
        const offset_t h = rise / k + (j < rise % k ? 1 : 0);
        inserted.push_back({site, y});
        y += h;
        inserted.push_back({site + 1, y});
    }

    pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(il) + 1);
    pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(il) + 1,
               inserted.begin(), inserted.end());
}

}  // namespace

BitextMap synthesize_noisy_map(const BitextMap& modified,
                               const std::vector<Omission>& omissions,
                               const NoiseParams& params, seed_t seed) {
    if (params.interfere_prob < 0.0 || params.interfere_prob > 1.0)
        throw ConfigError("interfere_prob must lie in [0, 1]");
    if (params.interfere_count < 0) throw ConfigError("interfere_count must be >= 0");
    if (params.jitter_sigma < 0.0) throw ConfigError("jitter_sigma must be >= 0");
    if (params.spurious_rate < 0.0) throw ConfigError("spurious_rate must be >= 0");
    if (params.is_zero()) return modified;

    std::mt19937_64 rng(seed);
    std::vector<MapPoint> pts = modified.points();
    const offset_t width = modified.width();
    const offset_t height = modified.height();

    if (params.interfere_prob > 0.0 && params.interfere_count > 0) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        offset_t shift = 0;
        for (const Omission& om : omissions) {
            const offset_t level = om.y_start - shift;
            shift += om.y_end - om.y_start;
            if (coin(rng) >= params.interfere_prob) continue;
            fragment_jump(pts, om, level, params.interfere_count, rng);
        }
    }

    if (params.jitter_sigma > 0.0 && pts.size() > 2) {
        std::normal_distribution<double> wobble(0.0, params.jitter_sigma);
        for (std::size_t i = 1; i + 1 < pts.size(); ++i)
            pts[i].y = std::llround(static_cast<double>(pts[i].y) + wobble(rng));
        for (std::size_t i = 1; i < pts.size(); ++i)
            pts[i].y = std::clamp(pts[i].y, pts[i - 1].y, height);
    }

    if (params.spurious_rate > 0.0) {
        const double expected = params.spurious_rate * static_cast<double>(width) / 100000.0;
        std::poisson_distribution<int> how_many(expected);
        const int wanted = how_many(rng);
        if (wanted > 0) {
            const BitextMap interim = BitextMap::create(pts, width, height);
            constexpr offset_t kEdgeMargin = 1000;
            constexpr offset_t kTruthMargin = 2500;
            constexpr offset_t kMutualMargin = 2000;
            std::uniform_int_distribution<offset_t> len_dist(150, 450);

            std::vector<std::pair<offset_t, offset_t>> spans;
            for (int i = 0; i < wanted; ++i) {
                for (int attempt = 0; attempt < 1000; ++attempt) {
                    const offset_t len = len_dist(rng);
                    if (width - len - 2 * kEdgeMargin <= 0) break;
                    std::uniform_int_distribution<offset_t> pos(kEdgeMargin,
                                                                width - len - kEdgeMargin);
                    const offset_t u = pos(rng);
                    bool clear = true;
                    for (const Omission& om : omissions)
                        if (static_cast<double>(u - kTruthMargin) < om.x_end &&
                            om.x_start < static_cast<double>(u + len + kTruthMargin)) {
                            clear = false;
                            break;
                        }
                    for (const auto& [ps, pe] : spans)
                        if (u - kMutualMargin < pe && ps < u + len + kMutualMargin) {
                            clear = false;
                            break;
                        }
                    if (!clear) continue;
                    spans.emplace_back(u, u + len);
                    break;
                }
            }

            for (const auto& [u, ue] : spans) {
                // A flat pair eats the real points under it: the mapper saw a
                // correspondence that is not there.
                const auto y0 = static_cast<offset_t>(std::floor(interim.interpolate(
                    static_cast<double>(u))));
                std::erase_if(pts, [u = u, ue = ue](const MapPoint& p) {
                    return p.x >= u && p.x <= ue;
                });
                pts.push_back({u, y0});
                pts.push_back({ue, y0});
            }
            std::sort(pts.begin(), pts.end());
        }
    }

    return BitextMap::create(std::move(pts), width, height);
}

ScorePattern score(const DetectionReport& report, const std::vector<Omission>& truth) {
    ScorePattern pattern;
    pattern.reserve(report.segments.size());
    for (const OmittedSegment& seg : report.segments) {
        // Flagged extent along the axis of omission; truth spans live on
        // the same axis.
        const double fs = static_cast<double>(
            seg.axis == Axis::translation ? seg.start.x : seg.start.y);
        const double fe = static_cast<double>(
            seg.axis == Axis::translation ? seg.end.x : seg.end.y);
        int hit = -1;
        for (std::size_t j = 0; j < truth.size(); ++j) {
            if (fs < truth[j].x_end && truth[j].x_start < fe) {
                hit = static_cast<int>(j);
                break;
            }
        }
        pattern.push_back(hit);
    }
    return pattern;
}

double patience_recall(const ScorePattern& pattern, int truth_count, int patience) {
    if (patience < 1) throw ConfigError("patience must be at least 1");
    if (truth_count <= 0) throw ConfigError("truth_count must be positive");

    std::unordered_set<int> counted;
    int run = 0;
    std::size_t at_run_start = 0;
    for (int label : pattern) {
        if (label < 0) {
            if (run == 0) at_run_start = counted.size();
            if (++run == patience)
                return static_cast<double>(at_run_start) / truth_count;
        } else {
            run = 0;
            counted.insert(label);
        }
    }
    return static_cast<double>(counted.size()) / truth_count;
}

double precision(const ScorePattern& pattern) {
    if (pattern.empty()) return 1.0;
    const auto trues = std::count_if(pattern.begin(), pattern.end(),
                                     [](int label) { return label >= 0; });
    return static_cast<double>(trues) / static_cast<double>(pattern.size());
}

}  // namespace adomit
