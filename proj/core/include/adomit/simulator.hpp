#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "adomit/bitext_map.hpp"
#include "adomit/detector.hpp"

namespace adomit {

using seed_t = std::uint64_t;

/// One simulated omission: the deleted translation span and its projection
/// onto the original-text axis through the gold map (the "true" omitted
/// segment that detection is scored against).
struct Omission {
    offset_t y_start = 0;  // deleted span in original translation offsets
    offset_t y_end = 0;
    double x_start = 0.0;  // projected span on the original-text axis
    double x_end = 0.0;
};

/// Parametric stand-in for the errors a real bitext mapper makes. Two
/// kinds matter: points inside omitted regions that fragment them
/// (interference, hurting recall), and stray low-slope point pairs in
/// healthy text that look exactly like omissions (spurious, hurting
/// precision). Gaussian jitter roughens every interior point.
struct NoiseParams {
    double interfere_prob = 0.75;  // chance an omitted region is fragmented
    int interfere_count = 4;       // fragmentation points per afflicted region
    double jitter_sigma = 2.0;     // stddev (chars) of point perturbation
    double spurious_rate = 2.0;    // expected spurious pairs per 100k chars

    bool is_zero() const {
        return (interfere_prob <= 0.0 || interfere_count <= 0) &&
               jitter_sigma <= 0.0 && spurious_rate <= 0.0;
    }
};

struct InjectResult {
    BitextMap map;               // post-omission map, perfect-mapper view
    std::vector<Omission> omissions;
};

/// Deterministic seed derivation for sub-streams (trial seeds are logged
/// with results so any trial can be replayed).
seed_t mix_seed(seed_t a, seed_t b);

/// Synthetic stand-in for a hand-aligned gold map: points roughly every
/// mean_spacing characters along y = slope_ratio * x with bounded jitter,
/// monotone-corrected, always including (0,0) and the terminal corner.
BitextMap generate_gold_map(offset_t width, double slope_ratio,
                            offset_t mean_spacing, double jitter, seed_t seed);

/// Delete `count` spans of `length` characters from the translation at
/// uniform positions no closer than min_gap to each other. Gold points
/// inside a span vanish, later points shift down by the deleted length,
/// and the two perfect-mapper boundary points of each resulting horizontal
/// jump are inserted. True omitted segments are the spans' projections
/// through the original gold map.
InjectResult inject_omissions(const BitextMap& gold, int count, offset_t length,
                              offset_t min_gap, seed_t seed);

/// Same, at caller-chosen span starts (sorted or not). Validates the
/// min_gap spacing constraint and errors out on violations.
InjectResult inject_omissions_at(const BitextMap& gold,
                                 const std::vector<offset_t>& y_starts,
                                 offset_t length, offset_t min_gap);

/// Degrade a perfect post-omission map per NoiseParams: fragment omitted
/// regions with steep interior risers, jitter interior points (monotone
/// re-clamped), and plant spurious near-horizontal pairs in healthy text.
/// All-zero params return the input unchanged.
BitextMap synthesize_noisy_map(const BitextMap& modified,
                               const std::vector<Omission>& omissions,
                               const NoiseParams& params, seed_t seed);

/// Scored report pattern, in rank order: entry k is the index of the truth
/// segment the k-th flagged segment overlaps (x ranges sharing at least one
/// character, half-open), or -1 for a false omission.
using ScorePattern = std::vector<int>;

ScorePattern score(const DetectionReport& report, const std::vector<Omission>& truth);

/// Recall for a translator who abandons the sorted list at the first run of
/// `patience` consecutive false omissions: distinct truth segments hit
/// strictly before that run, over truth_count. Without such a run, all
/// distinct hits count.
double patience_recall(const ScorePattern& pattern, int truth_count, int patience);

/// Fraction of report entries that are true. 1.0 for an empty pattern
/// (no entries means no false alarms).
double precision(const ScorePattern& pattern);

struct ExperimentConfig {
    offset_t width = 700000;
    double slope_ratio = 1.103;
    offset_t mean_spacing = 139;
    double gold_jitter = 0.0;
    int omission_count = 100;
    std::vector<offset_t> lengths = {139, 553};
    offset_t min_gap = 1000;
    std::vector<Method> methods = {Method::basic, Method::adomit};
    double threshold_degrees = 37.0;
    int trials = 10;
    seed_t seed = 1;
    NoiseParams noise;
};

/// Read an experiment config from JSON. Accepts scalar "length"/"method"
/// or list "lengths"/"methods"; every key is optional and defaults as
/// above. Throws ConfigError/ParseError on bad input.
ExperimentConfig load_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config_file(const std::string& path);

struct TrialRecord {
    int trial = 0;
    seed_t seed = 0;
    std::string pattern;              // 'T'/'F' per report entry, rank order
    std::vector<double> recall;       // indexed by patience levels
    double precision = 1.0;
};

struct PatienceStats {
    int patience = 0;
    double mean_recall = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct CellResult {
    Method method = Method::basic;
    offset_t length = 0;
    std::vector<PatienceStats> stats;  // one per patience level
    double mean_precision = 1.0;
    bool degenerate_ci = false;        // trials < 2: interval is meaningless
    std::vector<TrialRecord> trials;
};

struct ExperimentResults {
    ExperimentConfig config;
    std::vector<int> patience_levels;  // {3, 4, 5}
    std::vector<CellResult> cells;     // ordered by (length, method)
};

/// Run the full protocol per trial and cell: generate a gold map, inject
/// omissions, synthesize map noise, detect, score against the truth, and
/// take patience recall. Trial seeds depend on (seed, length, trial) only,
/// so both methods see identical noisy maps. Mean recall carries a
/// two-sided 95% Student-t interval over trials.
ExperimentResults run_experiment(const ExperimentConfig& config);

std::string format_results_text(const ExperimentResults& results);
std::string format_results_records(const ExperimentResults& results);

}  // namespace adomit
