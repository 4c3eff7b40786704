#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "adomit/errors.hpp"
#include "adomit/simulator.hpp"

namespace adomit {

namespace {

using nlohmann::json;

const std::vector<int> kPatienceLevels = {3, 4, 5};

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end())
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
}

void validate_config(const ExperimentConfig& c) {
    if (c.width <= 0) throw ConfigError("width must be positive");
    if (!(c.slope_ratio > 0.0)) throw ConfigError("slope_ratio must be positive");
    if (c.mean_spacing <= 0) throw ConfigError("mean_spacing must be positive");
    if (c.gold_jitter < 0.0) throw ConfigError("gold_jitter must be >= 0");
    if (c.omission_count < 0) throw ConfigError("count must be >= 0");
    if (c.lengths.empty()) throw ConfigError("at least one omission length is required");
    for (offset_t len : c.lengths)
        if (len <= 0) throw ConfigError("omission lengths must be positive");
    if (c.min_gap < 0) throw ConfigError("min_gap must be >= 0");
    if (c.methods.empty()) throw ConfigError("at least one method is required");
    if (!(c.threshold_degrees > 0.0 && c.threshold_degrees < 90.0))
        throw ConfigError("threshold_degrees must lie in (0, 90)");
    if (c.trials < 1) throw ConfigError("trials must be >= 1");
    if (c.noise.interfere_prob < 0.0 || c.noise.interfere_prob > 1.0)
        throw ConfigError("noise.interfere_prob must lie in [0, 1]");
    if (c.noise.interfere_count < 0) throw ConfigError("noise.interfere_count must be >= 0");
    if (c.noise.jitter_sigma < 0.0) throw ConfigError("noise.jitter_sigma must be >= 0");
    if (c.noise.spurious_rate < 0.0) throw ConfigError("noise.spurious_rate must be >= 0");
}

}  // namespace

ExperimentConfig load_experiment_config(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("experiment config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    require_keys(j,
                 {"width", "slope_ratio", "mean_spacing", "gold_jitter", "count",
                  "length", "lengths", "min_gap", "method", "methods",
                  "threshold_degrees", "trials", "seed", "noise"},
                 "experiment config");

    ExperimentConfig c;
    if (j.contains("width")) c.width = j.at("width").get<offset_t>();
    if (j.contains("slope_ratio")) c.slope_ratio = j.at("slope_ratio").get<double>();
    if (j.contains("mean_spacing")) c.mean_spacing = j.at("mean_spacing").get<offset_t>();
    if (j.contains("gold_jitter")) c.gold_jitter = j.at("gold_jitter").get<double>();
    if (j.contains("count")) c.omission_count = j.at("count").get<int>();
    if (j.contains("min_gap")) c.min_gap = j.at("min_gap").get<offset_t>();
    if (j.contains("threshold_degrees"))
        c.threshold_degrees = j.at("threshold_degrees").get<double>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<seed_t>();

    if (j.contains("length") && j.contains("lengths"))
        throw ConfigError("give either \"length\" or \"lengths\", not both");
    if (j.contains("length")) c.lengths = {j.at("length").get<offset_t>()};
    if (j.contains("lengths")) c.lengths = j.at("lengths").get<std::vector<offset_t>>();

    if (j.contains("method") && j.contains("methods"))
        throw ConfigError("give either \"method\" or \"methods\", not both");
    auto parse_method_list = [&](const json& m) {
        std::vector<Method> out;
        if (m.is_string()) {
            const auto s = m.get<std::string>();
            if (s == "both") return std::vector<Method>{Method::basic, Method::adomit};
            return std::vector<Method>{method_from_string(s)};
        }
        for (const auto& item : m) out.push_back(method_from_string(item.get<std::string>()));
        return out;
    };
    if (j.contains("method")) c.methods = parse_method_list(j.at("method"));
    if (j.contains("methods")) c.methods = parse_method_list(j.at("methods"));

    if (j.contains("noise")) {
        const json& noise = j.at("noise");
        require_keys(noise, {"interfere_prob", "interfere_count", "jitter_sigma", "spurious_rate"},
                     "\"noise\"");
        if (noise.contains("interfere_prob"))
            c.noise.interfere_prob = noise.at("interfere_prob").get<double>();
        if (noise.contains("interfere_count"))
            c.noise.interfere_count = noise.at("interfere_count").get<int>();
        if (noise.contains("jitter_sigma"))
            c.noise.jitter_sigma = noise.at("jitter_sigma").get<double>();
        if (noise.contains("spurious_rate"))
            c.noise.spurious_rate = noise.at("spurious_rate").get<double>();
    }

    validate_config(c);
    return c;
}

ExperimentConfig load_experiment_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open experiment config \"" + path + "\"");
    return load_experiment_config(in);
}

namespace {

struct TrialInputs {
    seed_t seed = 0;
    BitextMap noisy;
    std::vector<Omission> truth;
};

TrialInputs prepare_trial(const ExperimentConfig& cfg, offset_t length, int trial) {
    const seed_t trial_seed =
        mix_seed(cfg.seed, mix_seed(static_cast<seed_t>(length), static_cast<seed_t>(trial)));
    BitextMap gold = generate_gold_map(cfg.width, cfg.slope_ratio, cfg.mean_spacing,
                                       cfg.gold_jitter, mix_seed(trial_seed, 1));
    InjectResult injected =
        inject_omissions(gold, cfg.omission_count, length, cfg.min_gap, mix_seed(trial_seed, 2));
    BitextMap noisy = synthesize_noisy_map(injected.map, injected.omissions, cfg.noise,
                                           mix_seed(trial_seed, 3));
    return TrialInputs{trial_seed, std::move(noisy), std::move(injected.omissions)};
}

PatienceStats summarize(int patience, const std::vector<double>& values) {
    PatienceStats s;
    s.patience = patience;
    const auto n = static_cast<double>(values.size());
    s.mean_recall = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) {
        s.ci_low = s.ci_high = s.mean_recall;
        return s;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean_recall) * (v - s.mean_recall);
    const double sd = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    const double half = boost::math::quantile(dist, 0.975) * sd / std::sqrt(n);
    s.ci_low = s.mean_recall - half;
    s.ci_high = s.mean_recall + half;
    return s;
}

}  // namespace

ExperimentResults run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);

    ExperimentResults results;
    results.config = cfg;
    results.patience_levels = kPatienceLevels;

    for (offset_t length : cfg.lengths) {
        // Trials are independent given their seeds; build the maps
        // concurrently, then share them across methods so the comparison
        // is paired.
        std::vector<std::future<TrialInputs>> pending;
        pending.reserve(static_cast<std::size_t>(cfg.trials));
        for (int t = 0; t < cfg.trials; ++t)
            pending.push_back(std::async(std::launch::async, prepare_trial,
                                         std::cref(cfg), length, t));
        std::vector<TrialInputs> inputs;
        inputs.reserve(pending.size());
        for (auto& f : pending) inputs.push_back(f.get());

        for (Method method : cfg.methods) {
            CellResult cell;
            cell.method = method;
            cell.length = length;
            cell.degenerate_ci = cfg.trials < 2;

            std::vector<std::vector<double>> recalls(kPatienceLevels.size());
            double precision_sum = 0.0;
            for (int t = 0; t < cfg.trials; ++t) {
                const TrialInputs& in = inputs[static_cast<std::size_t>(t)];
                const DetectionReport report =
                    detect(in.noisy, cfg.threshold_degrees, method, Axis::translation);
                const ScorePattern pattern = score(report, in.truth);

                TrialRecord rec;
                rec.trial = t;
                rec.seed = in.seed;
                rec.pattern.reserve(pattern.size());
                for (int label : pattern) rec.pattern.push_back(label >= 0 ? 'T' : 'F');
                for (std::size_t pi = 0; pi < kPatienceLevels.size(); ++pi) {
                    const double r =
                        patience_recall(pattern, cfg.omission_count, kPatienceLevels[pi]);
                    rec.recall.push_back(r);
                    recalls[pi].push_back(r);
                }
                rec.precision = precision(pattern);
                precision_sum += rec.precision;
                cell.trials.push_back(std::move(rec));
            }

            for (std::size_t pi = 0; pi < kPatienceLevels.size(); ++pi)
                cell.stats.push_back(summarize(kPatienceLevels[pi], recalls[pi]));
            cell.mean_precision = precision_sum / cfg.trials;
            results.cells.push_back(std::move(cell));
        }
    }
    return results;
}

std::string format_results_text(const ExperimentResults& results) {
    const ExperimentConfig& c = results.config;
    std::string out;
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "# evaluation: trials=%d threshold=%.6g seed=%llu width=%lld "
                  "slope=%.6g spacing=%lld count=%d min_gap=%lld\n",
                  c.trials, c.threshold_degrees, static_cast<unsigned long long>(c.seed),
                  static_cast<long long>(c.width), c.slope_ratio,
                  static_cast<long long>(c.mean_spacing), c.omission_count,
                  static_cast<long long>(c.min_gap));
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "# noise: interfere_prob=%.6g interfere_count=%d jitter_sigma=%.6g "
                  "spurious_rate=%.6g\n",
                  c.noise.interfere_prob, c.noise.interfere_count, c.noise.jitter_sigma,
                  c.noise.spurious_rate);
    out += buf;
    for (const CellResult& cell : results.cells) {
        std::snprintf(buf, sizeof(buf), "method=%s length=%lld precision=%.4f\n",
                      to_string(cell.method).c_str(), static_cast<long long>(cell.length),
                      cell.mean_precision);
        out += buf;
        for (const PatienceStats& s : cell.stats) {
            if (cell.degenerate_ci)
                std::snprintf(buf, sizeof(buf),
                              "  patience %d: recall %.4f ci95 degenerate (single trial)\n",
                              s.patience, s.mean_recall);
            else
                std::snprintf(buf, sizeof(buf),
                              "  patience %d: recall %.4f ci95 [%.4f, %.4f]\n",
                              s.patience, s.mean_recall, s.ci_low, s.ci_high);
            out += buf;
        }
    }
    return out;
}

std::string format_results_records(const ExperimentResults& results) {
    std::string out;
    for (const CellResult& cell : results.cells) {
        for (const PatienceStats& s : cell.stats) {
            nlohmann::ordered_json rec{
                {"type", "result"},
                {"method", to_string(cell.method)},
                {"length", cell.length},
                {"patience", s.patience},
                {"mean_recall", s.mean_recall},
                {"ci_low", s.ci_low},
                {"ci_high", s.ci_high},
                {"trials", static_cast<int>(cell.trials.size())},
                {"degenerate_ci", cell.degenerate_ci},
                {"mean_precision", cell.mean_precision},
            };
            out += rec.dump();
            out += '\n';
        }
        for (const TrialRecord& t : cell.trials) {
            nlohmann::ordered_json rec{
                {"type", "trial"},
                {"method", to_string(cell.method)},
                {"length", cell.length},
                {"trial", t.trial},
                {"seed", t.seed},
                {"pattern", t.pattern},
                {"precision", t.precision},
            };
            nlohmann::ordered_json recall;
            for (std::size_t pi = 0; pi < results.patience_levels.size(); ++pi)
                recall[std::to_string(results.patience_levels[pi])] = t.recall[pi];
            rec["recall"] = recall;
            out += rec.dump();
            out += '\n';
        }
    }
    return out;
}

}  // namespace adomit
