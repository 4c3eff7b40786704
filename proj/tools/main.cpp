// Command-line front end: validate bitext maps, detect omissions, and run
// the simulated-recall evaluation harness.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "adomit/bitext_map.hpp"
#include "adomit/detector.hpp"
#include "adomit/errors.hpp"
#include "adomit/report_format.hpp"
#include "adomit/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct MapOptions {
    std::string path;
    adomit::offset_t width = 0;
    adomit::offset_t height = 0;
    bool derive_dims = false;
    bool add_corners = false;
};

void add_map_options(CLI::App* cmd, MapOptions& opts) {
    cmd->add_option("--map", opts.path, "bitext map file (X<TAB>Y offsets per line)")
        ->required();
    auto* width = cmd->add_option("--width", opts.width,
                                  "character length of the original text");
    auto* height = cmd->add_option("--height", opts.height,
                                   "character length of the translation");
    auto* derive = cmd->add_flag("--derive-dims", opts.derive_dims,
                                 "take the space dimensions from the map's last point");
    width->needs(height);
    height->needs(width);
    derive->excludes(width);
    cmd->add_flag("--add-corners", opts.add_corners,
                  "augment the map with (0,0) and (width,height) if absent");
}

adomit::BitextMap load_map(const MapOptions& opts) {
    std::ifstream in(opts.path);
    if (!in) throw adomit::Error("cannot open map file \"" + opts.path + "\"");

    adomit::offset_t width = opts.width;
    adomit::offset_t height = opts.height;
    if (opts.derive_dims) {
        // First pass with loose bounds, then rebuild at the derived size.
        constexpr auto kLoose = std::numeric_limits<adomit::offset_t>::max() / 4;
        adomit::BitextMap probe = adomit::parse_map(in, kLoose, kLoose);
        if (probe.size() == 0)
            throw adomit::ValidationError("no points: cannot derive dimensions");
        width = probe.points().back().x;
        height = probe.points().back().y;
        if (width <= 0 || height <= 0)
            throw adomit::ValidationError(
                "derived dimensions are degenerate; pass --width/--height");
        std::vector<adomit::MapPoint> pts = probe.points();
        if (opts.add_corners) {
            pts.push_back({0, 0});
            pts.push_back({width, height});
        }
        return adomit::BitextMap::create(std::move(pts), width, height);
    }

    if (width <= 0 || height <= 0)
        throw adomit::ConfigError("pass --width and --height (or --derive-dims)");
    adomit::BitextMap map = adomit::parse_map(in, width, height);
    if (opts.add_corners) {
        std::vector<adomit::MapPoint> pts = map.points();
        pts.push_back({0, 0});
        pts.push_back({width, height});
        return adomit::BitextMap::create(std::move(pts), width, height);
    }
    return map;
}

int cmd_validate(const MapOptions& opts) {
    const adomit::BitextMap map = load_map(opts);
    if (map.size() == 0) {
        std::cerr << "invalid: no points\n";
        return kExitData;
    }
    std::cout << "ok: " << map.size() << " points in a " << map.width() << "x"
              << map.height() << " bitext space\n";
    return kExitOk;
}

struct DetectOptions {
    MapOptions map;
    double threshold = 37.0;
    std::string method = "adomit";
    std::string axis = "translation";
    adomit::offset_t min_length = 0;
    std::string format = "text";
};

int cmd_detect(const DetectOptions& opts) {
    const adomit::BitextMap map = load_map(opts.map);
    const adomit::Method method = adomit::method_from_string(opts.method);

    std::vector<adomit::Axis> axes;
    if (opts.axis == "both")
        axes = {adomit::Axis::translation, adomit::Axis::original};
    else
        axes = {adomit::axis_from_string(opts.axis)};

    // Axes are reported separately: their lengths are measured along
    // different texts and cannot be ranked together.
    for (adomit::Axis axis : axes) {
        const adomit::DetectionReport report =
            adomit::detect(map, opts.threshold, method, axis, opts.min_length);
        std::cout << (opts.format == "records" ? adomit::format_report_records(report)
                                               : adomit::format_report_text(report));
    }
    return kExitOk;
}

struct EvaluateOptions {
    std::string config_path;
    std::optional<adomit::seed_t> seed;
    std::string format = "text";
};

int cmd_evaluate(const EvaluateOptions& opts) {
    adomit::ExperimentConfig config = adomit::load_experiment_config_file(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    const adomit::ExperimentResults results = adomit::run_experiment(config);
    std::cout << (opts.format == "records" ? adomit::format_results_records(results)
                                           : adomit::format_results_text(results));
    return kExitOk;
}

struct SweepOptions {
    EvaluateOptions eval;
    std::vector<double> thresholds;
};

int cmd_sweep(const SweepOptions& opts) {
    adomit::ExperimentConfig config = adomit::load_experiment_config_file(opts.eval.config_path);
    if (opts.eval.seed) config.seed = *opts.eval.seed;

    const bool records = opts.eval.format == "records";
    if (!records)
        std::cout << "# threshold sweep: one row per (threshold, method, length)\n"
                  << "# threshold method length recall@3 recall@4 recall@5 precision\n";
    for (double t : opts.thresholds) {
        config.threshold_degrees = t;
        const adomit::ExperimentResults results = adomit::run_experiment(config);
        for (const adomit::CellResult& cell : results.cells) {
            if (records) {
                nlohmann::ordered_json rec{
                    {"type", "sweep"},
                    {"threshold_degrees", t},
                    {"method", adomit::to_string(cell.method)},
                    {"length", cell.length},
                    {"mean_precision", cell.mean_precision},
                };
                for (const adomit::PatienceStats& s : cell.stats)
                    rec["recall_at_" + std::to_string(s.patience)] = s.mean_recall;
                std::cout << rec.dump() << "\n";
            } else {
                char buf[256];
                std::snprintf(buf, sizeof(buf), "%9.4f %-6s %6lld %8.4f %8.4f %8.4f %9.4f\n",
                              t, adomit::to_string(cell.method).c_str(),
                              static_cast<long long>(cell.length),
                              cell.stats[0].mean_recall, cell.stats[1].mean_recall,
                              cell.stats[2].mean_recall, cell.mean_precision);
                std::cout << buf;
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"omission detection for translations via bitext-map geometry"};
    app.require_subcommand(1);

    MapOptions validate_opts;
    CLI::App* validate = app.add_subcommand("validate", "check a bitext map file");
    add_map_options(validate, validate_opts);

    DetectOptions detect_opts;
    CLI::App* detect = app.add_subcommand("detect", "flag omitted segments in a bitext map");
    add_map_options(detect, detect_opts.map);
    detect->add_option("--threshold-degrees", detect_opts.threshold,
                       "slope angle threshold in degrees")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(90.0, 0.0)))
        ->capture_default_str();
    detect->add_option("--method", detect_opts.method, "basic|adomit")
        ->check(CLI::IsMember({"basic", "adomit"}))
        ->capture_default_str();
    detect->add_option("--axis", detect_opts.axis, "translation|original|both")
        ->check(CLI::IsMember({"translation", "original", "both"}))
        ->capture_default_str();
    detect->add_option("--min-length", detect_opts.min_length,
                       "drop segments shorter than this many characters")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    detect->add_option("--format", detect_opts.format, "text|records")
        ->check(CLI::IsMember({"text", "records"}))
        ->capture_default_str();

    EvaluateOptions eval_opts;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "run the simulated-omission recall evaluation");
    evaluate->add_option("--config", eval_opts.config_path, "experiment config (JSON)")
        ->required();
    adomit::seed_t eval_seed = 0;
    CLI::Option* eval_seed_opt =
        evaluate->add_option("--seed", eval_seed, "override the config's seed");
    evaluate->add_option("--format", eval_opts.format, "text|records")
        ->check(CLI::IsMember({"text", "records"}))
        ->capture_default_str();

    SweepOptions sweep_opts;
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate across a threshold list");
    sweep->add_option("--config", sweep_opts.eval.config_path, "experiment config (JSON)")
        ->required();
    sweep->add_option("--thresholds", sweep_opts.thresholds,
                      "comma-separated slope angle thresholds in degrees")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(90.0, 0.0)));
    adomit::seed_t sweep_seed = 0;
    CLI::Option* sweep_seed_opt =
        sweep->add_option("--seed", sweep_seed, "override the config's seed");
    sweep->add_option("--format", sweep_opts.eval.format, "text|records")
        ->check(CLI::IsMember({"text", "records"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (eval_seed_opt->count() > 0) eval_opts.seed = eval_seed;
    if (sweep_seed_opt->count() > 0) sweep_opts.eval.seed = sweep_seed;

    try {
        if (validate->parsed()) return cmd_validate(validate_opts);
        if (detect->parsed()) return cmd_detect(detect_opts);
        if (evaluate->parsed()) return cmd_evaluate(eval_opts);
        if (sweep->parsed()) {
            if (sweep_opts.thresholds.empty()) {
                std::cerr << "sweep: at least one threshold is required\n";
                return kExitUsage;
            }
            return cmd_sweep(sweep_opts);
        }
    } catch (const adomit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
