#include "rinqam/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rinqam/config.hpp"
#include "rinqam/detection.hpp"
#include "rinqam/io.hpp"
#include "rinqam/optimizer.hpp"
#include "rinqam/sweep.hpp"
#include "rinqam/version.hpp"

namespace rinqam {

namespace {

std::string flag_name(const std::string& key) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    return flag;
}

// Defaults, then the config file, then flag overrides.
SweepConfig assemble_config(const std::optional<std::string>& config_path,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
    SweepConfig cfg = default_sweep_config();
    if (config_path) {
        if (!std::filesystem::exists(*config_path))
            throw ConfigError("config file not found: " + *config_path);
        cfg = parse_sweep_config(read_text_file(*config_path));
    }
    for (const auto& [key, value] : overrides) apply_config_value(cfg, key, value);
    validate_sweep_config(cfg);
    for (const std::string& spec : cfg.constellations) {
        if (spec != "cross" && spec != "reference" && spec != "optimized" &&
            !std::filesystem::exists(spec))
            throw ConfigError("constellation file not found: " + spec);
    }
    return cfg;
}

ChannelParams channel_from_config(const SweepConfig& cfg) {
    ChannelParams params;
    params.nep_w_sqrthz = cfg.nep_w_sqrthz;
    params.bandwidth_hz = cfg.bandwidth_hz;
    params.beta = effective_beta(cfg);
    if (!cfg.rin_db_hz.empty()) params.rin_db_hz = cfg.rin_db_hz.front();
    return params;
}

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir);
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

struct CommonOptions {
    std::optional<std::string> config_path;
    std::string output_dir = ".";
    int threads = 0;
    std::vector<std::pair<std::string, std::string>> overrides;
};

// Registers --config/--output/--threads plus one override flag per config key.
void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option_function<std::string>(
           "--config", [&opts](const std::string& v) { opts.config_path = v; },
           "flat key = value config file");
    cmd->add_option("--output", opts.output_dir, "output directory")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads,
                    "worker threads (0 = all cores); never changes results");
    for (const ConfigKeyInfo& info : sweep_config_keys()) {
        const std::string key = info.key;
        cmd->add_option_function<std::string>(
            flag_name(key),
            [&opts, key](const std::string& v) { opts.overrides.emplace_back(key, v); },
            info.help);
    }
}

int cmd_sweep(const CommonOptions& opts) {
    const SweepConfig cfg = assemble_config(opts.config_path, opts.overrides);
    const SweepResult result = run_sweep(cfg, opts.threads);
    ensure_output_dir(opts.output_dir);
    emit_csv(result.rows, result.manifest, join_path(opts.output_dir, "sweep.csv"));
    std::cout << "wrote " << result.rows.size() << " rows to "
              << join_path(opts.output_dir, "sweep.csv") << "\n";
    return 0;
}

int cmd_optimize(const CommonOptions& opts, const std::string& mode,
                 const std::string& evaluator, std::uint64_t mc_trials, double quad_cell,
                 double quad_extent) {
    const SweepConfig cfg = assemble_config(opts.config_path, opts.overrides);
    SearchConfig sc;
    if (mode == "symmetric") {
        sc.mode = SearchMode::symmetric;
    } else if (mode == "full") {
        sc.mode = SearchMode::full;
    } else {
        throw ConfigError("mode must be symmetric or full");
    }
    if (evaluator == "quadrature") {
        sc.evaluator = SearchEvaluator::quadrature;
    } else if (evaluator == "monte-carlo") {
        sc.evaluator = SearchEvaluator::monte_carlo;
    } else {
        throw ConfigError("evaluator must be quadrature or monte-carlo");
    }
    sc.quad.cell_size = quad_cell;
    sc.quad.extent_sigmas = quad_extent;
    sc.mc_trials = mc_trials;
    sc.seed = cfg.seed;
    sc.threads = opts.threads;

    // The search runs in the RIN-dominated regime of the first configured RIN.
    const ChannelParams params =
        saturation_operating_point(channel_from_config(cfg), cfg.rin_db_hz.front());
    const SearchReport report =
        optimize_constellation(make_noise_model(params), params.beta, sc);

    ensure_output_dir(opts.output_dir);
    write_text_file(join_path(opts.output_dir, "search.csv"), search_report_csv(report));
    RunManifest mf;
    mf.add("tool_version", kVersion);
    mf.add("rin_db_hz", format_g9(params.rin_db_hz));
    mf.add("eta_mw", format_g9(params.eta_mw));
    mf.add("candidates", std::to_string(report.ranked.size()));
    write_text_file(join_path(opts.output_dir, "manifest.txt"), manifest_text(mf));
    std::cout << "best removal " << to_string(report.best().removal) << " ser "
              << format_g9(report.best().ser) << " (" << report.ranked.size()
              << " candidates)\n";
    return 0;
}

int cmd_label_search(const CommonOptions& opts, const std::string& source) {
    Constellation target = optimized_qam32();
    if (source != "optimized") {
        if (!std::filesystem::exists(source))
            throw ConfigError("constellation file not found: " + source);
        const ParsedConstellation parsed = load_constellation_file(source);
        if (!(parsed.constellation == target))
            throw ConfigError(
                "label search needs the optimized point set (its lower-left 4x4 block "
                "seeds the reflected Gray product)");
        target = parsed.constellation;
    }

    const NeighborGraph graph = neighbor_graph(target);
    const PartialLabeling partial = brgc_seed_labeling(target);
    const Labeling found = complete_labeling(partial, target, graph, opts.threads);

    const double objective = avg_nn_hamming(found, graph);
    int max_edge = 0, over_one = 0;
    for (const auto& [u, v] : graph.edges) {
        const int d = hamming(found.code_of(u), found.code_of(v));
        max_edge = std::max(max_edge, d);
        if (d > 1) ++over_one;
    }

    ensure_output_dir(opts.output_dir);
    write_text_file(join_path(opts.output_dir, "labeled.txt"), serialize(target, &found));
    RunManifest report;
    report.add("tool_version", kVersion);
    report.add("constellation", target.name());
    report.add("edges", std::to_string(graph.edges.size()));
    report.add("avg_nn_hamming", format_g9(objective));
    report.add("max_edge_hamming", std::to_string(max_edge));
    report.add("edges_above_hamming_1", std::to_string(over_one));
    write_text_file(join_path(opts.output_dir, "label_report.txt"), manifest_text(report));
    std::cout << "avg neighbor hamming " << format_g9(objective) << ", max edge " << max_edge
              << ", edges above 1: " << over_one << "\n";
    return 0;
}

int cmd_export(const CommonOptions& opts, const std::string& name) {
    std::string text;
    if (name == "cross") {
        const Labeling l = cross_labeling();
        text = serialize(cross_qam32(), &l);
    } else if (name == "reference") {
        const Labeling l = reference_labeling();
        text = serialize(reference_qam32(), &l);
    } else if (name == "optimized") {
        const Labeling l = optimized_labeling();
        text = serialize(optimized_qam32(), &l);
    } else {
        throw ConfigError("unknown constellation '" + name +
                          "' (expected cross, reference, or optimized)");
    }
    ensure_output_dir(opts.output_dir);
    const std::string path = join_path(opts.output_dir, name + ".txt");
    write_text_file(path, text);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_calibrate(const CommonOptions& opts, double rin_db_hz, double target_ber) {
    const SweepConfig cfg = assemble_config(opts.config_path, opts.overrides);
    const ChannelParams calibrated =
        calibrate_floor(channel_from_config(cfg), rin_db_hz, target_ber, QuadratureSpec{},
                        opts.threads);

    ensure_output_dir(opts.output_dir);
    RunManifest mf;
    mf.add("tool_version", kVersion);
    mf.add("target_rin_db_hz", format_g9(rin_db_hz));
    mf.add("target_ber_floor", format_g9(target_ber));
    mf.add("nep_w_sqrthz", format_g9(calibrated.nep_w_sqrthz));
    mf.add("bandwidth_hz", format_g9(calibrated.bandwidth_hz));
    mf.add("beta", format_g9(calibrated.beta));
    mf.add("saturation_eta_mw", format_g9(calibrated.eta_mw));
    mf.add("saturation_oma_dbm", format_g9(eta_to_oma_dbm(calibrated.eta_mw)));
    write_text_file(join_path(opts.output_dir, "calibrated.txt"), manifest_text(mf));
    std::cout << "calibrated bandwidth_hz = " << format_g9(calibrated.bandwidth_hz) << "\n";
    return 0;
}

}  // namespace

std::string config_keys_help() {
    std::string out;
    for (const ConfigKeyInfo& info : sweep_config_keys())
        out += "  " + info.key + ": " + info.help + "\n";
    return out;
}

int run_cli(std::vector<std::string> args) {
    CLI::App app{"PAM-6 / QAM-32 link simulator for RIN-limited IM-DD channels"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.footer("Config keys (file lines `key = value`, or the matching flags):\n" +
               config_keys_help());

    CommonOptions sweep_opts;
    CLI::App* sweep = app.add_subcommand("sweep", "run an OMA x RIN x constellation sweep");
    add_common_options(sweep, sweep_opts);

    CommonOptions opt_opts;
    std::string mode = "symmetric";
    std::string evaluator = "quadrature";
    std::uint64_t mc_trials = 1000000;
    double quad_cell = 0.05, quad_extent = 8.0;
    CLI::App* optimize =
        app.add_subcommand("optimize", "rank 32-point subsets by SER at saturation");
    add_common_options(optimize, opt_opts);
    optimize->add_option("--mode", mode, "symmetric (345 candidates) or full (58905)")
        ->capture_default_str();
    optimize->add_option("--evaluator", evaluator, "quadrature or monte-carlo")
        ->capture_default_str();
    optimize->add_option("--mc-trials", mc_trials, "trials per candidate (monte-carlo)")
        ->capture_default_str();
    optimize->add_option("--quad-cell-size", quad_cell, "quadrature grid spacing")
        ->capture_default_str();
    optimize->add_option("--quad-extent", quad_extent, "quadrature extent in sigmas")
        ->capture_default_str();

    CommonOptions label_opts;
    std::string label_source = "optimized";
    CLI::App* label =
        app.add_subcommand("label-search", "exhaustive completion of the seeded labeling");
    add_common_options(label, label_opts);
    label->add_option("--constellation", label_source, "optimized or a constellation file")
        ->capture_default_str();

    CommonOptions export_opts;
    std::string export_name;
    CLI::App* exportc =
        app.add_subcommand("export", "write a builtin constellation + labeling file");
    add_common_options(exportc, export_opts);
    exportc->add_option("name", export_name, "cross | reference | optimized")->required();

    CommonOptions cal_opts;
    double cal_rin = -144.0;
    double cal_target = 1.77026e-5;
    CLI::App* calibrate =
        app.add_subcommand("calibrate", "fit the RIN-variance scale to a BER floor");
    add_common_options(calibrate, cal_opts);
    calibrate->add_option("--rin", cal_rin, "RIN of the target floor, dB/Hz")
        ->capture_default_str();
    calibrate->add_option("--target-ber", cal_target, "BER floor to match")
        ->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(sweep_opts);
        if (optimize->parsed())
            return cmd_optimize(opt_opts, mode, evaluator, mc_trials, quad_cell, quad_extent);
        if (label->parsed()) return cmd_label_search(label_opts, label_source);
        if (exportc->parsed()) return cmd_export(export_opts, export_name);
        if (calibrate->parsed()) return cmd_calibrate(cal_opts, cal_rin, cal_target);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace rinqam
