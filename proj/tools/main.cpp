#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gossiploc/gossip.hpp"
#include "gossiploc/metrics.hpp"
#include "gossiploc/network.hpp"
#include "gossiploc/scenario_io.hpp"
#include "gossiploc/spectral.hpp"

namespace fs = std::filesystem;
using namespace gossiploc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;    // parse / configuration problems
constexpr int kExitVerdict = 2;  // analysis verdict failure (e.g. non-rigid)

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::optional<double> alpha;
    bool force = false;
};

fs::path ensure_out_dir(const GlobalOpts& g) {
    fs::path dir(g.out_dir);
    fs::create_directories(dir);
    return dir;
}

Scenario load_built_scenario(const std::string& path) {
    return build_scenario(load_scenario_doc(path));
}

/// Resolves the step size: the user's value (admissibility enforced unless
/// forced) or 0.9x the second-moment bound.
double resolve_alpha(const Scenario& scen, const GlobalOpts& g) {
    if (g.alpha && g.force) {
        return *g.alpha;
    }
    const StepSizeBounds bounds = step_size_bounds(expected_laplacian(scen), scen.fw);
    if (!g.alpha) {
        return default_alpha(bounds);
    }
    if (*g.alpha <= 0.0 || *g.alpha >= bounds.second_moment_bound) {
        throw InvalidParams("step size " + std::to_string(*g.alpha) +
                            " is outside the admissible range (0, " +
                            std::to_string(bounds.second_moment_bound) +
                            "); pass --force to run anyway");
    }
    return *g.alpha;
}

std::vector<Vec> read_positions_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid positions file: ") + e.what());
    }
    if (j.is_object() && j.contains("positions")) {
        j = j["positions"];
    }
    std::vector<Vec> positions;
    for (const auto& row : j) {
        const auto coords = row.get<std::vector<double>>();
        positions.push_back(Eigen::Map<const Vec>(coords.data(), coords.size()));
    }
    return positions;
}

int cmd_gen_scenario(const GlobalOpts& g, const std::string& kind, double half_width,
                     double spacing, std::optional<double> radius, std::vector<int> beacons,
                     const std::string& positions_file, const std::string& out_path) {
    const double default_radius = std::sqrt(2.0) / 2.0;
    ScenarioDoc doc;
    if (kind == "sinc-mesh" || kind == "sinc-mesh-scaled") {
        const double r = radius.value_or(default_radius);
        const Framework fw = kind == "sinc-mesh" ? sinc_mesh_framework(8.0, 0.5, r)
                                                 : sinc_mesh_framework(half_width, spacing, r);
        doc = describe_scenario(fw, beacons.empty() ? std::vector<int>{0, 1} : beacons, r,
                                Box::standard(3), g.seed);
    } else if (kind == "fig1a" || kind == "fig1b") {
        const Framework fw = kind == "fig1a" ? quad_rigid_example() : quad_nonrigid_example();
        doc = describe_scenario(fw, beacons.empty() ? std::vector<int>{0, 1} : beacons,
                                std::nullopt, Box::standard(2), g.seed);
    } else if (kind == "custom") {
        if (positions_file.empty() || !radius) {
            throw InvalidParams("kind=custom needs --positions and --radius");
        }
        const Framework fw = proximity_graph(read_positions_file(positions_file), *radius);
        if (beacons.empty()) {
            beacons = {0, 1};
        }
        doc = describe_scenario(fw, beacons, radius, Box::standard(fw.dim), g.seed);
    } else {
        throw InvalidParams("unknown scenario kind: " + kind);
    }

    build_scenario(doc);  // validate before writing
    save_scenario_doc(doc, out_path);
    std::cout << "wrote " << out_path << " (" << doc.positions.size() << " nodes, "
              << doc.edges->size() << " edges)\n";
    return kExitOk;
}

int cmd_rigidity(const GlobalOpts& g, const std::string& scenario_path) {
    const ScenarioDoc doc = load_scenario_doc(scenario_path);
    const Scenario scen = build_scenario(doc);
    const RigidityReport report = rigidity_test(scen.fw);

    std::cout << "rank " << report.rigidity_matrix_rank << " / required " << report.required_rank
              << "\nnull space dimension " << report.null_space_dimension << "\nverdict: "
              << (report.is_rigid ? "rigid" : "not rigid") << "\n";

    nlohmann::json j;
    j["rank"] = report.rigidity_matrix_rank;
    j["required_rank"] = report.required_rank;
    j["null_space_dimension"] = report.null_space_dimension;
    j["is_rigid"] = report.is_rigid;
    std::ofstream(ensure_out_dir(g) / "rigidity.json") << j.dump(2) << "\n";

    return report.is_rigid ? kExitOk : kExitVerdict;
}

int cmd_spectral(const GlobalOpts& g, const std::string& scenario_path,
                 std::vector<double> eps_list) {
    const Scenario scen = load_built_scenario(scenario_path);
    if (eps_list.empty()) {
        eps_list = {0.05, 0.1, 0.2};
    }
    const ExpectedLaplacian lap = expected_laplacian(scen);
    const StepSizeBounds bounds = step_size_bounds(lap, scen.fw);
    const double alpha = g.alpha.value_or(default_alpha(bounds));
    const SpectralReport report = spectral_report(scen, alpha, eps_list);
    if (!report.alpha_admissible) {
        std::cerr << "warning: step size " << alpha << " is outside the admissible range (0, "
                  << report.second_moment_bound << ")\n";
    }
    const fs::path out = ensure_out_dir(g) / "spectral_report.json";
    write_spectral_report(report, out);
    std::cout << spectral_report_to_json(report);
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int cmd_simulate(const GlobalOpts& g, const std::string& scenario_path, long slots, long stride) {
    const Scenario scen = load_built_scenario(scenario_path);
    const double alpha = resolve_alpha(scen, g);

    RunOptions opts;
    opts.alpha = alpha;
    opts.slots = slots;
    opts.seed = g.seed;
    opts.record_stride = stride;
    // Snapshot schedule: k = 0, N/8, N/4, N/2, 3N/4, N.
    opts.snapshot_slots = {0, slots / 8, slots / 4, slots / 2, 3 * slots / 4, slots};
    std::sort(opts.snapshot_slots.begin(), opts.snapshot_slots.end());
    opts.snapshot_slots.erase(
        std::unique(opts.snapshot_slots.begin(), opts.snapshot_slots.end()),
        opts.snapshot_slots.end());

    const RunResult result = run(scen, opts);
    const fs::path dir = ensure_out_dir(g);
    write_trace_csv(result.trace, dir / "trace.csv");
    write_trace_metadata(result.trace, dir / "trace_meta.json");
    for (const auto& [slot, estimates] : result.snapshots) {
        write_snapshot_csv(scen.fw.dim, estimates,
                           dir / ("snapshot_k" + std::to_string(slot) + ".csv"));
    }

    const TraceRecord& last = result.trace.records.back();
    const double initial_err = follower_error(scen, scen.initial_estimates);
    const ErrorSummary summary = {last.bearing_error, last.follower_error,
                                  initial_err > 0.0 ? last.follower_error / initial_err : 0.0};
    nlohmann::json j;
    j["alpha"] = alpha;
    j["slots"] = slots;
    j["seed"] = g.seed;
    j["final_bearing_error"] = summary.bearing_error;
    j["final_follower_error"] = summary.follower_error;
    j["final_error_ratio"] = summary.ratio;
    std::ofstream(dir / "summary.json") << j.dump(2) << "\n";
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_montecarlo(const GlobalOpts& g, const std::string& scenario_path,
                   std::vector<double> eps_list, int trials, long max_slots) {
    const Scenario scen = load_built_scenario(scenario_path);
    if (trials < 100) {
        throw InvalidParams("need at least 100 trials");
    }
    if (eps_list.empty()) {
        eps_list = {0.1};
    }
    const double alpha = resolve_alpha(scen, g);

    std::vector<EpsilonTimeEstimate> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list) {
        rows.push_back(empirical_epsilon_time(scen, alpha, eps, trials, max_slots, g.seed));
    }
    const fs::path out = ensure_out_dir(g) / "montecarlo.csv";
    write_montecarlo_csv(rows, out);
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized-gossip bearing-based network localization toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--out", g.out_dir, "output directory");
    double alpha_value = 0.0;
    auto* alpha_opt = app.add_option("--alpha", alpha_value, "gossip step size");
    app.add_flag("--force", g.force, "skip step-size admissibility checks");

    auto* gen = app.add_subcommand("gen-scenario", "generate a scenario file");
    std::string kind, positions_file, out_path;
    double half_width = 2.0, spacing = 0.5;
    std::optional<double> radius;
    std::vector<int> beacons;
    gen->add_option("--kind", kind,
                    "one of sinc-mesh, sinc-mesh-scaled, fig1a, fig1b, custom")
        ->required();
    gen->add_option("--half-width", half_width, "grid half width (sinc-mesh-scaled)");
    gen->add_option("--spacing", spacing, "grid spacing (sinc-mesh-scaled)");
    gen->add_option("--radius", radius, "proximity radius (default sqrt(2)/2)");
    gen->add_option("--beacons", beacons, "beacon node ids (default 0 1)");
    gen->add_option("--positions", positions_file, "positions JSON file (kind=custom)");
    gen->add_option("-o,--output", out_path, "scenario output path")->required();
    gen->fallthrough();

    auto* rigidity = app.add_subcommand("rigidity", "rigidity verdict for a scenario");
    std::string rigidity_scenario;
    rigidity->add_option("scenario", rigidity_scenario, "scenario file")->required();
    rigidity->fallthrough();

    auto* spectral = app.add_subcommand("spectral", "spectral report for a scenario");
    std::string spectral_scenario;
    std::vector<double> spectral_eps;
    spectral->add_option("scenario", spectral_scenario, "scenario file")->required();
    spectral->add_option("--eps", spectral_eps, "epsilon values for the time bound");
    spectral->fallthrough();

    auto* simulate = app.add_subcommand("simulate", "run the gossip protocol");
    std::string simulate_scenario;
    long slots = 0, stride = 10;
    simulate->add_option("scenario", simulate_scenario, "scenario file")->required();
    simulate->add_option("--slots", slots, "number of gossip slots")->required();
    simulate->add_option("--stride", stride, "record every this many slots");
    simulate->fallthrough();

    auto* montecarlo = app.add_subcommand("montecarlo", "empirical epsilon-time study");
    std::string montecarlo_scenario;
    std::vector<double> mc_eps;
    int trials = 500;
    long max_slots = 1000;
    montecarlo->add_option("scenario", montecarlo_scenario, "scenario file")->required();
    montecarlo->add_option("--eps", mc_eps, "epsilon values");
    montecarlo->add_option("--trials", trials, "number of independent trials");
    montecarlo->add_option("--max-slots", max_slots, "search horizon in slots");
    montecarlo->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }
    if (alpha_opt->count() > 0) {
        g.alpha = alpha_value;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen_scenario(g, kind, half_width, spacing, radius, beacons, positions_file,
                                    out_path);
        }
        if (rigidity->parsed()) {
            return cmd_rigidity(g, rigidity_scenario);
        }
        if (spectral->parsed()) {
            return cmd_spectral(g, spectral_scenario, spectral_eps);
        }
        if (simulate->parsed()) {
            return cmd_simulate(g, simulate_scenario, slots, stride);
        }
        if (montecarlo->parsed()) {
            return cmd_montecarlo(g, montecarlo_scenario, mc_eps, trials, max_slots);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
