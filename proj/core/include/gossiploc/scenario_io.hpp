#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gossiploc/metrics.hpp"
#include "gossiploc/spectral.hpp"

namespace gossiploc {

/// On-disk scenario description. Positions are always stored explicitly;
/// edges may be omitted when a proximity radius is given.
struct ScenarioDoc {
    int dimension = 0;
    std::vector<std::vector<double>> positions;
    std::optional<std::vector<std::pair<int, int>>> edges;
    std::optional<double> radius;
    std::vector<int> beacons;
    /// "uniform" or explicit row-stochastic selection rows.
    std::optional<std::vector<std::vector<double>>> probability_rows;
    std::vector<std::pair<double, double>> init_box;
    std::uint64_t seed = 0;

    friend bool operator==(const ScenarioDoc&, const ScenarioDoc&) = default;
};

std::string scenario_doc_to_json(const ScenarioDoc& doc);
ScenarioDoc scenario_doc_from_json(const std::string& text);

void save_scenario_doc(const ScenarioDoc& doc, const std::filesystem::path& path);
ScenarioDoc load_scenario_doc(const std::filesystem::path& path);

/// Materializes the runnable scenario (edges from the radius if absent,
/// uniform selection if no explicit rows, estimates from the seed).
Scenario build_scenario(const ScenarioDoc& doc);

/// Inverse of build_scenario for generated setups.
ScenarioDoc describe_scenario(const Framework& fw, const std::vector<int>& beacons,
                              std::optional<double> radius, const Box& init_box,
                              std::uint64_t seed);

/// Header: slot,waker,partner,case,bearing_error,follower_error
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);
/// Sidecar metadata: seed, alpha, scenario hash, slots run.
void write_trace_metadata(const Trace& trace, const std::filesystem::path& path);

/// Header: epsilon,empirical_k,bound_k,trials,exceedance_at_bound
void write_montecarlo_csv(const std::vector<EpsilonTimeEstimate>& rows,
                          const std::filesystem::path& path);

std::string spectral_report_to_json(const SpectralReport& report);
void write_spectral_report(const SpectralReport& report, const std::filesystem::path& path);

/// One row per node: node,c0,c1,... with the node's estimated coordinates.
void write_snapshot_csv(int dim, const Vec& estimates, const std::filesystem::path& path);

}  // namespace gossiploc
