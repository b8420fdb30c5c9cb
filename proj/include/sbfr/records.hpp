#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sbfr/geometry.hpp"
#include "sbfr/measure.hpp"
#include "sbfr/oracles.hpp"
#include "sbfr/search.hpp"

namespace sbfr {

/// One cell of the experiment matrix.
struct ExperimentSetting {
    std::size_t d = 2;
    double theta = 0.001;
    RegionShape shape = RegionShape::Hyperrectangle;
    double delta = 1.0;
    double gamma = 0.0;  // degrees
    Strategy strategy = Strategy::DSB;
    std::size_t N = 100;
    std::uint32_t lambda = 20;
    double L = 1.0;
    std::size_t repetitions = 50;
    std::uint64_t base_seed = 20190801;

    /// Stable identifier built from the parameters (no commas).
    std::string id() const;
    void validate() const;
};

/// Tunables shared by every cell of a sweep.
struct GlobalConfig {
    std::size_t dsb_candidates = 10;
    std::size_t fscs_candidates = 10;
    OrientationPolicy orientation_policy = OrientationPolicy::AllPerSource;
    Alg1Mode alg1_mode = Alg1Mode::Bracketing;
    std::uint64_t probe_budget = 1'000'000;
    std::uint64_t mc_samples = kDefaultMcSamples;
    std::uint64_t first_failure_budget = 100'000;
    AxisPlane rotation_plane{0, 1};
};

enum class RunStatus { Ok, Infeasible, NoFailure, Error };
std::string_view to_string(RunStatus s);
RunStatus parse_run_status(std::string_view s);

struct RunRecord {
    ExperimentSetting setting;
    GlobalConfig config;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    RunStatus status = RunStatus::Ok;
    std::string message;

    std::optional<RegionSpec> region;
    std::optional<Point> first_failure;
    std::uint64_t first_failure_executions = 0;
    std::vector<Point> source_inputs;
    std::vector<Point> boundary_inputs;
    std::uint64_t probes = 0;
    std::uint64_t iterations = 0;
    std::uint64_t rays = 0;
    std::uint64_t degenerate_rays = 0;
    bool budget_exhausted = false;
    bool pool_exhausted = false;
    double wall_time_ms = 0.0;
    RegionMeasure measure;
    std::uint64_t measure_seed = 0;
    std::string afr_report;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& j);

inline constexpr std::string_view kCsvHeader =
    "setting_id,rep,d,theta,shape,delta,gamma,strategy,N,lambda,L,alg1_mode,orientation_policy,"
    "s_ratio,s_afr,s_rfr,stderr,probes,iterations,wall_time_ms,seed,status";

std::string csv_row(const RunRecord& r);

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

/// A parsed row of the runs CSV, keyed by header names.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

struct CellSummary {
    std::string setting_id;
    std::vector<std::string> key;  // d, theta, shape, delta, gamma, strategy, N, lambda, L
    std::size_t runs = 0;
    std::size_t ok_runs = 0;
    double mean_s_ratio = 0.0;
    double mean_wall_time_ms = 0.0;
    double mean_iterations = 0.0;
    double mean_probes = 0.0;
};

inline constexpr std::string_view kSummaryHeader =
    "setting_id,d,theta,shape,delta,gamma,strategy,N,lambda,L,runs,ok_runs,mean_s_ratio,mean_wall_time_ms,"
    "mean_iterations,mean_probes";

/// Per-cell means over status=ok rows, cells in first-appearance order.
std::vector<CellSummary> summarize(const CsvTable& runs);
std::string summary_csv(const std::vector<CellSummary>& cells);

} // namespace sbfr
