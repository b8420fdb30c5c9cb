#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sbfr/records.hpp"

namespace sbfr {

/// Parsed matrix file. Format: one `key = value[, value...]` per line,
/// `#` starts a comment. List keys: d theta shape delta gamma strategy N
/// lambda L. Scalar keys: repetitions base_seed k fscs_k alg1_mode
/// orientation_policy probe_budget mc_samples first_failure_budget.
struct ExperimentMatrix {
    std::vector<std::size_t> d{2};
    std::vector<double> theta{0.001};
    std::vector<RegionShape> shape{RegionShape::Hyperrectangle};
    std::vector<double> delta{1.0};
    std::vector<double> gamma{0.0};
    std::vector<Strategy> strategy{Strategy::DSB};
    std::vector<std::size_t> N{100};
    std::vector<std::uint32_t> lambda{20};
    std::vector<double> L{1.0};
    std::size_t repetitions = 50;
    std::uint64_t base_seed = 20190801;
    GlobalConfig config;

    /// Cross product, varying the last key fastest.
    std::vector<ExperimentSetting> cells() const;
};

/// Throws ConfigError with the line number on any problem.
ExperimentMatrix parse_matrix(std::string_view text);
ExperimentMatrix load_matrix(const std::string& path);

} // namespace sbfr
