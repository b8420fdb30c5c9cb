#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sbfr/measure.hpp"
#include "sbfr/records.hpp"

namespace sbfr {

/// Seed of repetition `rep` of a setting.
std::uint64_t run_seed(const ExperimentSetting& setting, std::size_t rep);

/// Seed for the Monte-Carlo volume estimate of a run.
inline std::uint64_t measure_seed_for(std::uint64_t run_seed) { return mix_seed({run_seed, 0x6d63ULL}); }

/// Searches for the failure region of one repetition. Infeasible regions and
/// runs without a first failure come back as records with that status.
RunRecord run_one(const ExperimentSetting& setting, const GlobalConfig& config, std::size_t rep,
                  Execution mc_exec = Execution::Serial);

std::vector<RunRecord> run_setting(const ExperimentSetting& setting, const GlobalConfig& config,
                                   Execution mc_exec = Execution::Serial);

/// True when a region of this setting can be placed in the unit domain.
bool setting_feasible(const ExperimentSetting& setting, const GlobalConfig& config, std::string* why = nullptr);

struct SweepOptions {
    int jobs = 1;
    std::filesystem::path out_dir;  // empty: nothing written
    bool write_records = true;      // one JSON file per run under records/
    bool quiet = false;
};

struct SweepResult {
    std::vector<RunRecord> records;  // cell order, then rep
    std::vector<std::string> skipped;  // infeasible cells with the reason
    std::size_t cells = 0;
    std::size_t ok = 0;
    std::size_t failed = 0;  // status no-failure or error
    std::string runs_csv;
    std::string summary_csv;
};

/// Runs every (cell, repetition) with `jobs` OpenMP workers. Output does
/// not depend on the worker count.
SweepResult sweep(const std::vector<ExperimentSetting>& cells, const GlobalConfig& config,
                  const SweepOptions& options);

/// runs.csv text for a record list.
std::string runs_csv(const std::vector<RunRecord>& records);

/// Points the region measure is taken over (boundary inputs, then sources).
std::vector<Point> afr_points(const RunRecord& r);

} // namespace sbfr
