#include "sbfr/harness.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sbfr/errors.hpp"

namespace sbfr {

std::uint64_t run_seed(const ExperimentSetting& setting, std::size_t rep) {
    return mix_seed({setting.base_seed, hash_string(setting.id()), static_cast<std::uint64_t>(rep)});
}

std::vector<Point> afr_points(const RunRecord& r) {
    std::vector<Point> pts = r.boundary_inputs;
    pts.insert(pts.end(), r.source_inputs.begin(), r.source_inputs.end());
    return pts;
}

RunRecord run_one(const ExperimentSetting& setting, const GlobalConfig& config, std::size_t rep, Execution mc_exec) {
    setting.validate();
    RunRecord r;
    r.setting = setting;
    r.config = config;
    r.rep = rep;
    r.seed = run_seed(setting, rep);
    r.measure_seed = measure_seed_for(r.seed);

    Rng rng(r.seed);
    const auto domain = InputDomain::unit(setting.d);
    try {
        r.region = place_region(setting.shape, setting.theta, setting.delta, setting.gamma, config.rotation_plane,
                                domain, rng);
    } catch (const InfeasibleRegion& e) {
        r.status = RunStatus::Infeasible;
        r.message = e.what();
        return r;
    }
    RegionOracle oracle(*r.region);

    FirstFailure first;
    try {
        first = find_first_failure(oracle, domain, config.fscs_candidates, rng, config.first_failure_budget);
    } catch (const NoFailureFound& e) {
        r.status = RunStatus::NoFailure;
        r.message = e.what();
        r.first_failure_executions = config.first_failure_budget;
        return r;
    }
    r.first_failure = first.input;
    r.first_failure_executions = first.executions;

    SearchConfig sc;
    sc.strategy = setting.strategy;
    sc.extension_length = setting.L;
    sc.miss_threshold = setting.lambda;
    sc.target_count = setting.N;
    sc.dsb_candidates = config.dsb_candidates;
    sc.fscs_candidates = config.fscs_candidates;
    sc.orientation_policy = config.orientation_policy;
    sc.alg1_mode = config.alg1_mode;
    sc.probe_budget = config.probe_budget;
    sc.seed = r.seed;

    try {
        sc.validate();
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<Point> sources{first.input};
        const auto harvest = run_strategy(sources, sc, oracle, domain, rng);
        const auto t1 = std::chrono::steady_clock::now();
        r.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        r.source_inputs = harvest.source_inputs;
        r.boundary_inputs = harvest.boundary_inputs;
        r.probes = harvest.probes;
        r.iterations = harvest.iterations;
        r.rays = harvest.rays;
        r.degenerate_rays = harvest.degenerate_rays;
        r.budget_exhausted = harvest.budget_exhausted;
        r.pool_exhausted = harvest.pool_exhausted;
        r.measure = measure_run(harvest, *r.region, domain, config.mc_samples, r.measure_seed, mc_exec);
        r.afr_report = inequality_report(afr_points(r));
        if (harvest.budget_exhausted) r.message = "probe budget exhausted";
        else if (harvest.pool_exhausted) r.message = "source pool exhausted";
    } catch (const std::exception& e) {
        r.status = RunStatus::Error;
        r.message = e.what();
    }
    return r;
}

std::vector<RunRecord> run_setting(const ExperimentSetting& setting, const GlobalConfig& config, Execution mc_exec) {
    std::vector<RunRecord> out;
    out.reserve(setting.repetitions);
    for (std::size_t rep = 0; rep < setting.repetitions; ++rep) out.push_back(run_one(setting, config, rep, mc_exec));
    return out;
}

bool setting_feasible(const ExperimentSetting& setting, const GlobalConfig& config, std::string* why) {
    Rng probe(0);
    try {
        place_region(setting.shape, setting.theta, setting.delta, setting.gamma, config.rotation_plane,
                     InputDomain::unit(setting.d), probe);
        return true;
    } catch (const InfeasibleRegion& e) {
        if (why) *why = e.what();
        return false;
    }
}

std::string runs_csv(const std::vector<RunRecord>& records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : records) out += csv_row(r) + "\n";
    return out;
}

namespace {

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    f << text;
}

} // namespace

SweepResult sweep(const std::vector<ExperimentSetting>& cells, const GlobalConfig& config,
                  const SweepOptions& options) {
    SweepResult res;
    std::vector<ExperimentSetting> feasible;
    for (const auto& c : cells) {
        c.validate();
        std::string why;
        if (setting_feasible(c, config, &why)) {
            feasible.push_back(c);
        } else {
            res.skipped.push_back(c.id() + ": " + why);
            if (!options.quiet) std::cerr << "skipping infeasible cell " << c.id() << ": " << why << "\n";
        }
    }
    res.cells = feasible.size();

    struct Job {
        std::size_t cell;
        std::size_t rep;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < feasible.size(); ++c) {
        for (std::size_t r = 0; r < feasible[c].repetitions; ++r) jobs.push_back({c, r});
    }
    res.records.resize(jobs.size());

    if (!options.out_dir.empty() && options.write_records) {
        std::filesystem::create_directories(options.out_dir / "records");
    }

    std::string write_error;  // exceptions must not leave the parallel region
    const int workers = std::max(1, options.jobs);
    const long long njobs = static_cast<long long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long long j = 0; j < njobs; ++j) {
        const auto& job = jobs[static_cast<std::size_t>(j)];
        auto rec = run_one(feasible[job.cell], config, job.rep, Execution::Serial);
        if (!options.out_dir.empty() && options.write_records) {
            const auto name = rec.setting.id() + "_r" + std::to_string(rec.rep) + ".json";
            try {
                write_text(options.out_dir / "records" / name, to_json(rec).dump(1) + "\n");
            } catch (const std::exception& e) {
#pragma omp critical(sbfr_write_error)
                if (write_error.empty()) write_error = e.what();
            }
        }
        res.records[static_cast<std::size_t>(j)] = std::move(rec);
    }
    if (!write_error.empty()) throw ConfigError(write_error);

    for (const auto& r : res.records) {
        if (r.status == RunStatus::Ok) ++res.ok;
        else ++res.failed;
    }
    res.runs_csv = runs_csv(res.records);
    res.summary_csv = summary_csv(summarize(parse_csv(res.runs_csv)));
    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        write_text(options.out_dir / "runs.csv", res.runs_csv);
        write_text(options.out_dir / "summary.csv", res.summary_csv);
    }
    return res;
}

} // namespace sbfr
