// sbfr: failure-region search simulator.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sbfr/errors.hpp"
#include "sbfr/external_oracle.hpp"
#include "sbfr/harness.hpp"
#include "sbfr/matrix.hpp"
#include "sbfr/render.hpp"

using namespace sbfr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 2;
constexpr int kExitConfig = 3;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + out + "'");
    f << text;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ConfigError("bad number '" + item + "' in '" + s + "'");
        }
    }
    return v;
}

struct SimulateArgs {
    std::size_t d = 2;
    double theta = 0.001;
    std::string shape = "rectangle";
    double delta = 1.0;
    double gamma = 0.0;
    std::string strategy = "DSB";
    std::size_t N = 100;
    std::uint32_t lambda = 20;
    double L = 1.0;
    std::size_t reps = 1;
    std::uint64_t seed = 20190801;
    std::string mode = "bracketing";
    std::string policy = "all-per-source";
    std::size_t k = 10;
    std::size_t fscs_k = 10;
    std::uint64_t mc_samples = kDefaultMcSamples;
    std::uint64_t probe_budget = 1'000'000;
    int jobs = 1;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    ExperimentSetting s;
    s.d = a.d;
    s.theta = a.theta;
    s.shape = parse_region_shape(a.shape);
    s.delta = a.delta;
    s.gamma = a.gamma;
    s.strategy = parse_strategy(a.strategy);
    s.N = a.N;
    s.lambda = a.lambda;
    s.L = a.L;
    s.repetitions = a.reps;
    s.base_seed = a.seed;
    s.validate();
    GlobalConfig g;
    g.alg1_mode = parse_alg1_mode(a.mode);
    g.orientation_policy = parse_orientation_policy(a.policy);
    g.dsb_candidates = a.k;
    g.fscs_candidates = a.fscs_k;
    g.mc_samples = a.mc_samples;
    g.probe_budget = a.probe_budget;
    std::string why;
    if (!setting_feasible(s, g, &why)) throw ConfigError("infeasible setting " + s.id() + ": " + why);

    const auto records = run_setting(s, g, a.jobs > 1 ? Execution::Parallel : Execution::Serial);
    nlohmann::json out;
    bool all_ok = true;
    for (const auto& r : records) {
        all_ok = all_ok && r.status == RunStatus::Ok;
        if (r.status != RunStatus::Ok) std::cerr << "rep " << r.rep << ": " << to_string(r.status) << ": " << r.message << "\n";
    }
    if (records.size() == 1) {
        out = to_json(records.front());
    } else {
        out = nlohmann::json::array();
        for (const auto& r : records) out.push_back(to_json(r));
    }
    emit(a.out, out.dump(1) + "\n");
    return all_ok ? kExitOk : kExitPartial;
}

struct SweepArgs {
    std::string config;
    std::string out;
    int jobs = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::optional<std::string> mode;
    bool no_records = false;
};

int cmd_sweep(const SweepArgs& a) {
    auto m = load_matrix(a.config);
    if (a.seed) m.base_seed = *a.seed;
    if (a.reps) {
        if (*a.reps < 1) throw ConfigError("--reps must be >= 1");
        m.repetitions = *a.reps;
    }
    if (a.mode) m.config.alg1_mode = parse_alg1_mode(*a.mode);
    SweepOptions opt;
    opt.jobs = a.jobs;
    opt.out_dir = a.out;
    opt.write_records = !a.no_records;
    const auto res = sweep(m.cells(), m.config, opt);
    std::cerr << "cells " << res.cells << ", skipped " << res.skipped.size() << ", runs " << res.records.size()
              << ", ok " << res.ok << ", failed " << res.failed << "\n";
    return res.failed == 0 ? kExitOk : kExitPartial;
}

int cmd_summarize(const std::string& csv_path, const std::string& out) {
    emit(out, summary_csv(summarize(parse_csv(read_file(csv_path)))));
    return kExitOk;
}

int cmd_render(const std::string& record_path, const std::string& axes, const std::string& out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(record_path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad record JSON: ") + e.what());
    }
    if (j.is_array()) {
        if (j.empty()) throw ConfigError("record file holds an empty array");
        j = j.front();
    }
    const auto rec = record_from_json(j);
    const auto ax = parse_list(axes);
    if (ax.size() != 2) throw ConfigError("--axes takes two 1-based axis numbers, e.g. 1,2");
    for (double v : ax) {
        if (v < 1 || v != std::floor(v)) throw ConfigError("--axes takes 1-based axis numbers");
    }
    try {
        emit(out, render_svg(rec, static_cast<std::size_t>(ax[0]) - 1, static_cast<std::size_t>(ax[1]) - 1));
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return kExitOk;
}

struct ProbeArgs {
    std::string command;
    std::string source;
    std::string lower;
    std::string upper;
    std::size_t d = 0;
    std::string strategy = "DSB";
    std::size_t N = 100;
    std::uint32_t lambda = 20;
    double L = 0.0;  // 0: longest domain edge
    std::size_t k = 10;
    std::size_t fscs_k = 10;
    std::uint64_t probe_budget = 100'000;
    std::uint64_t first_failure_budget = 10'000;
    std::uint64_t mc_samples = kDefaultMcSamples;
    long timeout_ms = 10'000;
    std::string convention = "either";
    std::string mode = "bracketing";
    std::string policy = "all-per-source";
    std::uint64_t seed = 20190801;
    std::string out;
};

int cmd_probe_external(const ProbeArgs& a) {
    std::optional<Point> source;
    std::size_t d = a.d;
    if (!a.source.empty()) {
        source = Point(parse_list(a.source));
        if (d != 0 && d != source->dim()) throw ConfigError("--source dimension differs from --dim");
        d = source->dim();
    }
    std::vector<double> lo = a.lower.empty() ? std::vector<double>() : parse_list(a.lower);
    std::vector<double> hi = a.upper.empty() ? std::vector<double>() : parse_list(a.upper);
    if (d == 0) d = !lo.empty() ? lo.size() : hi.size();
    if (d == 0) throw ConfigError("give --source, --dim, or domain bounds");
    if (lo.empty()) lo.assign(d, 0.0);
    if (hi.empty()) hi.assign(d, 1.0);
    if (lo.size() != d || hi.size() != d) throw ConfigError("domain bounds must have " + std::to_string(d) + " entries");
    const InputDomain domain{Point(lo), Point(hi)};
    if (source && !domain.contains(*source)) throw ConfigError("--source lies outside the domain");

    ExternalProgramOracle oracle(a.command, d, parse_fail_convention(a.convention),
                                 std::chrono::milliseconds(a.timeout_ms));
    Rng rng(a.seed);
    std::uint64_t first_execs = 0;
    if (source) {
        if (oracle.test(*source) != Verdict::Fail) throw ConfigError("--source is not failure-causing");
        first_execs = 1;
    } else {
        try {
            const auto ff = find_first_failure(oracle, domain, a.fscs_k, rng, a.first_failure_budget);
            source = ff.input;
            first_execs = ff.executions;
        } catch (const NoFailureFound& e) {
            std::cerr << e.what() << "\n";
            return kExitPartial;
        }
    }

    SearchConfig sc;
    sc.strategy = parse_strategy(a.strategy);
    sc.extension_length = a.L > 0 ? a.L : domain.max_edge();
    sc.miss_threshold = a.lambda;
    sc.target_count = a.N;
    sc.dsb_candidates = a.k;
    sc.fscs_candidates = a.fscs_k;
    sc.orientation_policy = parse_orientation_policy(a.policy);
    sc.alg1_mode = parse_alg1_mode(a.mode);
    sc.probe_budget = a.probe_budget;
    sc.seed = a.seed;
    sc.validate();

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Point> sources{*source};
    const auto h = run_strategy(sources, sc, oracle, domain, rng);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::vector<Point> afr = h.boundary_inputs;
    afr.insert(afr.end(), h.source_inputs.begin(), h.source_inputs.end());
    const auto vol = hull_volume(afr, d, a.mc_samples, mix_seed({a.seed, 0x6d63ULL}));

    nlohmann::json j;
    j["command"] = a.command;
    j["domain"] = {{"lower", lo}, {"upper", hi}};
    j["strategy"] = to_string(sc.strategy);
    j["alg1_mode"] = to_string(sc.alg1_mode);
    j["source"] = source->coords;
    j["first_failure_executions"] = first_execs;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : h.boundary_inputs) pts.push_back(p.coords);
    j["boundary_inputs"] = pts;
    j["probes"] = h.probes;
    j["iterations"] = h.iterations;
    j["timeouts"] = oracle.timeouts();
    j["budget_exhausted"] = h.budget_exhausted;
    j["pool_exhausted"] = h.pool_exhausted;
    j["wall_time_ms"] = ms;
    j["afr_volume"] = vol.volume;
    j["afr_volume_stderr"] = vol.stderr_;
    j["afr_volume_method"] = to_string(vol.method);
    j["afr_report"] = inequality_report(afr);
    emit(a.out, j.dump(1) + "\n");
    return h.boundary_inputs.size() < a.N ? kExitPartial : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Failure-region search simulator"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Run one setting and print its record(s) as JSON");
    s->add_option("--dim,-d", sim.d, "Dimension");
    s->add_option("--theta", sim.theta, "Failure rate");
    s->add_option("--shape", sim.shape, "rectangle or ellipse");
    s->add_option("--delta", sim.delta, "Compactness ratio");
    s->add_option("--gamma", sim.gamma, "Rotation in degrees");
    s->add_option("--strategy", sim.strategy, "FSB-1, FSB-2 or DSB");
    s->add_option("--N,-N", sim.N, "Boundary inputs to harvest");
    s->add_option("--lambda", sim.lambda, "Consecutive-miss threshold");
    s->add_option("--L,-L", sim.L, "Initial extension length");
    s->add_option("--reps", sim.reps, "Repetitions");
    s->add_option("--seed", sim.seed, "Base seed");
    s->add_option("--mode", sim.mode, "bracketing or literal");
    s->add_option("--policy", sim.policy, "all-per-source or one-per-source");
    s->add_option("--k", sim.k, "DSB candidate count");
    s->add_option("--fscs-k", sim.fscs_k, "First-failure candidate count");
    s->add_option("--mc-samples", sim.mc_samples, "Monte-Carlo samples for d >= 3");
    s->add_option("--probe-budget", sim.probe_budget, "Oracle calls allowed per run");
    s->add_option("--jobs", sim.jobs, "Threads for the volume estimate");
    s->add_option("--out", sim.out, "Output file (default stdout)");

    SweepArgs sw;
    auto* w = app.add_subcommand("sweep", "Run a settings matrix and write runs.csv, summary.csv and records/");
    w->add_option("--config,config", sw.config, "Matrix file")->required();
    w->add_option("--out", sw.out, "Output directory")->required();
    w->add_option("--jobs", sw.jobs, "Concurrent runs");
    w->add_option("--seed", sw.seed, "Override base_seed");
    w->add_option("--reps", sw.reps, "Override repetitions");
    w->add_option("--mode", sw.mode, "Override alg1_mode");
    w->add_flag("--no-records", sw.no_records, "Skip the per-run JSON files");

    std::string sum_in, sum_out;
    auto* m = app.add_subcommand("summarize", "Per-cell means of a runs CSV");
    m->add_option("runs_csv", sum_in, "runs.csv")->required();
    m->add_option("--out", sum_out, "Output file (default stdout)");

    std::string rec_in, rec_axes = "1,2", rec_out;
    auto* r = app.add_subcommand("render", "Draw a JSON run record as SVG");
    r->add_option("record", rec_in, "Record JSON")->required();
    r->add_option("--axes", rec_axes, "Two 1-based axes to project on");
    r->add_option("--out", rec_out, "Output file (default stdout)");

    ProbeArgs pa;
    auto* p = app.add_subcommand("probe-external", "Search the failure region of an external program");
    p->add_option("--command", pa.command, "Command template with {x1} ... {xd}")->required();
    p->add_option("--source", pa.source, "Failure-causing input, comma separated");
    p->add_option("--dim", pa.d, "Dimension when no source is given");
    p->add_option("--lower", pa.lower, "Domain lower bounds (default 0)");
    p->add_option("--upper", pa.upper, "Domain upper bounds (default 1)");
    p->add_option("--strategy", pa.strategy, "FSB-1, FSB-2 or DSB");
    p->add_option("--N,-N", pa.N, "Boundary inputs to harvest");
    p->add_option("--lambda", pa.lambda, "Consecutive-miss threshold");
    p->add_option("--L,-L", pa.L, "Initial extension length (default longest domain edge)");
    p->add_option("--k", pa.k, "DSB candidate count");
    p->add_option("--fscs-k", pa.fscs_k, "First-failure candidate count");
    p->add_option("--probe-budget", pa.probe_budget, "Oracle calls allowed");
    p->add_option("--first-failure-budget", pa.first_failure_budget, "Executions allowed to find a failure");
    p->add_option("--mc-samples", pa.mc_samples, "Monte-Carlo samples for d >= 3");
    p->add_option("--timeout-ms", pa.timeout_ms, "Per-run timeout; a timed-out run counts as Pass");
    p->add_option("--convention", pa.convention, "exit-code, stdout or either");
    p->add_option("--mode", pa.mode, "bracketing or literal");
    p->add_option("--policy", pa.policy, "all-per-source or one-per-source");
    p->add_option("--seed", pa.seed, "Seed");
    p->add_option("--out", pa.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*s) return cmd_simulate(sim);
        if (*w) return cmd_sweep(sw);
        if (*m) return cmd_summarize(sum_in, sum_out);
        if (*r) return cmd_render(rec_in, rec_axes, rec_out);
        if (*p) return cmd_probe_external(pa);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const OracleUnavailable& e) {
        std::cerr << "oracle unavailable: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitConfig;
}
