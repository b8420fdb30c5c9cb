#include "sbfr/records.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "sbfr/errors.hpp"

namespace sbfr {

using nlohmann::json;

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string ExperimentSetting::id() const {
    std::string s = "d" + std::to_string(d) + "-t" + format_double(theta) + "-" + std::string(to_string(shape)) +
                    "-dl" + format_double(delta) + "-g" + format_double(gamma) + "-" +
                    std::string(to_string(strategy)) + "-N" + std::to_string(N) + "-lam" + std::to_string(lambda) +
                    "-L" + format_double(L);
    return s;
}

void ExperimentSetting::validate() const {
    if (d < 1) throw InvalidArgument("d must be >= 1");
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in (0, 1]");
    if (!(delta >= 1.0)) throw InvalidArgument("delta must be >= 1");
    if (!(gamma >= 0.0 && gamma <= 180.0)) throw InvalidArgument("gamma must lie in [0, 180]");
    if (N < 1) throw InvalidArgument("N must be >= 1");
    if (lambda < 1) throw InvalidArgument("lambda must be >= 1");
    if (!(L > 0.0)) throw InvalidArgument("L must be > 0");
    if (repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
}

std::string_view to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::Infeasible: return "infeasible";
        case RunStatus::NoFailure: return "no-failure";
        case RunStatus::Error: return "error";
    }
    return "?";
}

RunStatus parse_run_status(std::string_view s) {
    if (s == "ok") return RunStatus::Ok;
    if (s == "infeasible") return RunStatus::Infeasible;
    if (s == "no-failure") return RunStatus::NoFailure;
    if (s == "error") return RunStatus::Error;
    throw InvalidArgument("unknown run status '" + std::string(s) + "'");
}

namespace {

json points_json(const std::vector<Point>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(p.coords);
    return a;
}

std::vector<Point> points_from(const json& a) {
    std::vector<Point> out;
    for (const auto& p : a) out.emplace_back(p.get<std::vector<double>>());
    return out;
}

VolumeMethod parse_volume_method(std::string_view s) {
    if (s == "exact-1d") return VolumeMethod::Exact1D;
    if (s == "exact-2d") return VolumeMethod::Exact2D;
    if (s == "monte-carlo") return VolumeMethod::MonteCarlo;
    throw InvalidArgument("unknown volume method '" + std::string(s) + "'");
}

} // namespace

json to_json(const RunRecord& r) {
    const auto& s = r.setting;
    const auto& c = r.config;
    json j;
    j["schema"] = "sbfr-run/1";
    j["setting"] = {{"id", s.id()},
                    {"d", s.d},
                    {"theta", s.theta},
                    {"shape", to_string(s.shape)},
                    {"delta", s.delta},
                    {"gamma", s.gamma},
                    {"strategy", to_string(s.strategy)},
                    {"N", s.N},
                    {"lambda", s.lambda},
                    {"L", s.L},
                    {"repetitions", s.repetitions},
                    {"base_seed", s.base_seed}};
    j["config"] = {{"k", c.dsb_candidates},
                   {"fscs_k", c.fscs_candidates},
                   {"orientation_policy", to_string(c.orientation_policy)},
                   {"alg1_mode", to_string(c.alg1_mode)},
                   {"probe_budget", c.probe_budget},
                   {"mc_samples", c.mc_samples},
                   {"first_failure_budget", c.first_failure_budget},
                   {"rotation_plane", {c.rotation_plane.first, c.rotation_plane.second}}};
    j["rep"] = r.rep;
    j["seed"] = r.seed;
    j["status"] = to_string(r.status);
    j["message"] = r.message;
    if (r.region) {
        const auto& g = *r.region;
        j["region"] = {{"shape", to_string(g.shape)},
                       {"theta", g.theta},
                       {"delta", g.delta},
                       {"gamma", g.gamma_degrees},
                       {"plane", {g.plane.first, g.plane.second}},
                       {"center", g.center.coords},
                       {"half_extents", g.half_extents}};
    } else {
        j["region"] = nullptr;
    }
    j["first_failure"] = r.first_failure ? json(r.first_failure->coords) : json(nullptr);
    j["first_failure_executions"] = r.first_failure_executions;
    j["source_inputs"] = points_json(r.source_inputs);
    j["boundary_inputs"] = points_json(r.boundary_inputs);
    j["probes"] = r.probes;
    j["iterations"] = r.iterations;
    j["rays"] = r.rays;
    j["degenerate_rays"] = r.degenerate_rays;
    j["budget_exhausted"] = r.budget_exhausted;
    j["pool_exhausted"] = r.pool_exhausted;
    j["wall_time_ms"] = r.wall_time_ms;
    j["measure"] = {{"s_afr", r.measure.s_afr},
                    {"s_rfr", r.measure.s_rfr},
                    {"s_ratio", r.measure.s_ratio},
                    {"stderr", r.measure.stderr_},
                    {"method", to_string(r.measure.method)},
                    {"degenerate", r.measure.degenerate},
                    {"seed", r.measure_seed}};
    j["afr_report"] = r.afr_report;
    return j;
}

RunRecord record_from_json(const json& j) {
    try {
        RunRecord r;
        const auto& s = j.at("setting");
        r.setting.d = s.at("d").get<std::size_t>();
        r.setting.theta = s.at("theta").get<double>();
        r.setting.shape = parse_region_shape(s.at("shape").get<std::string>());
        r.setting.delta = s.at("delta").get<double>();
        r.setting.gamma = s.at("gamma").get<double>();
        r.setting.strategy = parse_strategy(s.at("strategy").get<std::string>());
        r.setting.N = s.at("N").get<std::size_t>();
        r.setting.lambda = s.at("lambda").get<std::uint32_t>();
        r.setting.L = s.at("L").get<double>();
        r.setting.repetitions = s.at("repetitions").get<std::size_t>();
        r.setting.base_seed = s.at("base_seed").get<std::uint64_t>();

        const auto& c = j.at("config");
        r.config.dsb_candidates = c.at("k").get<std::size_t>();
        r.config.fscs_candidates = c.at("fscs_k").get<std::size_t>();
        r.config.orientation_policy = parse_orientation_policy(c.at("orientation_policy").get<std::string>());
        r.config.alg1_mode = parse_alg1_mode(c.at("alg1_mode").get<std::string>());
        r.config.probe_budget = c.at("probe_budget").get<std::uint64_t>();
        r.config.mc_samples = c.at("mc_samples").get<std::uint64_t>();
        r.config.first_failure_budget = c.at("first_failure_budget").get<std::uint64_t>();
        r.config.rotation_plane = {c.at("rotation_plane").at(0).get<std::size_t>(),
                                   c.at("rotation_plane").at(1).get<std::size_t>()};

        r.rep = j.at("rep").get<std::size_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.status = parse_run_status(j.at("status").get<std::string>());
        r.message = j.at("message").get<std::string>();
        if (!j.at("region").is_null()) {
            const auto& g = j.at("region");
            RegionSpec spec;
            spec.shape = parse_region_shape(g.at("shape").get<std::string>());
            spec.theta = g.at("theta").get<double>();
            spec.delta = g.at("delta").get<double>();
            spec.gamma_degrees = g.at("gamma").get<double>();
            spec.plane = {g.at("plane").at(0).get<std::size_t>(), g.at("plane").at(1).get<std::size_t>()};
            spec.center = Point(g.at("center").get<std::vector<double>>());
            spec.half_extents = g.at("half_extents").get<std::vector<double>>();
            r.region = std::move(spec);
        }
        if (!j.at("first_failure").is_null()) r.first_failure = Point(j.at("first_failure").get<std::vector<double>>());
        r.first_failure_executions = j.at("first_failure_executions").get<std::uint64_t>();
        r.source_inputs = points_from(j.at("source_inputs"));
        r.boundary_inputs = points_from(j.at("boundary_inputs"));
        r.probes = j.at("probes").get<std::uint64_t>();
        r.iterations = j.at("iterations").get<std::uint64_t>();
        r.rays = j.at("rays").get<std::uint64_t>();
        r.degenerate_rays = j.at("degenerate_rays").get<std::uint64_t>();
        r.budget_exhausted = j.at("budget_exhausted").get<bool>();
        r.pool_exhausted = j.at("pool_exhausted").get<bool>();
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        const auto& m = j.at("measure");
        r.measure.s_afr = m.at("s_afr").get<double>();
        r.measure.s_rfr = m.at("s_rfr").get<double>();
        r.measure.s_ratio = m.at("s_ratio").get<double>();
        r.measure.stderr_ = m.at("stderr").get<double>();
        r.measure.method = parse_volume_method(m.at("method").get<std::string>());
        r.measure.degenerate = m.at("degenerate").get<bool>();
        r.measure_seed = m.at("seed").get<std::uint64_t>();
        r.afr_report = j.value("afr_report", std::string{});
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed run record: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("malformed run record: ") + e.what());
    }
}

std::string csv_row(const RunRecord& r) {
    const auto& s = r.setting;
    std::string row;
    auto add = [&row](const std::string& v) {
        if (!row.empty()) row += ',';
        row += v;
    };
    add(s.id());
    add(std::to_string(r.rep));
    add(std::to_string(s.d));
    add(format_double(s.theta));
    add(std::string(to_string(s.shape)));
    add(format_double(s.delta));
    add(format_double(s.gamma));
    add(std::string(to_string(s.strategy)));
    add(std::to_string(s.N));
    add(std::to_string(s.lambda));
    add(format_double(s.L));
    add(std::string(to_string(r.config.alg1_mode)));
    add(std::string(to_string(r.config.orientation_policy)));
    add(format_double(r.measure.s_ratio));
    add(format_double(r.measure.s_afr));
    add(format_double(r.measure.s_rfr));
    add(format_double(r.measure.stderr_));
    add(std::to_string(r.probes));
    add(std::to_string(r.iterations));
    add(format_double(r.wall_time_ms));
    add(std::to_string(r.seed));
    add(std::string(to_string(r.status)));
    return row;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ConfigError("CSV has no column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!l.empty() && l.back() == ',') cells.emplace_back();
        return cells;
    };
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            t.header = split(line);
            first = false;
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.header.size()) {
            throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::vector<CellSummary> summarize(const CsvTable& runs) {
    static constexpr std::string_view kKey[] = {"d", "theta", "shape", "delta", "gamma", "strategy", "N", "lambda", "L"};
    const std::size_t id_col = runs.column("setting_id");
    const std::size_t status_col = runs.column("status");
    const std::size_t ratio_col = runs.column("s_ratio");
    const std::size_t time_col = runs.column("wall_time_ms");
    const std::size_t iter_col = runs.column("iterations");
    const std::size_t probe_col = runs.column("probes");
    std::vector<std::size_t> key_cols;
    for (auto k : kKey) key_cols.push_back(runs.column(k));

    std::vector<CellSummary> cells;
    std::map<std::string, std::size_t> index;
    for (const auto& row : runs.rows) {
        const std::string& id = row[id_col];
        auto [it, fresh] = index.emplace(id, cells.size());
        if (fresh) {
            CellSummary c;
            c.setting_id = id;
            for (auto k : key_cols) c.key.push_back(row[k]);
            cells.push_back(std::move(c));
        }
        CellSummary& c = cells[it->second];
        ++c.runs;
        if (row[status_col] != "ok") continue;
        ++c.ok_runs;
        c.mean_s_ratio += std::stod(row[ratio_col]);
        c.mean_wall_time_ms += std::stod(row[time_col]);
        c.mean_iterations += std::stod(row[iter_col]);
        c.mean_probes += std::stod(row[probe_col]);
    }
    for (auto& c : cells) {
        if (c.ok_runs == 0) continue;
        const double n = static_cast<double>(c.ok_runs);
        c.mean_s_ratio /= n;
        c.mean_wall_time_ms /= n;
        c.mean_iterations /= n;
        c.mean_probes /= n;
    }
    return cells;
}

std::string summary_csv(const std::vector<CellSummary>& cells) {
    std::string out(kSummaryHeader);
    out += '\n';
    for (const auto& c : cells) {
        out += c.setting_id;
        for (const auto& k : c.key) out += "," + k;
        out += "," + std::to_string(c.runs) + "," + std::to_string(c.ok_runs) + "," + format_double(c.mean_s_ratio) +
               "," + format_double(c.mean_wall_time_ms) + "," + format_double(c.mean_iterations) + "," +
               format_double(c.mean_probes) + "\n";
    }
    return out;
}

} // namespace sbfr
