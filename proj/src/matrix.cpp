#include "sbfr/matrix.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sbfr/errors.hpp"

namespace sbfr {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <class T>
T parse_number(const std::string& s) {
    T v{};
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) throw InvalidArgument("bad number '" + s + "'");
    return v;
}

template <class T, class F>
std::vector<T> parse_all(const std::vector<std::string>& items, F f) {
    std::vector<T> out;
    for (const auto& i : items) out.push_back(f(i));
    return out;
}

} // namespace

std::vector<ExperimentSetting> ExperimentMatrix::cells() const {
    std::vector<ExperimentSetting> out;
    for (auto vd : d)
        for (auto vt : theta)
            for (auto vs : shape)
                for (auto vdl : delta)
                    for (auto vg : gamma)
                        for (auto vst : strategy)
                            for (auto vn : N)
                                for (auto vl : lambda)
                                    for (auto vL : L) {
                                        ExperimentSetting s;
                                        s.d = vd;
                                        s.theta = vt;
                                        s.shape = vs;
                                        s.delta = vdl;
                                        s.gamma = vg;
                                        s.strategy = vst;
                                        s.N = vn;
                                        s.lambda = vl;
                                        s.L = vL;
                                        s.repetitions = repetitions;
                                        s.base_seed = base_seed;
                                        out.push_back(s);
                                    }
    return out;
}

ExperimentMatrix parse_matrix(std::string_view text) {
    ExperimentMatrix m;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const auto items = split_list(std::string_view(line).substr(eq + 1));
        try {
            auto scalar = [&]() -> const std::string& {
                if (items.size() != 1) throw InvalidArgument("'" + key + "' takes exactly one value");
                return items.front();
            };
            if (key == "d") m.d = parse_all<std::size_t>(items, parse_number<std::size_t>);
            else if (key == "theta") m.theta = parse_all<double>(items, parse_number<double>);
            else if (key == "shape") m.shape = parse_all<RegionShape>(items, [](const std::string& s) { return parse_region_shape(s); });
            else if (key == "delta") m.delta = parse_all<double>(items, parse_number<double>);
            else if (key == "gamma") m.gamma = parse_all<double>(items, parse_number<double>);
            else if (key == "strategy") m.strategy = parse_all<Strategy>(items, [](const std::string& s) { return parse_strategy(s); });
            else if (key == "N") m.N = parse_all<std::size_t>(items, parse_number<std::size_t>);
            else if (key == "lambda") m.lambda = parse_all<std::uint32_t>(items, parse_number<std::uint32_t>);
            else if (key == "L") m.L = parse_all<double>(items, parse_number<double>);
            else if (key == "repetitions") m.repetitions = parse_number<std::size_t>(scalar());
            else if (key == "base_seed") m.base_seed = parse_number<std::uint64_t>(scalar());
            else if (key == "k") m.config.dsb_candidates = parse_number<std::size_t>(scalar());
            else if (key == "fscs_k") m.config.fscs_candidates = parse_number<std::size_t>(scalar());
            else if (key == "alg1_mode") m.config.alg1_mode = parse_alg1_mode(scalar());
            else if (key == "orientation_policy") m.config.orientation_policy = parse_orientation_policy(scalar());
            else if (key == "probe_budget") m.config.probe_budget = parse_number<std::uint64_t>(scalar());
            else if (key == "mc_samples") m.config.mc_samples = parse_number<std::uint64_t>(scalar());
            else if (key == "first_failure_budget") m.config.first_failure_budget = parse_number<std::uint64_t>(scalar());
            else throw InvalidArgument("unknown key '" + key + "'");
        } catch (const InvalidArgument& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    for (const auto& s : m.cells()) {
        try {
            s.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError("cell " + s.id() + ": " + e.what());
        }
    }
    return m;
}

ExperimentMatrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read matrix file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_matrix(ss.str());
}

} // namespace sbfr
