#include "sbfr/search.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "sbfr/errors.hpp"

namespace sbfr {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::FSB1: return "FSB1";
        case Strategy::FSB2: return "FSB2";
        case Strategy::DSB: return "DSB";
    }
    return "?";
}

std::string_view to_string(OrientationPolicy p) {
    return p == OrientationPolicy::AllPerSource ? "all-per-source" : "one-per-source";
}

std::string_view to_string(Alg1Mode m) { return m == Alg1Mode::Bracketing ? "bracketing" : "literal"; }

Strategy parse_strategy(std::string_view s) {
    if (s == "FSB1" || s == "FSB-1" || s == "fsb1" || s == "fsb-1") return Strategy::FSB1;
    if (s == "FSB2" || s == "FSB-2" || s == "fsb2" || s == "fsb-2") return Strategy::FSB2;
    if (s == "DSB" || s == "dsb") return Strategy::DSB;
    throw InvalidArgument("unknown strategy '" + std::string(s) + "'");
}

OrientationPolicy parse_orientation_policy(std::string_view s) {
    if (s == "all-per-source" || s == "all") return OrientationPolicy::AllPerSource;
    if (s == "one-per-source" || s == "one") return OrientationPolicy::OnePerSource;
    throw InvalidArgument("unknown orientation policy '" + std::string(s) + "'");
}

Alg1Mode parse_alg1_mode(std::string_view s) {
    if (s == "bracketing") return Alg1Mode::Bracketing;
    if (s == "literal") return Alg1Mode::Literal;
    throw InvalidArgument("unknown search mode '" + std::string(s) + "'");
}

void SearchConfig::validate() const {
    if (!(extension_length > 0.0) || !std::isfinite(extension_length)) throw InvalidArgument("L must be > 0");
    if (miss_threshold < 1) throw InvalidArgument("lambda must be >= 1");
    if (target_count < 1) throw InvalidArgument("N must be >= 1");
    if (dsb_candidates < 1) throw InvalidArgument("k must be >= 1");
    if (fscs_candidates < 1) throw InvalidArgument("fscs_k must be >= 1");
    if (probe_budget < target_count) throw InvalidArgument("probe budget must be >= N");
}

namespace {

// One step along a ray: out-of-domain points are misses and cost no oracle
// call. Returns nullopt when an oracle call was needed but the budget is spent.
class RayProber {
public:
    RayProber(Oracle& oracle, const InputDomain& domain, ProbeBudget& budget, std::vector<ProbeStep>* trace,
              RaySearchResult& result)
        : oracle_(oracle), domain_(domain), budget_(budget), trace_(trace), result_(result) {}

    std::optional<bool> fails(const Point& p) {
        const bool inside = domain_.contains(p);
        if (inside && budget_.exhausted()) {
            result_.budget_exhausted = true;
            return std::nullopt;
        }
        ++result_.iterations;
        Verdict v = Verdict::Pass;
        if (inside) {
            --budget_.remaining;
            ++result_.probes;
            v = oracle_.test(p);
        }
        if (trace_ != nullptr) trace_->push_back(ProbeStep{p, inside, v});
        return v == Verdict::Fail;
    }

private:
    Oracle& oracle_;
    const InputDomain& domain_;
    ProbeBudget& budget_;
    std::vector<ProbeStep>* trace_;
    RaySearchResult& result_;
};

RaySearchResult search_bracketing(const Point& source, const Orientation& dir, double step, std::uint32_t lambda,
                                  RayProber& prober, RaySearchResult& out) {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    std::uint32_t streak = 0;

    // March outward while the probes keep failing.
    for (;;) {
        const double t = lo + step;
        if (!(t > lo)) break;
        const auto hit = prober.fails(along_ray(source, dir, t));
        if (!hit) break;
        if (*hit) {
            lo = t;
            continue;
        }
        hi = t;
        streak = 1;
        break;
    }

    // Bisect [lo, hi] until lambda consecutive misses or the bracket collapses.
    while (std::isfinite(hi) && streak < lambda && !out.budget_exhausted) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        const Point p = along_ray(source, dir, mid);
        if (p == along_ray(source, dir, lo) || p == along_ray(source, dir, hi)) break;
        const auto hit = prober.fails(p);
        if (!hit) break;
        if (*hit) {
            lo = mid;
            streak = 0;
        } else {
            hi = mid;
            ++streak;
        }
    }

    out.degenerate = !(lo > 0.0);
    out.boundary = out.degenerate ? source : along_ray(source, dir, lo);
    return out;
}

RaySearchResult search_literal(const Point& source, const Orientation& start_dir, double step,
                               std::uint32_t lambda, RayProber& prober, RaySearchResult& out) {
    Point tc = source;
    Orientation dir = start_dir;
    double len = step;
    bool retracted = false;
    std::optional<Point> tb;
    std::uint32_t streak = 0;

    while (streak < lambda && out.iterations < kLiteralStepCap) {
        Point next = along_ray(tc, dir, len);
        if (next == tc) break;
        tc = std::move(next);
        const auto hit = prober.fails(tc);
        if (!hit) break;
        if (!*hit) {
            len /= 2.0;
            dir = -dir;
            retracted = true;
            ++streak;
        } else {
            tb = tc;
            streak = 0;
            if (retracted) {
                len /= 2.0;
                dir = -dir;
                retracted = false;
            }
        }
    }

    out.degenerate = !tb.has_value();
    out.boundary = tb.value_or(source);
    return out;
}

void absorb(BoundaryHarvest& h, const RaySearchResult& r) {
    h.iterations += r.iterations;
    h.probes += r.probes;
    ++h.rays;
    if (r.degenerate) ++h.degenerate_rays;
    if (r.budget_exhausted) h.budget_exhausted = true;
}

} // namespace

RaySearchResult search_boundary(const Point& source, const Orientation& orientation, double extension_length,
                                std::uint32_t miss_threshold, Oracle& oracle, const InputDomain& domain,
                                Alg1Mode mode, ProbeBudget& budget, std::vector<ProbeStep>* trace) {
    if (source.dim() != domain.dim() || orientation.dim() != domain.dim()) {
        throw InvalidArgument("source, orientation and domain must share one dimension");
    }
    if (!(extension_length > 0.0)) throw InvalidArgument("L must be > 0");
    if (miss_threshold < 1) throw InvalidArgument("lambda must be >= 1");

    RaySearchResult out;
    RayProber prober(oracle, domain, budget, trace, out);
    if (mode == Alg1Mode::Bracketing) return search_bracketing(source, orientation, extension_length, miss_threshold, prober, out);
    return search_literal(source, orientation, extension_length, miss_threshold, prober, out);
}

std::size_t select_farthest_candidate(std::span<const Point> candidates, std::span<const Point> executed) {
    if (candidates.empty()) throw InvalidArgument("no candidates");
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Point& e : executed) nearest = std::min(nearest, squared_distance(candidates[c].span(), e.span()));
        if (nearest > best_score) {
            best_score = nearest;
            best = c;
        }
    }
    return best;
}

FirstFailure find_first_failure(Oracle& oracle, const InputDomain& domain, std::size_t fscs_candidates, Rng& rng,
                                std::uint64_t budget) {
    if (budget < 1) throw InvalidArgument("first-failure budget must be >= 1");
    if (fscs_candidates < 1) throw InvalidArgument("fscs_k must be >= 1");
    std::vector<Point> executed;
    std::vector<Point> candidates(fscs_candidates);
    for (std::uint64_t n = 0; n < budget; ++n) {
        Point next;
        if (executed.empty()) {
            next = uniform_point(domain, rng);
        } else {
            for (auto& c : candidates) c = uniform_point(domain, rng);
            next = candidates[select_farthest_candidate(candidates, executed)];
        }
        if (oracle.test(next) == Verdict::Fail) return FirstFailure{std::move(next), n + 1};
        executed.push_back(std::move(next));
    }
    throw NoFailureFound("no failure-causing input within " + std::to_string(budget) + " executions");
}

std::size_t select_most_diverse(std::span<const Orientation> candidates, std::span<const Orientation> selected) {
    if (candidates.empty() || selected.empty()) throw InvalidArgument("candidates and selected must be non-empty");
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& s : selected) nearest = std::min(nearest, cosine_distance(candidates[c].span(), s.span()));
        if (nearest > best_score) {
            best_score = nearest;
            best = c;
        }
    }
    return best;
}

Orientation next_dsb_orientation(std::span<const Orientation> selected, std::size_t k, std::size_t d, Rng& rng) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (selected.empty()) return random_first_orthant_orientation(d, rng);
    std::vector<Orientation> candidates;
    candidates.reserve(k);
    for (std::size_t i = 0; i < k; ++i) candidates.push_back(random_first_orthant_orientation(d, rng));
    return candidates[select_most_diverse(candidates, selected)];
}

BoundaryHarvest run_fsb(int variant, std::span<const Point> initial_sources, const SearchConfig& config,
                        Oracle& oracle, const InputDomain& domain, Rng& rng) {
    config.validate();
    if (variant != 1 && variant != 2) throw InvalidArgument("FSB variant must be 1 or 2");
    if (initial_sources.empty()) throw InvalidArgument("FSB needs at least one source input");

    const std::size_t d = domain.dim();
    const auto orientations = variant == 1 ? axis_orientations(d) : axis_and_diagonal_orientations(d);

    BoundaryHarvest h;
    h.source_inputs.assign(initial_sources.begin(), initial_sources.end());
    std::vector<Point> pool = h.source_inputs;
    // Axis rays from different sources can bisect to the very same double;
    // such repeats are neither harvested nor used as sources again.
    std::set<std::vector<double>> seen;
    for (const auto& p : pool) seen.insert(p.coords);
    ProbeBudget budget{config.probe_budget};

    while (h.boundary_inputs.size() < config.target_count && !h.budget_exhausted) {
        if (pool.empty()) {
            h.pool_exhausted = true;
            break;
        }
        const std::size_t pick = uniform_index(rng, pool.size());
        const Point source = pool[pick];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        h.retired_sources.push_back(source);

        auto extend = [&](const Orientation& dir) {
            const auto r = search_boundary(source, dir, config.extension_length, config.miss_threshold, oracle,
                                           domain, config.alg1_mode, budget);
            absorb(h, r);
            if (!r.degenerate && seen.insert(r.boundary.coords).second) {
                h.boundary_inputs.push_back(r.boundary);
                pool.push_back(r.boundary);
            }
        };

        if (config.orientation_policy == OrientationPolicy::OnePerSource) {
            extend(orientations[uniform_index(rng, orientations.size())]);
        } else {
            for (const auto& dir : orientations) {
                if (h.boundary_inputs.size() >= config.target_count || h.budget_exhausted) break;
                extend(dir);
            }
        }
    }
    return h;
}

BoundaryHarvest run_dsb(const Point& initial_source, const SearchConfig& config, Oracle& oracle,
                        const InputDomain& domain, Rng& rng) {
    config.validate();
    const std::size_t d = domain.dim();

    BoundaryHarvest h;
    h.source_inputs.push_back(initial_source);
    ProbeBudget budget{config.probe_budget};

    // Thin regions can make every ray degenerate without spending oracle
    // calls (all probes out of domain); stop after this many empty rounds.
    constexpr int kMaxIdleRounds = 1000;
    int idle_rounds = 0;

    while (h.boundary_inputs.size() < config.target_count && !h.budget_exhausted) {
        Orientation base = next_dsb_orientation(h.selected_orientations, config.dsb_candidates, d, rng);
        h.selected_orientations.push_back(base);
        const std::size_t before = h.boundary_inputs.size();
        for (const auto& dir : mirror_to_orthants(base)) {
            if (h.boundary_inputs.size() >= config.target_count || h.budget_exhausted) break;
            const auto r = search_boundary(initial_source, dir, config.extension_length, config.miss_threshold,
                                           oracle, domain, config.alg1_mode, budget);
            absorb(h, r);
            if (!r.degenerate) h.boundary_inputs.push_back(r.boundary);
        }
        if (h.boundary_inputs.size() > before) {
            idle_rounds = 0;
        } else if (++idle_rounds >= kMaxIdleRounds) {
            h.pool_exhausted = true;
            break;
        }
    }
    return h;
}

BoundaryHarvest run_strategy(std::span<const Point> initial_sources, const SearchConfig& config, Oracle& oracle,
                             const InputDomain& domain, Rng& rng) {
    if (initial_sources.empty()) throw InvalidArgument("at least one failure-causing source input is required");
    switch (config.strategy) {
        case Strategy::FSB1: return run_fsb(1, initial_sources, config, oracle, domain, rng);
        case Strategy::FSB2: return run_fsb(2, initial_sources, config, oracle, domain, rng);
        case Strategy::DSB: break;
    }
    BoundaryHarvest h = run_dsb(initial_sources.front(), config, oracle, domain, rng);
    h.source_inputs.assign(initial_sources.begin(), initial_sources.end());
    return h;
}

} // namespace sbfr
