#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sbfr/geometry.hpp"
#include "sbfr/oracles.hpp"
#include "sbfr/rng.hpp"

namespace sbfr {

enum class Strategy { FSB1, FSB2, DSB };

/// all-per-source: a retired source is extended along its whole orientation
/// set. one-per-source: along a single uniformly chosen orientation.
enum class OrientationPolicy { AllPerSource, OnePerSource };

/// bracketing: march out in steps of L, then bisect [last hit, first miss].
/// literal: the printed procedure, which flips the direction on every miss.
enum class Alg1Mode { Bracketing, Literal };

std::string_view to_string(Strategy s);
std::string_view to_string(OrientationPolicy p);
std::string_view to_string(Alg1Mode m);
Strategy parse_strategy(std::string_view s);
OrientationPolicy parse_orientation_policy(std::string_view s);
Alg1Mode parse_alg1_mode(std::string_view s);

struct SearchConfig {
    Strategy strategy = Strategy::DSB;
    double extension_length = 1.0;   // L
    std::uint32_t miss_threshold = 20;  // lambda
    std::size_t target_count = 100;  // N
    std::size_t dsb_candidates = 10;  // k
    std::size_t fscs_candidates = 10;
    OrientationPolicy orientation_policy = OrientationPolicy::AllPerSource;
    Alg1Mode alg1_mode = Alg1Mode::Bracketing;
    std::uint64_t probe_budget = 1'000'000;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument on out-of-range values.
    void validate() const;
};

/// Remaining oracle calls for one run.
struct ProbeBudget {
    std::uint64_t remaining = 0;
    bool exhausted() const { return remaining == 0; }
};

/// One Algorithm-1 step, for golden-trace tests.
struct ProbeStep {
    Point point;
    bool in_domain = false;
    Verdict verdict = Verdict::Pass;  // Pass for out-of-domain steps
};

struct RaySearchResult {
    Point boundary;           // deepest failure-causing point on the ray
    bool degenerate = false;  // no Fail besides the source; boundary == source
    std::uint64_t probes = 0;      // oracle calls
    std::uint64_t iterations = 0;  // steps, including out-of-domain ones
    bool budget_exhausted = false;
};

/// Upper bound on steps of a literal-mode ray. The printed procedure can
/// sit on a fixed point once L underflows relative to the coordinates.
inline constexpr std::uint64_t kLiteralStepCap = 4096;

RaySearchResult search_boundary(const Point& source, const Orientation& orientation, double extension_length,
                                std::uint32_t miss_threshold, Oracle& oracle, const InputDomain& domain,
                                Alg1Mode mode, ProbeBudget& budget, std::vector<ProbeStep>* trace = nullptr);

struct FirstFailure {
    Point input;
    std::uint64_t executions = 0;
};

/// Index of the candidate with the largest minimum distance to `executed`
/// (lowest index on ties).
std::size_t select_farthest_candidate(std::span<const Point> candidates, std::span<const Point> executed);

/// FSCS-ART until the first Fail. Throws NoFailureFound after `budget` runs.
FirstFailure find_first_failure(Oracle& oracle, const InputDomain& domain, std::size_t fscs_candidates, Rng& rng,
                                std::uint64_t budget);

struct BoundaryHarvest {
    std::vector<Point> source_inputs;
    std::vector<Point> boundary_inputs;
    std::vector<Point> retired_sources;  // ray origins in retirement order (FSB)
    std::vector<Orientation> selected_orientations;  // first-orthant picks (DSB)
    std::uint64_t iterations = 0;
    std::uint64_t probes = 0;
    std::uint64_t rays = 0;
    std::uint64_t degenerate_rays = 0;
    bool budget_exhausted = false;
    bool pool_exhausted = false;
};

/// Index of the candidate maximizing the minimum cosine distance to
/// `selected` (lowest index on ties). `selected` must be non-empty.
std::size_t select_most_diverse(std::span<const Orientation> candidates, std::span<const Orientation> selected);

/// Next first-orthant DSB orientation: random when nothing is selected yet,
/// otherwise the most diverse of k random first-orthant candidates.
Orientation next_dsb_orientation(std::span<const Orientation> selected, std::size_t k, std::size_t d, Rng& rng);

/// FSB-1 (variant 1) or FSB-2 (variant 2).
BoundaryHarvest run_fsb(int variant, std::span<const Point> initial_sources, const SearchConfig& config,
                        Oracle& oracle, const InputDomain& domain, Rng& rng);

/// DSB from a fixed source.
BoundaryHarvest run_dsb(const Point& initial_source, const SearchConfig& config, Oracle& oracle,
                        const InputDomain& domain, Rng& rng);

/// Dispatches on config.strategy. DSB uses the first source only.
BoundaryHarvest run_strategy(std::span<const Point> initial_sources, const SearchConfig& config, Oracle& oracle,
                             const InputDomain& domain, Rng& rng);

} // namespace sbfr
