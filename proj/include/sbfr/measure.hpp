#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbfr/geometry.hpp"
#include "sbfr/oracles.hpp"
#include "sbfr/rng.hpp"
#include "sbfr/search.hpp"

namespace sbfr {

/// Andrew's monotone chain. Counter-clockwise, starting at the lowest
/// (x, y) vertex, collinear points dropped. Degenerate inputs give one
/// point or a two-point segment.
std::vector<Point> convex_hull_2d(std::span<const Point> points);

/// Signed shoelace area (positive for counter-clockwise polygons).
double polygon_area(std::span<const Point> polygon);

/// Decides q in conv(vertices) through the LP
///   lambda >= 0, sum lambda = 1, sum lambda_j v_j = q
/// with a dense phase-1 simplex. Vertices and queries are rescaled to the
/// vertices' bounding box first so the 1e-9 feasibility tolerance is
/// scale-free. Dantzig pricing; after the first degenerate pivot the solver
/// switches to Bland's rule, which cannot cycle.
class HullMembership {
public:
    static constexpr double kFeasibilityTolerance = 1e-9;

    explicit HullMembership(std::span<const Point> vertices);

    std::size_t dim() const { return d_; }
    std::size_t vertex_count() const { return n_; }

    /// Not thread-safe: uses internal scratch. Copy the object per thread.
    bool contains(std::span<const double> q);
    bool contains(const Point& q) { return contains(q.span()); }

    /// Queries that hit the iteration guard (answered false).
    std::uint64_t guard_trips() const { return guard_trips_; }

private:
    std::size_t d_ = 0;
    std::size_t n_ = 0;
    std::vector<double> offset_;
    std::vector<double> scale_;
    std::vector<double> columns_;  // n_ columns of (d_ + 1) entries: scaled v_j, then 1
    std::vector<double> tableau_;
    std::vector<double> objective_;
    std::vector<std::size_t> basis_;
    std::uint64_t guard_trips_ = 0;
};

/// Convenience wrapper around HullMembership.
bool point_in_hull(const Point& q, std::span<const Point> vertices);

enum class VolumeMethod { Exact1D, Exact2D, MonteCarlo };
std::string_view to_string(VolumeMethod m);

struct VolumeEstimate {
    double volume = 0.0;
    double stderr_ = 0.0;
    VolumeMethod method = VolumeMethod::Exact2D;
    bool degenerate = false;
    std::uint64_t samples = 0;
};

enum class Execution { Serial, Parallel };

/// Convex-hull volume of `points`. d = 1: max - min. d = 2: shoelace area of
/// the hull. d >= 3: hit-or-miss Monte Carlo inside the bounding box with
/// LP membership; the sample stream depends only on `seed`.
/// Fewer than d + 1 points gives volume 0, flagged degenerate.
VolumeEstimate hull_volume(std::span<const Point> points, std::size_t d, std::uint64_t mc_samples,
                           std::uint64_t seed, Execution exec = Execution::Parallel);

/// Forces the Monte-Carlo path regardless of dimension.
VolumeEstimate hull_volume_monte_carlo(std::span<const Point> points, std::uint64_t mc_samples, std::uint64_t seed,
                                       Execution exec = Execution::Parallel);

struct RegionMeasure {
    double s_afr = 0.0;
    double s_rfr = 0.0;
    double s_ratio = 0.0;
    double stderr_ = 0.0;
    VolumeMethod method = VolumeMethod::Exact2D;
    bool degenerate = false;
};

inline constexpr std::uint64_t kDefaultMcSamples = 200'000;

/// Hull of boundary inputs plus source inputs against theta * |D|.
RegionMeasure measure_run(const BoundaryHarvest& harvest, const RegionSpec& spec, const InputDomain& domain,
                          std::uint64_t mc_samples, std::uint64_t seed, Execution exec = Execution::Parallel);

/// Same, from a raw AFR point set and a ground-truth volume.
RegionMeasure measure_points(std::span<const Point> afr_points, double s_rfr, std::size_t d,
                             std::uint64_t mc_samples, std::uint64_t seed, Execution exec = Execution::Parallel);

struct AxisBound {
    double lower = 0.0;
    double upper = 0.0;
};

/// normal . x <= bound, with |normal| = 1.
struct LinearInequality {
    std::vector<double> normal;
    double bound = 0.0;
    bool satisfied_by(const Point& p, double tol = 1e-9) const;
};

std::vector<AxisBound> axis_bounds(std::span<const Point> points);

/// One inequality per edge of a counter-clockwise hull with >= 3 vertices.
std::vector<LinearInequality> hull_halfplanes(std::span<const Point> hull_ccw);

/// x, y, z for d <= 3, x1..xd beyond.
std::string axis_name(std::size_t axis, std::size_t d);

/// "lo <= x <= hi; ..." (an equality when lo == hi).
std::string format_axis_bounds(std::span<const AxisBound> bounds);
std::string format_halfplanes(std::span<const LinearInequality> inequalities);

/// Inequality description of the AFR: half-planes of the 2D hull when it
/// has an interior, otherwise (and for d != 2) per-axis bounds.
std::string inequality_report(std::span<const Point> afr_points);

} // namespace sbfr
