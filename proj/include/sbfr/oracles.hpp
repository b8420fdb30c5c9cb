#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sbfr/geometry.hpp"
#include "sbfr/rng.hpp"

namespace sbfr {

enum class Verdict { Pass, Fail };

struct OracleStats {
    std::uint64_t probe_count = 0;
    std::uint64_t fail_count = 0;
};

/// Pass/fail verdict provider. Every call to test() is counted; callers
/// never submit points outside the input domain.
class Oracle {
public:
    virtual ~Oracle() = default;

    Verdict test(const Point& p) {
        const Verdict v = evaluate(p);
        ++stats_.probe_count;
        if (v == Verdict::Fail) ++stats_.fail_count;
        return v;
    }
    const OracleStats& stats() const { return stats_; }
    virtual std::size_t dim() const = 0;

protected:
    virtual Verdict evaluate(const Point& p) = 0;

private:
    OracleStats stats_;
};

/// Wraps an arbitrary predicate (true = failure-causing).
class FunctionOracle final : public Oracle {
public:
    FunctionOracle(std::size_t d, std::function<bool(const Point&)> fails)
        : d_(d), fails_(std::move(fails)) {}
    std::size_t dim() const override { return d_; }

protected:
    Verdict evaluate(const Point& p) override { return fails_(p) ? Verdict::Fail : Verdict::Pass; }

private:
    std::size_t d_;
    std::function<bool(const Point&)> fails_;
};

enum class RegionShape { Hyperrectangle, Hyperellipsoid };

std::string_view to_string(RegionShape s);
/// Accepts "rectangle"/"hyperrectangle" and "ellipse"/"hyperellipsoid".
RegionShape parse_region_shape(std::string_view s);

/// Ground-truth simulated failure region.
struct RegionSpec {
    RegionShape shape = RegionShape::Hyperrectangle;
    double theta = 0.001;
    double delta = 1.0;
    double gamma_degrees = 0.0;
    AxisPlane plane{};
    Point center;
    /// Rectangle: half edge lengths. Ellipsoid: semi-axes. Pattern 1:delta:...:delta.
    std::vector<double> half_extents;

    std::size_t dim() const { return half_extents.size(); }
};

/// Volume of the unit d-ball (2, pi, 4pi/3, pi^2/2, ...).
double unit_ball_volume(std::size_t d);

/// Half-lengths giving volume theta * |D| with extent ratio 1:delta:...:delta.
/// Throws InfeasibleRegion when a full extent exceeds its domain edge.
std::vector<double> derive_half_extents(RegionShape shape, double theta, double delta,
                                        const InputDomain& domain);

/// Half-widths of the axis-aligned box enclosing the region rotated by
/// gamma in `plane`.
std::vector<double> rotated_bounding_half_widths(RegionShape shape, std::span<const double> half_extents,
                                                 double gamma_degrees, AxisPlane plane);

/// Builds the region and draws its center uniformly among positions that
/// keep the rotated bounding box inside the domain.
RegionSpec place_region(RegionShape shape, double theta, double delta, double gamma_degrees,
                        AxisPlane plane, const InputDomain& domain, Rng& rng);

/// Pure membership test (boundary counts as inside).
bool region_contains(const RegionSpec& spec, const Point& p);

/// Volume of the region in domain units.
double region_volume(const RegionSpec& spec);

class RegionOracle final : public Oracle {
public:
    explicit RegionOracle(RegionSpec spec);
    std::size_t dim() const override { return spec_.dim(); }
    const RegionSpec& spec() const { return spec_; }

protected:
    Verdict evaluate(const Point& p) override;

private:
    RegionSpec spec_;
};

} // namespace sbfr
