#include "sbfr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sbfr/errors.hpp"

namespace sbfr {

std::string_view to_string(RegionShape s) {
    return s == RegionShape::Hyperrectangle ? "rectangle" : "ellipse";
}

RegionShape parse_region_shape(std::string_view s) {
    if (s == "rectangle" || s == "hyperrectangle" || s == "rect") return RegionShape::Hyperrectangle;
    if (s == "ellipse" || s == "hyperellipsoid" || s == "ellipsoid") return RegionShape::Hyperellipsoid;
    throw InvalidArgument("unknown region shape '" + std::string(s) + "'");
}

double unit_ball_volume(std::size_t d) {
    const double h = static_cast<double>(d) / 2.0;
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

std::vector<double> derive_half_extents(RegionShape shape, double theta, double delta,
                                        const InputDomain& domain) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in (0, 1]");
    if (!(delta >= 1.0) || !std::isfinite(delta)) throw InvalidArgument("delta must be >= 1");
    const std::size_t d = domain.dim();
    const double target = theta * domain.volume();
    const double dm = static_cast<double>(d - 1);

    std::vector<double> half(d);
    if (shape == RegionShape::Hyperrectangle) {
        // a * (a delta)^(d-1) = target
        const double a = std::pow(target / std::pow(delta, dm), 1.0 / static_cast<double>(d));
        half[0] = a / 2.0;
        for (std::size_t i = 1; i < d; ++i) half[i] = a * delta / 2.0;
    } else {
        // V_d r^d delta^(d-1) = target
        const double r = std::pow(target / (unit_ball_volume(d) * std::pow(delta, dm)),
                                  1.0 / static_cast<double>(d));
        half[0] = r;
        for (std::size_t i = 1; i < d; ++i) half[i] = r * delta;
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (2.0 * half[i] > domain.edge(i) * (1.0 + 1e-12)) {
            throw InfeasibleRegion("region extent " + std::to_string(2.0 * half[i]) + " on axis " +
                                   std::to_string(i) + " exceeds the domain edge");
        }
    }
    return half;
}

std::vector<double> rotated_bounding_half_widths(RegionShape shape, std::span<const double> half_extents,
                                                 double gamma_degrees, AxisPlane plane) {
    std::vector<double> w(half_extents.begin(), half_extents.end());
    if (w.size() < 2) return w;
    // Reuse the exact-angle path of rotate_in_plane to get (cos, sin).
    Point probe(std::vector<double>(w.size(), 0.0));
    probe[plane.first] = 1.0;
    const Point turned = rotate_in_plane(probe, Point(std::vector<double>(w.size(), 0.0)), gamma_degrees, plane);
    const double c = std::abs(turned[plane.first]);
    const double s = std::abs(turned[plane.second]);
    const double a = half_extents[plane.first];
    const double b = half_extents[plane.second];
    if (shape == RegionShape::Hyperrectangle) {
        w[plane.first] = c * a + s * b;
        w[plane.second] = s * a + c * b;
    } else {
        w[plane.first] = std::sqrt(c * c * a * a + s * s * b * b);
        w[plane.second] = std::sqrt(s * s * a * a + c * c * b * b);
    }
    return w;
}

RegionSpec place_region(RegionShape shape, double theta, double delta, double gamma_degrees,
                        AxisPlane plane, const InputDomain& domain, Rng& rng) {
    const std::size_t d = domain.dim();
    if (d >= 2 && (plane.first == plane.second || plane.first >= d || plane.second >= d)) {
        throw InvalidArgument("rotation plane outside the domain dimension");
    }
    if (!(gamma_degrees >= 0.0 && gamma_degrees <= 180.0)) throw InvalidArgument("gamma must lie in [0, 180]");

    RegionSpec spec;
    spec.shape = shape;
    spec.theta = theta;
    spec.delta = delta;
    spec.gamma_degrees = gamma_degrees;
    spec.plane = plane;
    spec.half_extents = derive_half_extents(shape, theta, delta, domain);

    const auto margin = rotated_bounding_half_widths(shape, spec.half_extents, gamma_degrees, plane);
    std::vector<double> c(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double lo = domain.lower()[i] + margin[i];
        const double hi = domain.upper()[i] - margin[i];
        const double slack = 1e-12 * domain.edge(i);
        if (hi < lo - slack) {
            throw InfeasibleRegion("rotated region does not fit the domain on axis " + std::to_string(i));
        }
        c[i] = hi <= lo ? 0.5 * (domain.lower()[i] + domain.upper()[i]) : uniform(rng, lo, hi);
    }
    spec.center = Point(std::move(c));
    return spec;
}

bool region_contains(const RegionSpec& spec, const Point& p) {
    const std::size_t d = spec.dim();
    if (p.dim() != d) throw InvalidArgument("point dimension does not match the region");
    const Point q = d >= 2 ? rotate_in_plane(p, spec.center, -spec.gamma_degrees, spec.plane) : p;
    if (spec.shape == RegionShape::Hyperrectangle) {
        for (std::size_t i = 0; i < d; ++i) {
            if (std::abs(q[i] - spec.center[i]) > spec.half_extents[i]) return false;
        }
        return true;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double t = (q[i] - spec.center[i]) / spec.half_extents[i];
        s += t * t;
    }
    return s <= 1.0;
}

double region_volume(const RegionSpec& spec) {
    double v = spec.shape == RegionShape::Hyperrectangle ? std::pow(2.0, static_cast<double>(spec.dim()))
                                                          : unit_ball_volume(spec.dim());
    for (double h : spec.half_extents) v *= h;
    return v;
}

RegionOracle::RegionOracle(RegionSpec spec) : spec_(std::move(spec)) {
    if (spec_.center.dim() != spec_.half_extents.size() || spec_.half_extents.empty()) {
        throw InvalidArgument("region center and extents disagree in dimension");
    }
}

Verdict RegionOracle::evaluate(const Point& p) {
    return region_contains(spec_, p) ? Verdict::Fail : Verdict::Pass;
}

} // namespace sbfr
