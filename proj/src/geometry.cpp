#include "sbfr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sbfr/errors.hpp"

namespace sbfr {

namespace {

void require_dim(std::size_t d) {
    if (d == 0) throw InvalidArgument("dimension must be at least 1");
}

void require_same_dim(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                              std::to_string(v.size()));
    }
}

// Exact sine/cosine at multiples of 90 degrees so axis-aligned rotations
// stay bit-exact.
void sin_cos_degrees(double degrees, double& s, double& c) {
    const double turns = degrees / 90.0;
    if (turns == std::floor(turns) && std::abs(turns) < 1e15) {
        const long long q = static_cast<long long>(turns);
        switch (((q % 4) + 4) % 4) {
            case 0: s = 0.0; c = 1.0; return;
            case 1: s = 1.0; c = 0.0; return;
            case 2: s = 0.0; c = -1.0; return;
            default: s = -1.0; c = 0.0; return;
        }
    }
    const double r = degrees_to_radians(degrees);
    s = std::sin(r);
    c = std::cos(r);
}

} // namespace

Orientation Orientation::from_unit(std::vector<double> components) {
    require_dim(components.size());
    const double n = norm(components);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
        throw InvalidArgument("orientation is not a unit vector (norm " + std::to_string(n) + ")");
    }
    return Orientation(std::move(components));
}

Orientation Orientation::normalized(std::vector<double> components) {
    require_dim(components.size());
    const double n = norm(components);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
    for (double& c : components) c /= n;
    return Orientation(std::move(components));
}

Orientation Orientation::operator-() const {
    std::vector<double> c = components_;
    for (double& x : c) x = -x;
    return Orientation(std::move(c));
}

InputDomain::InputDomain(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    require_dim(lower_.dim());
    if (lower_.dim() != upper_.dim()) throw InvalidArgument("domain bounds differ in dimension");
    for (std::size_t i = 0; i < lower_.dim(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
            throw InvalidArgument("domain axis " + std::to_string(i) + " needs finite lower < upper");
        }
    }
}

InputDomain InputDomain::unit(std::size_t d) {
    require_dim(d);
    return InputDomain(Point(std::vector<double>(d, 0.0)), Point(std::vector<double>(d, 1.0)));
}

bool InputDomain::contains(const Point& p) const {
    if (p.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(lower_[i] <= p[i] && p[i] < upper_[i])) return false;
    }
    return true;
}

double InputDomain::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dim(); ++i) v *= edge(i);
    return v;
}

double InputDomain::diameter() const { return distance(lower_.span(), upper_.span()); }

double InputDomain::max_edge() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) m = std::max(m, edge(i));
    return m;
}

double dot(std::span<const double> u, std::span<const double> v) {
    require_same_dim(u, v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double squared_distance(std::span<const double> u, std::span<const double> v) {
    require_same_dim(u, v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = u[i] - v[i];
        s += t * t;
    }
    return s;
}

double distance(std::span<const double> u, std::span<const double> v) {
    return std::sqrt(squared_distance(u, v));
}

Point along_ray(const Point& origin, const Orientation& direction, double offset) {
    require_same_dim(origin.span(), direction.span());
    Point p = origin;
    for (std::size_t i = 0; i < p.dim(); ++i) p[i] += offset * direction[i];
    return p;
}

std::vector<Orientation> axis_orientations(std::size_t d) {
    require_dim(d);
    std::vector<Orientation> out;
    out.reserve(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> e(d, 0.0);
        e[i] = 1.0;
        out.push_back(Orientation::from_unit(e));
        e[i] = -1.0;
        out.push_back(Orientation::from_unit(std::move(e)));
    }
    return out;
}

std::vector<Orientation> orthant_diagonal_orientations(std::size_t d) {
    if (d < 2) throw InvalidArgument("orthant diagonals need d >= 2; use the axis set for d = 1");
    if (d >= 63) throw InvalidArgument("dimension too large for orthant enumeration");
    const double c = 1.0 / std::sqrt(static_cast<double>(d));
    return mirror_to_orthants(Orientation::normalized(std::vector<double>(d, c)));
}

std::vector<Orientation> axis_and_diagonal_orientations(std::size_t d) {
    std::vector<Orientation> out = axis_orientations(d);
    if (d < 2) return out;
    for (auto& o : orthant_diagonal_orientations(d)) out.push_back(std::move(o));
    return out;
}

std::vector<Orientation> mirror_to_orthants(const Orientation& v) {
    const std::size_t d = v.dim();
    if (d >= 63) throw InvalidArgument("dimension too large for orthant enumeration");
    for (std::size_t i = 0; i < d; ++i) {
        if (v[i] < 0.0) throw InvalidArgument("mirror_to_orthants needs a first-orthant vector");
    }
    const std::uint64_t patterns = std::uint64_t{1} << d;
    std::vector<Orientation> out;
    out.reserve(patterns);
    for (std::uint64_t s = 0; s < patterns; ++s) {
        std::vector<double> c(d);
        bool redundant = false;
        for (std::size_t i = 0; i < d; ++i) {
            const bool negate = (s >> i) & 1U;
            // A flipped zero is the same ray as the unflipped one.
            if (negate && v[i] == 0.0) redundant = true;
            c[i] = negate ? -v[i] : v[i];
        }
        if (redundant) continue;
        out.push_back(Orientation::from_unit(std::move(c)));
    }
    return out;
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
    require_same_dim(u, v);
    const double nu = norm(u);
    const double nv = norm(v);
    if (!(nu > 0.0) || !(nv > 0.0)) throw InvalidArgument("cosine distance is undefined for a zero vector");
    const double c = std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
    return 1.0 - c;
}

Point rotate_in_plane(const Point& p, const Point& center, double gamma_degrees, AxisPlane plane) {
    require_same_dim(p.span(), center.span());
    if (plane.first == plane.second || plane.first >= p.dim() || plane.second >= p.dim()) {
        throw InvalidArgument("rotation plane axes must be distinct and within the dimension");
    }
    double s = 0.0;
    double c = 1.0;
    sin_cos_degrees(gamma_degrees, s, c);
    const double u = p[plane.first] - center[plane.first];
    const double w = p[plane.second] - center[plane.second];
    Point out = p;
    out[plane.first] = center[plane.first] + c * u - s * w;
    out[plane.second] = center[plane.second] + s * u + c * w;
    return out;
}

double degrees_to_radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

} // namespace sbfr
