#include "sbfr/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sbfr/errors.hpp"
#include "sbfr/measure.hpp"

namespace sbfr {

namespace {

constexpr double kSize = 500.0;
constexpr double kPad = 20.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

double px(double x) { return kPad + kSize * x; }
double py(double y) { return kPad + kSize * (1.0 - y); }

std::string polygon(const std::vector<Point>& pts, const char* cls) {
    std::string s = "<polygon class=\"" + std::string(cls) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += num(px(pts[i][0])) + "," + num(py(pts[i][1]));
    }
    return s + "\"/>\n";
}

// Rotation matrix of the region as columns R e_j.
std::vector<std::vector<double>> rotation_columns(const RegionSpec& spec) {
    const std::size_t d = spec.dim();
    std::vector<std::vector<double>> cols;
    const Point origin(std::vector<double>(d, 0.0));
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> e(d, 0.0);
        e[j] = 1.0;
        cols.push_back(d >= 2 ? rotate_in_plane(Point(e), origin, spec.gamma_degrees, spec.plane).coords : e);
    }
    return cols;
}

std::vector<Point> region_outline(const RegionSpec& spec, std::size_t ax, std::size_t ay) {
    const std::size_t d = spec.dim();
    const auto R = rotation_columns(spec);
    if (spec.shape == RegionShape::Hyperrectangle) {
        std::vector<Point> corners;
        for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
            double x = spec.center[ax], y = spec.center[ay];
            for (std::size_t j = 0; j < d; ++j) {
                const double h = (mask >> j & 1ULL) ? spec.half_extents[j] : -spec.half_extents[j];
                x += R[j][ax] * h;
                y += R[j][ay] * h;
            }
            corners.push_back(Point{x, y});
        }
        return convex_hull_2d(corners);
    }
    // Projected ellipsoid: 2x2 block of R diag(r^2) R^T, drawn through its
    // Cholesky factor.
    double a = 0, b = 0, c = 0;
    for (std::size_t j = 0; j < d; ++j) {
        const double r2 = spec.half_extents[j] * spec.half_extents[j];
        a += R[j][ax] * R[j][ax] * r2;
        b += R[j][ax] * R[j][ay] * r2;
        c += R[j][ay] * R[j][ay] * r2;
    }
    const double l11 = std::sqrt(a);
    const double l21 = b / l11;
    const double l22 = std::sqrt(std::max(0.0, c - l21 * l21));
    std::vector<Point> pts;
    for (int k = 0; k < 180; ++k) {
        const double t = 2.0 * std::numbers::pi * k / 180.0;
        const double u = std::cos(t), v = std::sin(t);
        pts.push_back(Point{spec.center[ax] + l11 * u, spec.center[ay] + l21 * u + l22 * v});
    }
    return pts;
}

} // namespace

std::string render_svg(const RunRecord& record, std::size_t x_axis, std::size_t y_axis) {
    const std::size_t d = record.setting.d;
    if (x_axis == y_axis) throw InvalidArgument("projection axes must differ");
    if (x_axis >= d || y_axis >= d) throw InvalidArgument("projection axis outside dimension " + std::to_string(d));

    auto project = [&](const Point& p) { return Point{p[x_axis], p[y_axis]}; };
    const double full = kSize + 2 * kPad;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(full) + "\" height=\"" + num(full) +
         "\" viewBox=\"0 0 " + num(full) + " " + num(full) + "\">\n";
    s += "<title>" + record.setting.id() + " rep " + std::to_string(record.rep) + " axes " + axis_name(x_axis, d) +
         "," + axis_name(y_axis, d) + "</title>\n";
    s += "<style>.domain{fill:none;stroke:#000}.rfr{fill:#f4d4d4;stroke:#b22}.afr{fill:#cfe0f7;fill-opacity:0.7;"
         "stroke:#25a}.boundary{fill:#124}.source{fill:#e80;stroke:#000}</style>\n";
    s += "<rect class=\"domain\" x=\"" + num(kPad) + "\" y=\"" + num(kPad) + "\" width=\"" + num(kSize) +
         "\" height=\"" + num(kSize) + "\"/>\n";
    if (record.region) s += polygon(region_outline(*record.region, x_axis, y_axis), "rfr");

    std::vector<Point> projected;
    for (const auto& p : record.boundary_inputs) projected.push_back(project(p));
    for (const auto& p : record.source_inputs) projected.push_back(project(p));
    if (!projected.empty()) {
        const auto hull = convex_hull_2d(projected);
        if (hull.size() >= 3) s += polygon(hull, "afr");
    }
    for (const auto& p : record.boundary_inputs) {
        const auto q = project(p);
        s += "<circle class=\"boundary\" cx=\"" + num(px(q[0])) + "\" cy=\"" + num(py(q[1])) + "\" r=\"1.5\"/>\n";
    }
    if (!record.source_inputs.empty() || record.first_failure) {
        const auto q = project(record.source_inputs.empty() ? *record.first_failure : record.source_inputs.front());
        s += "<rect class=\"source\" x=\"" + num(px(q[0]) - 4) + "\" y=\"" + num(py(q[1]) - 4) +
             "\" width=\"8\" height=\"8\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace sbfr
