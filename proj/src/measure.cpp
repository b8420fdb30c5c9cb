#include "sbfr/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

#include "sbfr/errors.hpp"
#include "sbfr/kernels.hpp"

namespace sbfr {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

} // namespace

std::vector<Point> convex_hull_2d(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    for (const auto& p : pts) {
        if (p.dim() != 2) throw InvalidArgument("convex_hull_2d needs 2-D points");
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;

    std::vector<Point> hull;
    hull.reserve(2 * pts.size());
    for (const auto& p : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), pts[i]) <= 0.0) hull.pop_back();
        hull.push_back(pts[i]);
    }
    hull.pop_back();  // first point repeated
    return hull;
}

double polygon_area(std::span<const Point> polygon) {
    if (polygon.size() < 3) return 0.0;
    // Relative to the first vertex: small polygons far from the origin
    // otherwise lose digits to cancellation.
    const double ox = polygon[0][0];
    const double oy = polygon[0][1];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
        twice += (polygon[i][0] - ox) * (polygon[i + 1][1] - oy) - (polygon[i + 1][0] - ox) * (polygon[i][1] - oy);
    }
    return 0.5 * twice;
}

HullMembership::HullMembership(std::span<const Point> vertices) {
    if (vertices.empty()) throw InvalidArgument("point_in_hull needs at least one vertex");
    d_ = vertices.front().dim();
    n_ = vertices.size();
    offset_.assign(d_, std::numeric_limits<double>::infinity());
    scale_.assign(d_, 1.0);
    std::vector<double> top(d_, -std::numeric_limits<double>::infinity());
    for (const auto& v : vertices) {
        if (v.dim() != d_) throw InvalidArgument("hull vertices differ in dimension");
        for (std::size_t i = 0; i < d_; ++i) {
            offset_[i] = std::min(offset_[i], v[i]);
            top[i] = std::max(top[i], v[i]);
        }
    }
    for (std::size_t i = 0; i < d_; ++i) {
        const double w = top[i] - offset_[i];
        scale_[i] = w > 0.0 ? 1.0 / w : 1.0;
    }
    const std::size_t m = d_ + 1;
    columns_.resize(n_ * m);
    for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < d_; ++i) columns_[j * m + i] = (vertices[j][i] - offset_[i]) * scale_[i];
        columns_[j * m + d_] = 1.0;
    }
    tableau_.resize(m * n_);
    objective_.resize(n_);
    basis_.resize(m);
}

bool HullMembership::contains(std::span<const double> q) {
    if (q.size() != d_) throw InvalidArgument("query dimension does not match the hull");
    const std::size_t m = d_ + 1;
    const std::size_t n = n_;
    constexpr double kPivotTol = 1e-12;
    constexpr double kPriceTol = 1e-12;

    double rhs[64];
    std::vector<double> rhs_heap;
    double* b = rhs;
    if (m > 64) {
        rhs_heap.resize(m);
        b = rhs_heap.data();
    }

    // Rows: scaled coordinates then the convexity row; rhs made non-negative.
    for (std::size_t i = 0; i < m; ++i) {
        const double bi = i < d_ ? (q[i] - offset_[i]) * scale_[i] : 1.0;
        const double sign = bi < 0.0 ? -1.0 : 1.0;
        b[i] = sign * bi;
        double* row = &tableau_[i * n];
        for (std::size_t j = 0; j < n; ++j) row[j] = sign * columns_[j * m + i];
        basis_[i] = n + i;  // artificial
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m; ++i) infeasibility += b[i];
    std::fill(objective_.begin(), objective_.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = &tableau_[i * n];
        for (std::size_t j = 0; j < n; ++j) objective_[j] -= row[j];
    }

    bool bland = false;
    const std::size_t max_pivots = 50 * (n + m) + 100;
    for (std::size_t it = 0; it < max_pivots; ++it) {
        if (infeasibility <= kFeasibilityTolerance) return true;

        std::size_t enter = n;
        if (bland) {
            for (std::size_t j = 0; j < n; ++j) {
                if (objective_[j] < -kPriceTol) {
                    enter = j;
                    break;
                }
            }
        } else {
            double best = -kPriceTol;
            for (std::size_t j = 0; j < n; ++j) {
                if (objective_[j] < best) {
                    best = objective_[j];
                    enter = j;
                }
            }
        }
        if (enter == n) return false;  // optimal with positive infeasibility

        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = tableau_[i * n + enter];
            if (a <= kPivotTol) continue;
            const double r = b[i] / a;
            if (r < best_ratio || (r == best_ratio && basis_[i] < basis_[leave])) {
                best_ratio = r;
                leave = i;
            }
        }
        if (leave == m) return false;
        if (best_ratio == 0.0) bland = true;

        double* prow = &tableau_[leave * n];
        const double inv = 1.0 / prow[enter];
        for (std::size_t j = 0; j < n; ++j) prow[j] *= inv;
        b[leave] *= inv;
        prow[enter] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            double* row = &tableau_[i * n];
            const double f = row[enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) row[j] -= f * prow[j];
            row[enter] = 0.0;
            b[i] -= f * b[leave];
            if (b[i] < 0.0) b[i] = 0.0;  // round-off below zero
        }
        const double f = objective_[enter];
        for (std::size_t j = 0; j < n; ++j) objective_[j] -= f * prow[j];
        objective_[enter] = 0.0;
        basis_[leave] = enter;
        infeasibility = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (basis_[i] >= n) infeasibility += b[i];
        }
    }
    ++guard_trips_;
    std::cerr << "warning: point_in_hull iteration guard hit; answering 'outside'\n";
    return false;
}

bool point_in_hull(const Point& q, std::span<const Point> vertices) {
    HullMembership hm(vertices);
    return hm.contains(q);
}

std::string_view to_string(VolumeMethod m) {
    switch (m) {
        case VolumeMethod::Exact1D: return "exact-1d";
        case VolumeMethod::Exact2D: return "exact-2d";
        case VolumeMethod::MonteCarlo: return "monte-carlo";
    }
    return "?";
}

VolumeEstimate hull_volume_monte_carlo(std::span<const Point> points, std::uint64_t mc_samples, std::uint64_t seed,
                                       Execution exec) {
    VolumeEstimate out;
    out.method = VolumeMethod::MonteCarlo;
    if (points.empty()) {
        out.degenerate = true;
        return out;
    }
    const std::size_t d = points.front().dim();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const auto& p : points) {
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    double box = 1.0;
    for (std::size_t i = 0; i < d; ++i) box *= hi[i] - lo[i];
    if (points.size() < d + 1 || !(box > 0.0) || mc_samples == 0) {
        out.degenerate = true;
        return out;
    }

    const HullMembership prototype(points);
    auto factory = [&prototype] {
        return [hm = prototype](std::span<const double> x) mutable { return hm.contains(x); };
    };
    const HitCount hits = exec == Execution::Parallel ? count_hits_parallel(lo, hi, mc_samples, seed, factory)
                                                      : count_hits_serial(lo, hi, mc_samples, seed, factory);
    const double p = hits.fraction();
    out.volume = box * p;
    out.stderr_ = box * std::sqrt(p * (1.0 - p) / static_cast<double>(mc_samples));
    out.samples = mc_samples;
    out.degenerate = hits.hits == 0;
    return out;
}

VolumeEstimate hull_volume(std::span<const Point> points, std::size_t d, std::uint64_t mc_samples,
                           std::uint64_t seed, Execution exec) {
    if (d == 0) throw InvalidArgument("dimension must be at least 1");
    for (const auto& p : points) {
        if (p.dim() != d) throw InvalidArgument("point dimension does not match d");
    }
    VolumeEstimate out;
    if (d == 1) {
        out.method = VolumeMethod::Exact1D;
        if (points.size() < 2) {
            out.degenerate = true;
            return out;
        }
        const auto [mn, mx] = std::minmax_element(points.begin(), points.end(),
                                                  [](const Point& a, const Point& b) { return a[0] < b[0]; });
        out.volume = (*mx)[0] - (*mn)[0];
        out.degenerate = !(out.volume > 0.0);
        return out;
    }
    if (d == 2) {
        out.method = VolumeMethod::Exact2D;
        if (points.size() < 3) {
            out.degenerate = true;
            return out;
        }
        const auto hull = convex_hull_2d(points);
        out.volume = hull.size() >= 3 ? polygon_area(hull) : 0.0;
        out.degenerate = !(out.volume > 0.0);
        return out;
    }
    return hull_volume_monte_carlo(points, mc_samples, seed, exec);
}

RegionMeasure measure_points(std::span<const Point> afr_points, double s_rfr, std::size_t d,
                             std::uint64_t mc_samples, std::uint64_t seed, Execution exec) {
    if (afr_points.empty()) throw InvalidArgument("cannot measure an empty point set");
    if (!(s_rfr > 0.0)) throw InvalidArgument("ground-truth volume must be positive");
    const VolumeEstimate v = hull_volume(afr_points, d, mc_samples, seed, exec);
    RegionMeasure m;
    m.s_rfr = s_rfr;
    m.method = v.method;
    m.degenerate = v.degenerate;
    if (!v.degenerate) {
        m.s_afr = v.volume;
        m.stderr_ = v.stderr_;
        m.s_ratio = m.s_afr / m.s_rfr;
    }
    return m;
}

RegionMeasure measure_run(const BoundaryHarvest& harvest, const RegionSpec& spec, const InputDomain& domain,
                          std::uint64_t mc_samples, std::uint64_t seed, Execution exec) {
    std::vector<Point> afr = harvest.boundary_inputs;
    afr.insert(afr.end(), harvest.source_inputs.begin(), harvest.source_inputs.end());
    return measure_points(afr, spec.theta * domain.volume(), domain.dim(), mc_samples, seed, exec);
}

bool LinearInequality::satisfied_by(const Point& p, double tol) const { return dot(normal, p.span()) <= bound + tol; }

std::vector<AxisBound> axis_bounds(std::span<const Point> points) {
    if (points.empty()) return {};
    const std::size_t d = points.front().dim();
    std::vector<AxisBound> out(d, AxisBound{std::numeric_limits<double>::infinity(),
                                            -std::numeric_limits<double>::infinity()});
    for (const auto& p : points) {
        for (std::size_t i = 0; i < d; ++i) {
            out[i].lower = std::min(out[i].lower, p[i]);
            out[i].upper = std::max(out[i].upper, p[i]);
        }
    }
    return out;
}

std::vector<LinearInequality> hull_halfplanes(std::span<const Point> hull_ccw) {
    if (hull_ccw.size() < 3) throw InvalidArgument("half-plane form needs a hull with at least 3 vertices");
    std::vector<LinearInequality> out;
    out.reserve(hull_ccw.size());
    for (std::size_t i = 0; i < hull_ccw.size(); ++i) {
        const Point& p = hull_ccw[i];
        const Point& q = hull_ccw[(i + 1) % hull_ccw.size()];
        // Interior lies to the left of p->q.
        std::vector<double> n{q[1] - p[1], p[0] - q[0]};
        const double len = norm(n);
        n[0] /= len;
        n[1] /= len;
        out.push_back(LinearInequality{n, dot(n, p.span())});
    }
    return out;
}

std::string axis_name(std::size_t axis, std::size_t d) {
    if (d <= 3) return std::string(1, "xyz"[axis]);
    return "x" + std::to_string(axis + 1);
}

std::string format_axis_bounds(std::span<const AxisBound> bounds) {
    std::string out;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (i > 0) out += "; ";
        const std::string name = axis_name(i, bounds.size());
        if (bounds[i].lower == bounds[i].upper) {
            out += name + " = " + format_number(bounds[i].lower);
        } else {
            out += format_number(bounds[i].lower) + " <= " + name + " <= " + format_number(bounds[i].upper);
        }
    }
    return out;
}

std::string format_halfplanes(std::span<const LinearInequality> inequalities) {
    std::string out;
    for (std::size_t k = 0; k < inequalities.size(); ++k) {
        if (k > 0) out += "; ";
        const auto& ineq = inequalities[k];
        const std::size_t d = ineq.normal.size();
        bool first = true;
        for (std::size_t i = 0; i < d; ++i) {
            const double c = ineq.normal[i];
            if (c == 0.0) continue;
            if (first) {
                out += format_number(c) + "*" + axis_name(i, d);
            } else {
                out += (c < 0 ? " - " : " + ") + format_number(std::abs(c)) + "*" + axis_name(i, d);
            }
            first = false;
        }
        if (first) out += "0";
        out += " <= " + format_number(ineq.bound);
    }
    return out;
}

std::string inequality_report(std::span<const Point> afr_points) {
    if (afr_points.empty()) return "";
    if (afr_points.front().dim() == 2) {
        const auto hull = convex_hull_2d(afr_points);
        if (hull.size() >= 3) return format_halfplanes(hull_halfplanes(hull));
    }
    const auto bounds = axis_bounds(afr_points);
    return format_axis_bounds(bounds);
}

} // namespace sbfr
