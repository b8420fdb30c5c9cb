#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "sbfr/errors.hpp"
#include "sbfr/measure.hpp"
#include "test_support.hpp"

using namespace sbfr;

namespace {

bool same_set(std::vector<Point> a, std::vector<Point> b) {
    auto less = [](const Point& x, const Point& y) { return x.coords < y.coords; };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

std::vector<Point> random_points(Rng& rng, std::size_t n, std::size_t d) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(uniform_point(InputDomain::unit(d), rng));
    return pts;
}

} // namespace

TEST_CASE("2-D hull") {
    SUBCASE("interior point dropped") {
        const std::vector<Point> pts{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{0.5, 0.5}};
        const auto h = convex_hull_2d(pts);
        CHECK(h.size() == 4);
        CHECK(same_set(h, {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}));
        CHECK(polygon_area(h) == 1.0);
    }

    SUBCASE("collinear input gives a segment") {
        const std::vector<Point> pts{Point{0, 0}, Point{0.25, 0.25}, Point{1, 1}, Point{0.5, 0.5}};
        const auto h = convex_hull_2d(pts);
        CHECK(same_set(h, {Point{0, 0}, Point{1, 1}}));
    }

    SUBCASE("collinear points on an edge are not vertices") {
        const std::vector<Point> pts{Point{0, 0}, Point{0.5, 0}, Point{1, 0}, Point{0, 1}};
        CHECK(convex_hull_2d(pts).size() == 3);
    }

    SUBCASE("random sets match the brute-force half-plane hull") {
        Rng rng(3);
        for (int t = 0; t < 50; ++t) {
            const auto pts = random_points(rng, 100, 2);
            const auto h = convex_hull_2d(pts);
            CHECK(same_set(h, testing::brute_force_hull_vertices(pts)));
            CHECK(polygon_area(h) > 0.0);
        }
    }

    SUBCASE("triangle area") {
        const std::vector<Point> tri{Point{0, 0}, Point{1, 0}, Point{0, 1}};
        CHECK(polygon_area(convex_hull_2d(tri)) == 0.5);
    }
}

TEST_CASE("LP hull membership") {
    const std::vector<Point> square{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
    CHECK(point_in_hull(Point{0.5, 0.5}, square));
    CHECK_FALSE(point_in_hull(Point{1.5, 0.5}, square));
    CHECK(point_in_hull(Point{1.0, 1.0}, square));
    CHECK_FALSE(point_in_hull(Point{1.0 + 1e-6, 0.5}, square));

    SUBCASE("vertices and centroid are inside, in d = 2..4") {
        Rng rng(10);
        for (std::size_t d : {2u, 3u, 4u}) {
            const auto pts = random_points(rng, 40, d);
            HullMembership hm(pts);
            std::vector<double> c(d, 0.0);
            for (const auto& p : pts) {
                CHECK(hm.contains(p));
                for (std::size_t i = 0; i < d; ++i) c[i] += p[i] / 40.0;
            }
            CHECK(hm.contains(Point(c)));
            CHECK(hm.guard_trips() == 0);
        }
    }

    SUBCASE("10^4 queries agree with the polygon test") {
        Rng rng(11);
        int disagreements = 0;
        for (int h = 0; h < 10; ++h) {
            const auto pts = random_points(rng, 30, 2);
            const auto hull = convex_hull_2d(pts);
            HullMembership hm(pts);
            for (int q = 0; q < 1000; ++q) {
                const Point p{uniform(rng, -0.1, 1.1), uniform(rng, -0.1, 1.1)};
                if (hm.contains(p) != testing::in_convex_polygon(hull, p, 0.0)) ++disagreements;
            }
        }
        CHECK(disagreements == 0);
    }

    SUBCASE("tiny hulls are handled through rescaling") {
        std::vector<Point> pts;
        for (const auto& p : std::vector<Point>{Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}}) {
            pts.push_back(Point{0.3 + 1e-7 * p[0], 0.3 + 1e-7 * p[1], 0.3 + 1e-7 * p[2]});
        }
        HullMembership hm(pts);
        CHECK(hm.contains(Point{0.3 + 2e-8, 0.3 + 2e-8, 0.3 + 2e-8}));
        CHECK_FALSE(hm.contains(Point{0.3 + 5e-8, 0.3 + 5e-8, 0.3 + 5e-8}));
    }
}

TEST_CASE("hull volume") {
    SUBCASE("exact paths") {
        const std::vector<Point> square{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
        auto v = hull_volume(square, 2, 0, 0);
        CHECK(v.volume == 1.0);
        CHECK(v.stderr_ == 0.0);
        CHECK(v.method == VolumeMethod::Exact2D);
        const std::vector<Point> line{Point{0.2}, Point{0.7}, Point{0.4}};
        v = hull_volume(line, 1, 0, 0);
        CHECK(v.volume == doctest::Approx(0.5));
        CHECK(v.method == VolumeMethod::Exact1D);
        const std::vector<Point> two{Point{0, 0}, Point{1, 1}};
        v = hull_volume(two, 2, 0, 0);
        CHECK(v.degenerate);
        CHECK(v.volume == 0.0);
    }

    SUBCASE("unit cube corners, 200000 samples, within 3 standard errors") {
        std::vector<Point> cube;
        for (int m = 0; m < 8; ++m) cube.push_back(Point{double(m & 1), double(m >> 1 & 1), double(m >> 2 & 1)});
        // Hull equals its bounding box: every sample hits, stderr is 0.
        const auto v = hull_volume(cube, 3, 200000, 5);
        CHECK(v.method == VolumeMethod::MonteCarlo);
        CHECK(std::abs(v.volume - 1.0) <= 3 * v.stderr_ + 1e-12);
    }

    SUBCASE("octahedron: volume 4/3 within 3 standard errors") {
        std::vector<Point> oct;
        for (int i = 0; i < 3; ++i) {
            for (double s : {-1.0, 1.0}) {
                std::vector<double> c(3, 0.0);
                c[i] = s;
                oct.push_back(Point(c));
            }
        }
        const auto v = hull_volume(oct, 3, 200000, 6);
        CHECK(v.stderr_ > 0.0);
        CHECK(std::abs(v.volume - 4.0 / 3.0) <= 3 * v.stderr_);
    }

    SUBCASE("forced Monte Carlo agrees with shoelace on random 2-D hulls") {
        Rng rng(12);
        for (int t = 0; t < 10; ++t) {
            const auto pts = random_points(rng, 25, 2);
            const double exact = hull_volume(pts, 2, 0, 0).volume;
            const auto mc = hull_volume_monte_carlo(pts, 50000, 100 + t);
            CHECK(std::abs(mc.volume - exact) <= 3 * mc.stderr_);
        }
    }

    SUBCASE("adding points never shrinks the exact area") {
        Rng rng(13);
        auto pts = random_points(rng, 3, 2);
        double last = hull_volume(pts, 2, 0, 0).volume;
        for (int i = 0; i < 200; ++i) {
            pts.push_back(uniform_point(InputDomain::unit(2), rng));
            const double now = hull_volume(pts, 2, 0, 0).volume;
            CHECK(now >= last);
            last = now;
        }
    }

    SUBCASE("serial and OpenMP estimates are identical") {
        Rng rng(14);
        const auto pts = random_points(rng, 60, 3);
        const auto a = hull_volume(pts, 3, 30000, 8, Execution::Serial);
        const auto b = hull_volume(pts, 3, 30000, 8, Execution::Parallel);
        CHECK(a.volume == b.volume);
        CHECK(a.stderr_ == b.stderr_);
    }
}

TEST_CASE("region measure") {
    const auto dom = InputDomain::unit(2);
    RegionSpec spec;
    spec.theta = 0.04;
    spec.center = Point{0.5, 0.5};
    spec.half_extents = {0.1, 0.1};

    SUBCASE("axis extremes of a centred square give the rhombus ratio") {
        BoundaryHarvest h;
        h.source_inputs = {spec.center};
        h.boundary_inputs = {Point{0.6, 0.5}, Point{0.4, 0.5}, Point{0.5, 0.6}, Point{0.5, 0.4}};
        const auto m = measure_run(h, spec, dom, 0, 0);
        CHECK(std::abs(m.s_ratio - 0.5) <= 1e-9);
        CHECK(m.s_rfr == doctest::Approx(0.04));
    }

    SUBCASE("a single source is degenerate") {
        BoundaryHarvest h;
        h.source_inputs = {spec.center};
        const auto m = measure_run(h, spec, dom, 0, 0);
        CHECK(m.degenerate);
        CHECK(m.s_ratio == 0.0);
    }

    SUBCASE("full recovery gives ratio 1") {
        const std::vector<Point> corners{Point{0.4, 0.4}, Point{0.6, 0.4}, Point{0.6, 0.6}, Point{0.4, 0.6}};
        const auto m = measure_points(corners, 0.04, 2, 0, 0);
        CHECK(m.s_ratio == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m.s_ratio == doctest::Approx(m.s_afr / m.s_rfr));
    }
}

TEST_CASE("inequality reports") {
    SUBCASE("axis bounds of a square around (1, 1)") {
        const double r = std::sqrt(2.0) / 2.0;
        const std::vector<Point> pts{Point{1 - r, 1 - r}, Point{1 + r, 1 - r}, Point{1 + r, 1 + r}, Point{1 - r, 1 + r}};
        const auto b = axis_bounds(pts);
        CHECK(b[0].lower == doctest::Approx(1 - r));
        CHECK(b[1].upper == doctest::Approx(1 + r));
        CHECK(format_axis_bounds(b) == "0.292893 <= x <= 1.70711; 0.292893 <= y <= 1.70711");
    }

    SUBCASE("single point gives equalities") {
        const std::vector<Point> one{Point{0.25, 0.5, 0.75}};
        CHECK(inequality_report(one) == "x = 0.25; y = 0.5; z = 0.75");
    }

    SUBCASE("triangle: three half-planes satisfied by every point") {
        const std::vector<Point> pts{Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{0.2, 0.2}, Point{0.5, 0.5}};
        const auto hull = convex_hull_2d(pts);
        const auto hp = hull_halfplanes(hull);
        CHECK(hp.size() == 3);
        for (const auto& h : hp) {
            for (const auto& p : pts) CHECK(h.satisfied_by(p));
            CHECK_FALSE((h.satisfied_by(Point{2.0, 2.0}) && h.satisfied_by(Point{-1.0, -1.0})));
        }
        const auto text = inequality_report(pts);
        CHECK(std::count(text.begin(), text.end(), ';') == 2);
    }

    SUBCASE("axis names") {
        CHECK(axis_name(0, 2) == "x");
        CHECK(axis_name(2, 3) == "z");
        CHECK(axis_name(3, 4) == "x4");
    }
}
