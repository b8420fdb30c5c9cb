#include <cmath>
#include <set>

#include "doctest.h"
#include "sbfr/errors.hpp"
#include "sbfr/geometry.hpp"
#include "sbfr/rng.hpp"

using namespace sbfr;

namespace {

bool near(const Orientation& o, std::vector<double> expect, double tol = 1e-12) {
    if (o.dim() != expect.size()) return false;
    for (std::size_t i = 0; i < expect.size(); ++i) {
        if (std::abs(o[i] - expect[i]) > tol) return false;
    }
    return true;
}

void check_unit_and_distinct(const std::vector<Orientation>& os) {
    for (const auto& o : os) CHECK(std::abs(norm(o.span()) - 1.0) <= 1e-9);
    for (std::size_t i = 0; i < os.size(); ++i) {
        for (std::size_t j = i + 1; j < os.size(); ++j) CHECK(os[i] != os[j]);
    }
}

} // namespace

TEST_CASE("axis orientations follow +e1, -e1, +e2, -e2 order") {
    const auto a2 = axis_orientations(2);
    REQUIRE(a2.size() == 4);
    CHECK(near(a2[0], {1, 0}));
    CHECK(near(a2[1], {-1, 0}));
    CHECK(near(a2[2], {0, 1}));
    CHECK(near(a2[3], {0, -1}));

    const auto a1 = axis_orientations(1);
    REQUIRE(a1.size() == 2);
    CHECK(near(a1[0], {1}));
    CHECK(near(a1[1], {-1}));

    const auto a3 = axis_orientations(3);
    REQUIRE(a3.size() == 6);
    for (const auto& o : a3) {
        int nonzero = 0;
        for (double c : o.components()) {
            if (c != 0.0) {
                ++nonzero;
                CHECK(std::abs(c) == 1.0);
            }
        }
        CHECK(nonzero == 1);
    }
    CHECK_THROWS_AS(axis_orientations(0), InvalidArgument);
}

TEST_CASE("orthant diagonals and the combined FSB-2 set") {
    const double h = std::sqrt(2.0) / 2.0;
    const auto d2 = orthant_diagonal_orientations(2);
    REQUIRE(d2.size() == 4);
    CHECK(near(d2[0], {h, h}));
    CHECK(near(d2[1], {-h, h}));
    CHECK(near(d2[2], {h, -h}));
    CHECK(near(d2[3], {-h, -h}));
    CHECK(axis_and_diagonal_orientations(2).size() == 8);

    const auto d3 = orthant_diagonal_orientations(3);
    REQUIRE(d3.size() == 8);
    for (const auto& o : d3) {
        for (double c : o.components()) CHECK(std::abs(std::abs(c) - 1.0 / std::sqrt(3.0)) < 1e-12);
    }
    CHECK(axis_and_diagonal_orientations(3).size() == 14);
    CHECK(axis_and_diagonal_orientations(1).size() == 2);
    CHECK_THROWS_AS(orthant_diagonal_orientations(1), InvalidArgument);

    for (std::size_t d = 2; d <= 5; ++d) {
        const auto all = axis_and_diagonal_orientations(d);
        CHECK(all.size() == 2 * d + (std::size_t{1} << d));
        check_unit_and_distinct(all);
    }
}

TEST_CASE("mirroring into orthants") {
    SUBCASE("strictly positive vector gives 2^d sign flips") {
        const auto m = mirror_to_orthants(Orientation::from_unit({0.6, 0.8}));
        REQUIRE(m.size() == 4);
        CHECK(near(m[0], {0.6, 0.8}));
        CHECK(near(m[1], {-0.6, 0.8}));
        CHECK(near(m[2], {0.6, -0.8}));
        CHECK(near(m[3], {-0.6, -0.8}));
    }
    SUBCASE("45 degree diagonal gives one ray per quadrant") {
        const double h = std::sqrt(2.0) / 2.0;
        const auto m = mirror_to_orthants(Orientation::normalized({h, h}));
        REQUIRE(m.size() == 4);
        check_unit_and_distinct(m);
    }
    SUBCASE("zero components are deduplicated") {
        const auto m = mirror_to_orthants(Orientation::from_unit({1.0, 0.0}));
        REQUIRE(m.size() == 2);
        CHECK(near(m[0], {1, 0}));
        CHECK(near(m[1], {-1, 0}));
        for (const auto& o : m) CHECK(!std::signbit(o[1]));
    }
    SUBCASE("negative component rejected") {
        CHECK_THROWS_AS(mirror_to_orthants(Orientation::from_unit({-0.6, 0.8})), InvalidArgument);
    }
    SUBCASE("random positive vectors keep absolute values") {
        Rng rng(7);
        for (int t = 0; t < 200; ++t) {
            const std::size_t d = 2 + static_cast<std::size_t>(t % 4);
            const auto v = random_first_orthant_orientation(d, rng);
            const auto m = mirror_to_orthants(v);
            REQUIRE(m.size() == (std::size_t{1} << d));
            check_unit_and_distinct(m);
            for (const auto& o : m) {
                for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(o[i]) == v[i]);
            }
        }
    }
}

TEST_CASE("cosine distance") {
    const std::vector<double> x{1, 0};
    const std::vector<double> y{0, 1};
    const std::vector<double> nx{-1, 0};
    CHECK(cosine_distance(x, x) == doctest::Approx(0.0));
    CHECK(cosine_distance(x, y) == doctest::Approx(1.0));
    CHECK(cosine_distance(x, nx) == doctest::Approx(2.0));
    const std::vector<double> zero{0, 0};
    CHECK_THROWS_AS(cosine_distance(x, zero), InvalidArgument);

    Rng rng(11);
    std::normal_distribution<double> g;
    for (int t = 0; t < 500; ++t) {
        std::vector<double> u(3), v(3);
        for (auto& c : u) c = g(rng);
        for (auto& c : v) c = g(rng);
        const double duv = cosine_distance(u, v);
        CHECK(duv >= 0.0);
        CHECK(duv <= 2.0);
        CHECK(duv == doctest::Approx(cosine_distance(v, u)).epsilon(1e-12));
        std::vector<double> su = u;
        for (auto& c : su) c *= 3.7;
        CHECK(duv == doctest::Approx(cosine_distance(su, v)).epsilon(1e-12));
    }
}

TEST_CASE("rotation in a coordinate plane") {
    const Point origin{0, 0};
    const Point q = rotate_in_plane(Point{1, 0}, origin, 90.0, AxisPlane{0, 1});
    CHECK(std::abs(q[0] - 0.0) <= 1e-12);
    CHECK(std::abs(q[1] - 1.0) <= 1e-12);

    const Point p{0.3, 0.7};
    CHECK(rotate_in_plane(p, Point{0.5, 0.5}, 0.0, AxisPlane{0, 1}) == p);

    const Point r = rotate_in_plane(Point{0.6, 0.5}, Point{0.5, 0.5}, 180.0, AxisPlane{0, 1});
    CHECK(std::abs(r[0] - 0.4) <= 1e-12);
    CHECK(std::abs(r[1] - 0.5) <= 1e-12);

    CHECK_THROWS_AS(rotate_in_plane(p, origin, 10.0, AxisPlane{0, 0}), InvalidArgument);
    CHECK_THROWS_AS(rotate_in_plane(p, origin, 10.0, AxisPlane{0, 2}), InvalidArgument);

    Rng rng(3);
    for (int t = 0; t < 500; ++t) {
        Point a{uniform01(rng), uniform01(rng), uniform01(rng), uniform01(rng)};
        Point c{uniform01(rng), uniform01(rng), uniform01(rng), uniform01(rng)};
        const double gamma = uniform(rng, 0.0, 180.0);
        const AxisPlane plane{t % 2 == 0 ? std::size_t{0} : std::size_t{2}, 1};
        const Point b = rotate_in_plane(a, c, gamma, plane);
        CHECK(std::abs(distance(a.span(), c.span()) - distance(b.span(), c.span())) <= 1e-12);
        const Point back = rotate_in_plane(b, c, -gamma, plane);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(back[i] - a[i]) <= 1e-12);
        CHECK(b[3] == a[3]);
    }
}

TEST_CASE("input domain is half-open") {
    const auto d = InputDomain::unit(2);
    CHECK(d.contains(Point{0.0, 0.0}));
    CHECK(d.contains(Point{0.999, 0.5}));
    CHECK_FALSE(d.contains(Point{1.0, 0.5}));
    CHECK_FALSE(d.contains(Point{-1e-300, 0.5}));
    CHECK(d.volume() == 1.0);
    CHECK_THROWS_AS(InputDomain(Point{0.0}, Point{0.0}), InvalidArgument);
    CHECK_THROWS_AS(Orientation::from_unit({0.5, 0.5}), InvalidArgument);
}
