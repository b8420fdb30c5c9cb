#pragma once

// d-dimensional vector primitives shared by the oracles, the search
// strategies and the measurement code.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sbfr {

/// A position in the input domain.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
    double& operator[](std::size_t i) { return coords[i]; }
    std::span<const double> span() const { return coords; }

    bool operator==(const Point&) const = default;
};

/// Unit direction vector. Construction enforces |v| = 1 within 1e-9.
class Orientation {
public:
    static constexpr double kNormTolerance = 1e-9;

    /// Throws InvalidArgument unless `components` already has unit norm.
    static Orientation from_unit(std::vector<double> components);
    /// Scales `components` to unit norm. Throws on the zero vector.
    static Orientation normalized(std::vector<double> components);

    std::size_t dim() const { return components_.size(); }
    double operator[](std::size_t i) const { return components_[i]; }
    std::span<const double> span() const { return components_; }
    const std::vector<double>& components() const { return components_; }
    Orientation operator-() const;

    bool operator==(const Orientation&) const = default;

private:
    explicit Orientation(std::vector<double> c) : components_(std::move(c)) {}
    std::vector<double> components_;
};

/// Two distinct coordinate axes (0-based) spanning a rotation plane.
struct AxisPlane {
    std::size_t first = 0;
    std::size_t second = 1;
    bool operator==(const AxisPlane&) const = default;
};

/// Axis-aligned half-open box [lower_i, upper_i).
class InputDomain {
public:
    InputDomain(Point lower, Point upper);
    /// [0, 1)^d
    static InputDomain unit(std::size_t d);

    std::size_t dim() const { return lower_.dim(); }
    const Point& lower() const { return lower_; }
    const Point& upper() const { return upper_; }
    double edge(std::size_t i) const { return upper_[i] - lower_[i]; }
    bool contains(const Point& p) const;
    double volume() const;
    double diameter() const;
    /// Longest edge; the default extension length.
    double max_edge() const;

private:
    Point lower_;
    Point upper_;
};

double dot(std::span<const double> u, std::span<const double> v);
double norm(std::span<const double> v);
double distance(std::span<const double> u, std::span<const double> v);
double squared_distance(std::span<const double> u, std::span<const double> v);

/// origin + offset * direction
Point along_ray(const Point& origin, const Orientation& direction, double offset);

/// +e_1, -e_1, +e_2, -e_2, ... (2d vectors).
std::vector<Orientation> axis_orientations(std::size_t d);

/// All 2^d sign patterns of (1/sqrt(d), ..., 1/sqrt(d)), ordered as in
/// mirror_to_orthants. Requires d >= 2.
std::vector<Orientation> orthant_diagonal_orientations(std::size_t d);

/// axis_orientations(d) followed by orthant_diagonal_orientations(d);
/// 2d + 2^d vectors for d >= 2, the axis set alone for d = 1.
std::vector<Orientation> axis_and_diagonal_orientations(std::size_t d);

/// Reflects a first-orthant orientation into every orthant. Sign pattern s
/// (0 <= s < 2^d) negates axis i when bit i of s is set, so pattern 0 is v
/// itself. Zero components make some patterns coincide; only the first
/// occurrence of each distinct vector is kept.
std::vector<Orientation> mirror_to_orthants(const Orientation& v);

/// 1 - u.v / (|u||v|), in [0, 2].
double cosine_distance(std::span<const double> u, std::span<const double> v);

/// Rigid rotation of p about center by gamma_degrees inside the given
/// coordinate plane. Positive angles turn `first` towards `second`.
Point rotate_in_plane(const Point& p, const Point& center, double gamma_degrees, AxisPlane plane);

double degrees_to_radians(double degrees);

} // namespace sbfr
