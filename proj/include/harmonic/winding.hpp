#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "harmonic/errors.hpp"
#include "harmonic/harmonic_mapping.hpp"

namespace harmonic {

using ComplexFunction = std::function<Complex(Complex)>;

/// Positively oriented closed curve: a circle or a simple polygon.
/// Parametrized over t in [0, 1] with point(1) == point(0).
class ClosedCurve {
public:
    struct Circle {
        Complex center;
        double radius;
        double start_angle;
    };
    struct Polygon {
        std::vector<Complex> vertices;  // counterclockwise
        std::vector<double> cumulative;  // arc length at each vertex, closing edge last
    };

    static ClosedCurve circle(Complex center, double radius, double start_angle = 0.0);
    /// Vertices may be given in either orientation; they are stored
    /// counterclockwise. Throws PreconditionError for fewer than three
    /// vertices, zero area or self-intersection.
    static ClosedCurve polygon(std::vector<Complex> vertices);
    /// Axis-aligned square with the given center and half side.
    static ClosedCurve square(Complex center, double half_side);

    Complex point(double t) const;
    double length() const;
    /// Distance from p to the curve itself.
    double distance_to(Complex p) const;
    /// Same curve traversed from a different starting parameter.
    ClosedCurve with_start(double t0) const;

    bool is_circle() const { return std::holds_alternative<Circle>(shape_); }
    const Circle& as_circle() const { return std::get<Circle>(shape_); }
    const Polygon& as_polygon() const { return std::get<Polygon>(shape_); }

private:
    explicit ClosedCurve(std::variant<Circle, Polygon> shape) : shape_(std::move(shape)) {}
    std::variant<Circle, Polygon> shape_;
};

struct WindingOptions {
    int initial_samples = 256;
    double max_phase_step = std::numbers::pi / 3.0;
    int max_bisection_depth = 24;
    /// A sample counts as a zero when |f| < zero_tolerance * max |f| over the
    /// initial samples.
    double zero_tolerance = 1e-12;
};

struct WindingResult {
    int value = 0;
    double total_phase = 0.0;
    int samples_used = 0;
    double min_modulus_on_curve = 0.0;
};

/// Winding V(f; curve) by continuous argument tracking: per-step phase
/// increments arg(f(z_{k+1}) / f(z_k)) are forced below max_phase_step by
/// bisecting the parameter interval and summed in parameter order.
WindingResult winding(const ComplexFunction& f, const ClosedCurve& curve, const WindingOptions& opts = {});
WindingResult winding(const HarmonicMapping& f, const ClosedCurve& curve, const WindingOptions& opts = {});

/// Minimum of |f| over `samples` equally spaced points of a circle.
double min_modulus_on_circle(const ComplexFunction& f, Complex center, double radius, int samples = 256);

struct PoincareOptions {
    /// Starting radius; derived from known_points when unset.
    std::optional<double> r_start;
    /// Other exceptional points near the query, used for the automatic radius.
    std::vector<Complex> known_points;
    double default_radius = 0.1;
    int max_halvings = 40;
    double nonisolated_tolerance = 1e-9;
    int nonisolated_run = 5;
    WindingOptions winding;
};

struct PoincareIndex {
    int value = 0;
    /// Smaller of the two agreeing radii.
    double radius = 0.0;
};

/// Automatic starting radius: half the distance to the nearest known point
/// other than z0, capped at the default radius.
double auto_index_radius(Complex z0, std::span<const Complex> known_points, double default_radius = 0.1);

/// ind(f; z0) as the winding on circles r, r/2, r/4, ... accepted once two
/// consecutive radii agree. Throws NonIsolatedZeroError when min |f| on the
/// circle stays below nonisolated_tolerance * r for nonisolated_run radii in
/// a row, InstabilityError when the halvings are exhausted.
/// When the zeros crowd the shrinking circles beyond the tracking
/// resolution, doubles the radius from the start instead, up to half the
/// distance to the nearest known point.
PoincareIndex poincare_index(const ComplexFunction& f, Complex z0, const PoincareOptions& opts = {});
/// With neither r_start nor known_points set, the known points are the
/// nearby_exceptional_candidates of f farther than 1e-3 (1 + |z0|) from z0.
PoincareIndex poincare_index(const HarmonicMapping& f, Complex z0, const PoincareOptions& opts = {});

/// Candidate exceptional points of rational h near which a numeric index
/// radius must stay small: poles and roots of the fixed-point polynomial.
std::vector<Complex> nearby_exceptional_candidates(const HarmonicMapping& f);

/// False when min |f| on `run` consecutive circles r, r/2, ... around z0
/// all fall below tolerance * radius.
bool is_isolated_zero(const ComplexFunction& f, Complex z0, double r_start, double tolerance = 1e-9,
                      int run = 5);

struct LargeCircleWinding {
    int value = 0;
    double radius = 0.0;
};

/// Radius 2 (1 + m), m the largest modulus among the roots of numerator and
/// denominator of h, the roots of its fixed-point polynomial and `known`.
double auto_enclosing_radius(const HarmonicMapping& f, std::span<const Complex> known = {});

/// V(f; |z| = R). With R unset, starts from auto_enclosing_radius and doubles
/// until two consecutive radii give equal windings. Requires rational h of
/// degree >= 2 in that case.
LargeCircleWinding large_circle_winding(const HarmonicMapping& f, std::optional<double> radius = std::nullopt,
                                        std::span<const Complex> known = {}, const WindingOptions& opts = {});

}  // namespace harmonic
