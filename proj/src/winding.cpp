#include "harmonic/winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace harmonic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool on_segment(Complex p, Complex a, Complex b) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
    const double d1 = cross(q2 - q1, p1 - q1);
    const double d2 = cross(q2 - q1, p2 - q1);
    const double d3 = cross(p2 - p1, q1 - p1);
    const double d4 = cross(p2 - p1, q2 - p1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    if (d1 == 0 && on_segment(p1, q1, q2)) return true;
    if (d2 == 0 && on_segment(p2, q1, q2)) return true;
    if (d3 == 0 && on_segment(q1, p1, p2)) return true;
    if (d4 == 0 && on_segment(q2, p1, p2)) return true;
    return false;
}

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

}  // namespace

ClosedCurve ClosedCurve::circle(Complex center, double radius, double start_angle) {
    if (!(radius > 0) || !std::isfinite(radius)) throw PreconditionError("circle radius must be positive");
    return ClosedCurve(Circle{center, radius, start_angle});
}

ClosedCurve ClosedCurve::square(Complex center, double half_side) {
    const double s = half_side;
    return polygon({center + Complex{-s, -s}, center + Complex{s, -s}, center + Complex{s, s},
                    center + Complex{-s, s}});
}

ClosedCurve ClosedCurve::polygon(std::vector<Complex> v) {
    const std::size_t n = v.size();
    if (n < 3) throw PreconditionError("polygon needs at least three vertices");
    double area = 0.0;
    for (std::size_t k = 0; k < n; ++k) area += cross(v[k], v[(k + 1) % n]);
    if (area == 0.0) throw PreconditionError("degenerate polygon");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                throw PreconditionError("polygon is not simple");
        }
    }
    if (area < 0) std::reverse(v.begin(), v.end());
    Polygon poly{std::move(v), {}};
    poly.cumulative.resize(n + 1);
    for (std::size_t k = 0; k < n; ++k)
        poly.cumulative[k + 1] = poly.cumulative[k] + std::abs(poly.vertices[(k + 1) % n] - poly.vertices[k]);
    return ClosedCurve(std::move(poly));
}

Complex ClosedCurve::point(double t) const {
    t -= std::floor(t);
    if (const auto* c = std::get_if<Circle>(&shape_))
        return c->center + std::polar(c->radius, kTwoPi * t + c->start_angle);
    const auto& p = std::get<Polygon>(shape_);
    const double s = t * p.cumulative.back();
    const auto it = std::upper_bound(p.cumulative.begin(), p.cumulative.end(), s);
    std::size_t k = static_cast<std::size_t>(std::distance(p.cumulative.begin(), it));
    k = std::clamp<std::size_t>(k, 1, p.vertices.size()) - 1;
    const double edge = p.cumulative[k + 1] - p.cumulative[k];
    const double u = edge > 0 ? (s - p.cumulative[k]) / edge : 0.0;
    const Complex a = p.vertices[k];
    const Complex b = p.vertices[(k + 1) % p.vertices.size()];
    return a + u * (b - a);
}

double ClosedCurve::length() const {
    if (const auto* c = std::get_if<Circle>(&shape_)) return kTwoPi * c->radius;
    return std::get<Polygon>(shape_).cumulative.back();
}

double ClosedCurve::distance_to(Complex p) const {
    if (const auto* c = std::get_if<Circle>(&shape_)) return std::abs(std::abs(p - c->center) - c->radius);
    const auto& poly = std::get<Polygon>(shape_);
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < poly.vertices.size(); ++k)
        d = std::min(d, segment_distance(p, poly.vertices[k], poly.vertices[(k + 1) % poly.vertices.size()]));
    return d;
}

ClosedCurve ClosedCurve::with_start(double t0) const {
    if (const auto* c = std::get_if<Circle>(&shape_))
        return circle(c->center, c->radius, c->start_angle + kTwoPi * t0);
    // Polygon: splice in the new start point as a vertex.
    const auto& poly = std::get<Polygon>(shape_);
    const Complex start = point(t0);
    const double s = (t0 - std::floor(t0)) * poly.cumulative.back();
    std::vector<Complex> v{start};
    const std::size_t n = poly.vertices.size();
    std::size_t first = 0;
    while (first < n && poly.cumulative[first] <= s) ++first;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex next = poly.vertices[(first + k) % n];
        if (std::abs(next - start) > 1e-15 * (1.0 + std::abs(start))) v.push_back(next);
    }
    return polygon(std::move(v));
}

namespace {

struct Tracker {
    const ComplexFunction& f;
    const ClosedCurve& curve;
    const WindingOptions& opts;
    double zero_threshold = 0.0;
    double total = 0.0;
    int samples = 0;
    double min_modulus = std::numeric_limits<double>::infinity();

    Complex sample(double t) {
        const Complex z = curve.point(t);
        const Complex v = f(z);
        ++samples;
        const double m = std::abs(v);
        min_modulus = std::min(min_modulus, m);
        if (m < zero_threshold || m == 0.0) throw ZeroOnCurveError(z);
        return v;
    }

    void track(double t0, Complex f0, double t1, Complex f1, int depth) {
        const double step = std::arg(f1 / f0);
        if (std::abs(step) <= opts.max_phase_step) {
            total += step;
            return;
        }
        if (depth >= opts.max_bisection_depth)
            throw BisectionCapError("phase tracking exceeded the bisection cap; curve too close to a zero");
        const double tm = 0.5 * (t0 + t1);
        const Complex fm = sample(tm);
        track(t0, f0, tm, fm, depth + 1);
        track(tm, fm, t1, f1, depth + 1);
    }
};

}  // namespace

WindingResult winding(const ComplexFunction& f, const ClosedCurve& curve, const WindingOptions& opts) {
    const int n = std::max(opts.initial_samples, 3);
    Tracker tr{f, curve, opts};
    std::vector<Complex> values(static_cast<std::size_t>(n));
    double scale = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex z = curve.point(static_cast<double>(k) / n);
        values[k] = f(z);
        ++tr.samples;
        const double m = std::abs(values[k]);
        if (!std::isfinite(m)) throw PoleError(z);
        scale = std::max(scale, m);
        tr.min_modulus = std::min(tr.min_modulus, m);
    }
    tr.zero_threshold = opts.zero_tolerance * scale;
    for (int k = 0; k < n; ++k) {
        const double m = std::abs(values[k]);
        if (m < tr.zero_threshold || m == 0.0) throw ZeroOnCurveError(curve.point(static_cast<double>(k) / n));
    }
    for (int k = 0; k < n; ++k) {
        const std::size_t next = static_cast<std::size_t>((k + 1) % n);
        tr.track(static_cast<double>(k) / n, values[k], static_cast<double>(k + 1) / n, values[next], 0);
    }
    const double turns = tr.total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) >= 0.25) throw BisectionCapError("winding did not round to an integer");
    return {static_cast<int>(rounded), tr.total, tr.samples, tr.min_modulus};
}

WindingResult winding(const HarmonicMapping& f, const ClosedCurve& curve, const WindingOptions& opts) {
    return winding(ComplexFunction([&f](Complex z) { return f(z); }), curve, opts);
}

double min_modulus_on_circle(const ComplexFunction& f, Complex center, double radius, int samples) {
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) m = std::min(m, std::abs(f(center + std::polar(radius, kTwoPi * k / samples))));
    return m;
}

double auto_index_radius(Complex z0, std::span<const Complex> known_points, double default_radius) {
    double r = default_radius;
    for (Complex p : known_points) {
        const double d = std::abs(p - z0);
        if (d > 1e-12 * (1.0 + std::abs(z0))) r = std::min(r, 0.5 * d);
    }
    return r;
}

PoincareIndex poincare_index(const ComplexFunction& f, Complex z0, const PoincareOptions& opts) {
    const double r0 = opts.r_start ? *opts.r_start : auto_index_radius(z0, opts.known_points, opts.default_radius);
    if (!(r0 > 0)) throw PreconditionError("index radius must be positive");

    // Winding on the circle of radius r, empty when the tracking fails or
    // f nearly vanishes on it.
    auto clean_winding = [&](double r, bool& near_zero) -> std::optional<int> {
        near_zero = min_modulus_on_circle(f, z0, r, opts.winding.initial_samples) < opts.nonisolated_tolerance * r;
        try {
            return winding(f, ClosedCurve::circle(z0, r), opts.winding).value;
        } catch (const ZeroOnCurveError&) {
        } catch (const BisectionCapError&) {
        }
        return std::nullopt;
    };

    // Growing circles, for zeros so flat that the shrinking ones cannot be
    // tracked. Only used while the circle stays within half the distance to
    // every known point.
    auto grow = [&]() -> std::optional<PoincareIndex> {
        if (opts.known_points.empty()) return std::nullopt;
        const double ceiling = auto_index_radius(z0, opts.known_points, std::numeric_limits<double>::infinity());
        std::optional<int> previous;
        for (double r = r0; r <= ceiling; r *= 2.0) {
            bool near_zero = false;
            const auto value = clean_winding(r, near_zero);
            if (near_zero) return std::nullopt;
            if (value && previous && *value == *previous) return PoincareIndex{*value, 0.5 * r};
            previous = value;
        }
        return std::nullopt;
    };

    double r = r0;
    std::optional<int> previous;
    int near_zero_run = 0;
    for (int k = 0; k <= opts.max_halvings; ++k, r *= 0.5) {
        bool near_zero = false;
        const auto value = clean_winding(r, near_zero);
        if (value && previous && *value == *previous) return {*value, r};
        previous = value;
        near_zero_run = (near_zero || !value) ? near_zero_run + 1 : 0;
        if (near_zero && near_zero_run >= opts.nonisolated_run) {
            if (auto up = grow()) return *up;
            throw NonIsolatedZeroError("zero is not isolated: f nearly vanishes on every small circle");
        }
    }
    if (auto up = grow()) return *up;
    throw InstabilityError("Poincare index did not stabilize on shrinking circles");
}

std::vector<Complex> nearby_exceptional_candidates(const HarmonicMapping& f) {
    std::vector<Complex> out;
    if (!f.h().is_rational()) return out;
    const RationalForm& h = *f.h().rational();
    for (const Root& r : roots(h.den)) out.push_back(r.location);
    const Polynomial fixed = fixed_point_polynomial(h);
    if (fixed.degree() > 0 && fixed.degree() <= 64)
        for (const Root& r : roots(fixed)) out.push_back(r.location);
    return out;
}

PoincareIndex poincare_index(const HarmonicMapping& f, Complex z0, const PoincareOptions& opts) {
    const ComplexFunction g([&f](Complex z) { return f(z); });
    if (opts.r_start || !opts.known_points.empty()) return poincare_index(g, z0, opts);
    PoincareOptions po = opts;
    for (Complex c : nearby_exceptional_candidates(f))
        if (std::abs(c - z0) > 1e-3 * (1.0 + std::abs(z0))) po.known_points.push_back(c);
    return poincare_index(g, z0, po);
}

bool is_isolated_zero(const ComplexFunction& f, Complex z0, double r_start, double tolerance, int run) {
    double r = r_start;
    for (int k = 0; k < run; ++k, r *= 0.5)
        if (min_modulus_on_circle(f, z0, r) >= tolerance * r) return true;
    return false;
}

double auto_enclosing_radius(const HarmonicMapping& f, std::span<const Complex> known) {
    const RationalForm& h = f.h().require_rational();
    double m = 0.0;
    for (const Root& r : roots(h.num)) m = std::max(m, std::abs(r.location));
    for (const Root& r : roots(h.den)) m = std::max(m, std::abs(r.location));
    const Polynomial fixed = fixed_point_polynomial(h);
    for (Complex z : durand_kerner(fixed)) m = std::max(m, std::abs(z));
    for (Complex z : known) m = std::max(m, std::abs(z));
    return 2.0 * (1.0 + m);
}

LargeCircleWinding large_circle_winding(const HarmonicMapping& f, std::optional<double> radius,
                                        std::span<const Complex> known, const WindingOptions& opts) {
    if (radius) return {winding(f, ClosedCurve::circle(0.0, *radius), opts).value, *radius};
    const RationalForm& h = f.h().require_rational();
    if (h.degree() < 2) throw PreconditionError("automatic radius needs rational h of degree >= 2");
    double r = auto_enclosing_radius(f, known);
    std::optional<int> previous;
    for (int k = 0; k < 30; ++k, r *= 2.0) {
        std::optional<int> value;
        try {
            value = winding(f, ClosedCurve::circle(0.0, r), opts).value;
        } catch (const ZeroOnCurveError&) {
        } catch (const BisectionCapError&) {
        }
        if (value && previous && *value == *previous) return {*value, r * 0.5};
        previous = value;
    }
    throw InstabilityError("winding on large circles did not stabilize");
}

}  // namespace harmonic
