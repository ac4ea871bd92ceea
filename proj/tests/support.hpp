#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "harmonic/portrait.hpp"
#include "harmonic/report.hpp"

namespace testing_support {

using harmonic::Complex;

inline constexpr double kPi = std::numbers::pi;

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline Complex random_in_disk(double radius = 1.0) {
    for (;;) {
        const Complex c{uniform(-1, 1), uniform(-1, 1)};
        if (std::abs(c) <= 1.0) return radius * c;
    }
}

inline Complex random_in_annulus(double r0, double r1) {
    return std::polar(uniform(r0, r1), uniform(-kPi, kPi));
}

// Independent winding oracle: fixed dense sampling of a circle, summing
// principal arguments of successive quotients.
template <typename F>
int dense_circle_winding(F&& f, Complex center, double radius, int samples = 100000) {
    double total = 0.0;
    Complex prev = f(center + radius);
    for (int k = 1; k <= samples; ++k) {
        const Complex cur = f(center + std::polar(radius, 2.0 * kPi * k / samples));
        total += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

inline std::string random_polynomial_text(int degree) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = random_in_disk();
    while (std::abs(c.back()) < 0.05) c.back() = random_in_disk();
    return harmonic::format_polynomial(harmonic::Polynomial(c));
}

// Rational h of type (j, k) with coefficients in the unit disk.
inline std::string random_rational_text(int j, int k) {
    if (k == 0) return random_polynomial_text(j);
    return "(" + random_polynomial_text(j) + ")/(" + random_polynomial_text(k) + ")";
}

// True when some zero of f has ||h'| - 1| < band but is not exactly singular
// within the finder's band: its class, and so its index, would hinge on
// rounding. Random instances like that are drawn again.
inline bool has_ambiguous_zero(const harmonic::HarmonicMapping& f, double band = 1e-3) {
    const auto s = harmonic::find_zeros(f, harmonic::default_region(f));
    for (const auto& p : s.zeros)
        if (p.point_class && std::abs(p.point_class->witness - 1.0) < band) return true;
    return false;
}

// Random rational h of one of the given types, redrawn while ambiguous.
inline harmonic::HarmonicMapping random_audit_instance(int j, int k) {
    for (;;) {
        auto f = harmonic::HarmonicMapping::parse(random_rational_text(j, k));
        const auto t = harmonic::rational_type(f.h());
        if (t.num_degree == j && t.den_degree == k && !has_ambiguous_zero(f)) return f;
    }
}

// Color cycles on the pixel circle around z with radius a fraction of the
// smaller window side. Near a singular zero the phase can turn within a
// single pixel row, so the circle grows from 5% to 10% of the window until
// the hue steps are resolved.
inline int cycles_at(const harmonic::Image& img, const harmonic::Window& w, Complex z, double radius_fraction) {
    const auto [col, row] = w.to_pixel(z);
    const int r = static_cast<int>(std::lround(radius_fraction * std::min(w.width_px, w.height_px)));
    return harmonic::color_cycle_count(img, static_cast<int>(std::lround(col)), static_cast<int>(std::lround(row)), r);
}

inline int cycles_near(const harmonic::Image& img, const harmonic::Window& w, Complex z) {
    for (double frac : {0.05, 0.075})
        try {
            return cycles_at(img, w, z, frac);
        } catch (const harmonic::PortraitError&) {
        }
    return cycles_at(img, w, z, 0.1);
}

}  // namespace testing_support
