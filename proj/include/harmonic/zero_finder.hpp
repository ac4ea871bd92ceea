#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmonic/classifier.hpp"

namespace harmonic {

/// Axis-aligned square search window.
struct SearchRegion {
    Complex center{};
    double half_width = 2.0;
    int grid = 64;  ///< nodes per axis

    bool contains(Complex z, double margin = 0.0) const {
        const Complex d = z - center;
        return std::abs(d.real()) <= half_width + margin && std::abs(d.imag()) <= half_width + margin;
    }
};

/// A located zero of f or pole of h, with its classification and index.
struct ExceptionalPoint {
    enum class Kind { Zero, Pole };
    Complex location{};
    Kind kind = Kind::Zero;
    std::optional<PointClass> point_class;  ///< zeros only
    int pole_order = 0;                     ///< poles only
    std::optional<IndexVerdict> verdict;    ///< empty for non-isolated zeros
    double residual = 0.0;                  ///< |f(location)| for zeros
    bool isolated = true;
};

struct FinderOptions {
    /// Singular band used when classifying located zeros. Wider than the
    /// classifier default because located zeros carry rounding error.
    double singular_band = 1e-7;
    /// Replaces classifier.eta_defer for located zeros.
    double eta_defer = 1e-6;
    ClassifierOptions classifier;
    int max_newton_iterations = 100;
    int max_step_halvings = 20;
    /// |det J| = ||h'|^2 - 1| below this switches Newton to descent on |f|^2.
    double singular_jacobian = 1e-8;
    /// Converged when |f| <= convergence * (1 + |h'|).
    double convergence = 1e-11;
    double dedupe_radius = 1e-7;
    /// Accepted zeros satisfy |f| <= zero_residual_bound(max_residual, z, h'(z)).
    double max_residual = 1e-9;
    /// Also seed from the roots of the fixed-point polynomial (rational h).
    bool fixed_point_seeds = true;
    std::size_t max_points = 256;
    /// 0: HARMONIC_INDEX_THREADS or the hardware concurrency.
    unsigned threads = 0;
};

struct ZeroSearch {
    std::vector<ExceptionalPoint> zeros;
    bool budget_exceeded = false;
    bool non_isolated = false;
    std::vector<std::string> notes;
};

/// Region enclosing every zero and pole for rational h: center 0 and
/// half width 2 (1 + m), m the largest modulus among numerator and
/// denominator roots and the fixed-point roots that are zeros of f.
/// Non-rational h gets center 0, half width 2.
SearchRegion default_region(const HarmonicMapping& f, int grid = 64);

/// Damped Newton on (Re f, Im f) from `seed`, switching to descent on |f|^2
/// near the critical set. Empty when the iteration does not converge.
std::optional<Complex> refine_zero(const HarmonicMapping& f, Complex seed, const FinderOptions& opts = {});

/// Re-locates a numerically found zero that sits (nearly) on the critical
/// set, using a well-conditioned characterization: a simple root of
/// h^(k) when a_2..a_k vanish there, or least squares on
/// (f, |h'|^2 - 1) otherwise. Returns the input when neither verifies.
Complex polish_singular_zero(const HarmonicMapping& f, Complex z, const FinderOptions& opts = {});

/// All isolated zeros of f in the region, classified and indexed.
ZeroSearch find_zeros(const HarmonicMapping& f, const SearchRegion& region, const FinderOptions& opts = {});

/// 5 (n - 1) for rational h of degree n >= 2.
int max_zero_bound(const AnalyticFunction& h);

/// Winding of f on a large circle from the rational type of h:
/// (j, n) with j <= n gives -1, (k + n, k) with n >= 2 gives n.
/// Throws UncoveredTypeError for type (k + 1, k).
int expected_global_winding(const AnalyticFunction& h);

/// Worker count from HARMONIC_INDEX_THREADS, else hardware concurrency.
unsigned default_thread_count();

}  // namespace harmonic
