#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "harmonic/harmonic_mapping.hpp"
#include "harmonic/winding.hpp"

namespace harmonic {

/// Local type of f at a point by |h'(z0)| against 1 (Jacobian sign).
struct PointClass {
    enum class Kind { SensePreserving, SenseReversing, Singular };
    Kind kind = Kind::Singular;
    double witness = 1.0;  ///< |h'(z0)|
};

std::string_view to_string(PointClass::Kind kind);

enum class IndexMethod { RegularRule, NormalizedTheorem, GeneralTheorem, BinomialLemma, NumericFallback };

std::string_view to_string(IndexMethod method);

/// Coefficient data behind a series-based verdict.
struct VerdictDetails {
    int n = 0;          ///< first index >= 2 with a nonvanishing coefficient
    Complex a_n{};
    double theta = 0.0; ///< arg a_1
    double phi = 0.0;   ///< arg a_n (= arg h^(n)(z0))
    double eta = 0.0;   ///< cos(phi - (n+1) theta / 2)
};

struct IndexVerdict {
    /// Empty means indeterminate.
    std::optional<int> value;
    IndexMethod method = IndexMethod::RegularRule;
    std::optional<VerdictDetails> details;
    /// Set when the dispatcher fell back to the numeric oracle after a
    /// series verdict came back indeterminate (or could not be formed).
    std::optional<IndexMethod> theorem_attempt;
    std::vector<std::string> notes;

    bool indeterminate() const { return !value.has_value(); }
};

struct ClassifierOptions {
    /// Half-width of the singular band on |h'| - 1.
    double singular_band = 1e-9;
    /// |a_k| <= coefficient_zero * (1 + max_j |a_j|) counts as zero.
    double coefficient_zero = 1e-10;
    double eta_tolerance = 1e-9;
    /// Determinate verdicts with |eta| at or below this are re-checked by the
    /// numeric oracle. Useful when z0 is only known approximately: eta is
    /// then perturbed by roughly the location error times |a_{n+1} / a_n|.
    double eta_defer = 0.0;
    int order = kDefaultTaylorOrder;
    /// |f(z0)| above zero_residual_bound(zero_residual, z0, h'(z0)) means
    /// z0 is not a zero.
    double zero_residual = 1e-9;
    /// Distance within which z0 is taken to be a pole of rational h.
    double pole_match = 1e-8;
    PoincareOptions numeric;
};

/// Largest |f(z)| accepted at a computed zero: tol (1 + |z|) plus the
/// rounding floor 4 eps |h'(z)| (1 + |z|) of evaluating f near z.
double zero_residual_bound(double tol, Complex z, Complex h_prime);

PointClass classify_point(const HarmonicMapping& f, Complex z0, double tol = 1e-9);

/// +1 sense-preserving, -1 sense-reversing; PreconditionError when singular.
int index_regular(const PointClass& cls);

/// Index of a singular zero from the expansion of f about it, normalized
/// so that a_0 = 0 and a_1 = 1. Decided by the parity of n and the sign of
/// Re(a_n); indeterminate when Re(a_n) vanishes.
IndexVerdict index_singular_normalized(const TruncatedSeries& series, const ClassifierOptions& opts = {});

/// Same without the a_1 = 1 normalization: a_1 = e^{i theta} and the sign
/// of eta = cos(phi - (n+1) theta / 2) takes the place of Re(a_n).
IndexVerdict index_singular_general(const TruncatedSeries& series, const ClassifierOptions& opts = {});

/// Rotates a series with |a_1| = 1 to the normalized form:
/// a_k -> a_k e^{-i (k+1) theta / 2}.
TruncatedSeries normalize_series(const TruncatedSeries& series);

/// Index at 0 of a z^n + z - conj(z), including the purely imaginary case.
int index_binomial(Complex a, int n);

/// When h is exactly a z^n + z, returns (a, n).
std::optional<std::pair<Complex, int>> binomial_form(const AnalyticFunction& h);

/// Index of f at an exceptional point: poles of rational h give -order,
/// regular zeros the regular rule, singular zeros the general theorem, and
/// indeterminate cases the numeric oracle (except the binomial family).
IndexVerdict index(const HarmonicMapping& f, Complex z0, const ClassifierOptions& opts = {});

}  // namespace harmonic
