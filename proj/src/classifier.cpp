#include "harmonic/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace harmonic {

std::string_view to_string(PointClass::Kind kind) {
    switch (kind) {
    case PointClass::Kind::SensePreserving: return "SensePreserving";
    case PointClass::Kind::SenseReversing: return "SenseReversing";
    case PointClass::Kind::Singular: return "Singular";
    }
    return "?";
}

std::string_view to_string(IndexMethod method) {
    switch (method) {
    case IndexMethod::RegularRule: return "RegularRule";
    case IndexMethod::NormalizedTheorem: return "NormalizedTheorem";
    case IndexMethod::GeneralTheorem: return "GeneralTheorem";
    case IndexMethod::BinomialLemma: return "BinomialLemma";
    case IndexMethod::NumericFallback: return "NumericFallback";
    }
    return "?";
}

double zero_residual_bound(double tol, Complex z, Complex h_prime) {
    const double scale = 1.0 + std::abs(z);
    return tol * scale + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(h_prime) * scale;
}

PointClass classify_point(const HarmonicMapping& f, Complex z0, double tol) {
    (void)f.h()(z0);  // PoleError at poles
    const double w = std::abs(f.h_prime()(z0));
    PointClass c;
    c.witness = w;
    if (w > 1.0 + tol) c.kind = PointClass::Kind::SensePreserving;
    else if (w < 1.0 - tol) c.kind = PointClass::Kind::SenseReversing;
    else c.kind = PointClass::Kind::Singular;
    return c;
}

int index_regular(const PointClass& cls) {
    switch (cls.kind) {
    case PointClass::Kind::SensePreserving: return +1;
    case PointClass::Kind::SenseReversing: return -1;
    case PointClass::Kind::Singular: break;
    }
    throw PreconditionError("regular index rule applied to a singular point");
}

namespace {

void require_zero_center(const TruncatedSeries& s, const ClassifierOptions& opts) {
    if (s.order() < 2) throw PreconditionError("series order must be at least 2");
    if (std::abs(s[0]) > zero_residual_bound(opts.zero_residual, s.center(), s[1]))
        throw PreconditionError("series is not centered at a zero (a_0 != 0)");
}

// Smallest n >= 2 with a_n above the scale-aware zero threshold.
int first_nonvanishing(const TruncatedSeries& s, const ClassifierOptions& opts) {
    double scale = 0.0;
    for (int k = 1; k <= s.order(); ++k) scale = std::max(scale, std::abs(s[k]));
    const double threshold = opts.coefficient_zero * (1.0 + scale);
    for (int k = 2; k <= s.order(); ++k)
        if (std::abs(s[k]) > threshold) return k;
    throw PreconditionError("coefficients a_2..a_N all vanish; isolation of the zero cannot be certified");
}

std::optional<int> verdict_from_sign(int n, double sign_quantity, bool vanishes) {
    if (vanishes) return std::nullopt;
    if (n % 2 == 0) return 0;
    return sign_quantity > 0 ? +1 : -1;
}

}  // namespace

IndexVerdict index_singular_normalized(const TruncatedSeries& s, const ClassifierOptions& opts) {
    require_zero_center(s, opts);
    if (std::abs(s[1] - 1.0) > std::max(opts.singular_band, 1e-9))
        throw PreconditionError("normalized criterion needs a_1 = 1");
    const int n = first_nonvanishing(s, opts);
    const Complex an = s[n];
    double scale = 0.0;
    for (int k = 1; k <= s.order(); ++k) scale = std::max(scale, std::abs(s[k]));
    const bool vanishes = std::abs(an.real()) <= opts.coefficient_zero * (1.0 + scale);

    IndexVerdict v;
    v.method = IndexMethod::NormalizedTheorem;
    v.value = verdict_from_sign(n, an.real(), vanishes);
    v.details = VerdictDetails{n, an, 0.0, std::arg(an), std::cos(std::arg(an))};
    if (vanishes) v.notes.emplace_back("Re(a_n) = 0: first two coefficients do not determine the index");
    return v;
}

IndexVerdict index_singular_general(const TruncatedSeries& s, const ClassifierOptions& opts) {
    require_zero_center(s, opts);
    if (std::abs(std::abs(s[1]) - 1.0) > std::max(opts.singular_band, 1e-9))
        throw PreconditionError("general criterion needs |a_1| = 1");
    const int n = first_nonvanishing(s, opts);
    const Complex an = s[n];
    const double theta = std::arg(s[1]);
    const double phi = std::arg(an);  // arg h^(n)(z0) = arg(n! a_n)
    const double eta = std::cos(phi - 0.5 * (n + 1) * theta);
    const bool vanishes = std::abs(eta) <= opts.eta_tolerance;

    IndexVerdict v;
    v.method = IndexMethod::GeneralTheorem;
    v.value = verdict_from_sign(n, eta, vanishes);
    v.details = VerdictDetails{n, an, theta, phi, eta};
    if (vanishes) v.notes.emplace_back("eta = 0: first two coefficients do not determine the index");
    return v;
}

TruncatedSeries normalize_series(const TruncatedSeries& s) {
    const double theta = std::arg(s[1]);
    std::vector<Complex> c(s.coeffs());
    for (int k = 2; k <= s.order(); ++k) c[k] *= std::polar(1.0, -0.5 * (k + 1) * theta);
    c[1] = 1.0;
    c[0] *= std::polar(1.0, -0.5 * theta);
    return TruncatedSeries(s.center(), std::move(c), s.exact_tail());
}

int index_binomial(Complex a, int n) {
    if (a == Complex{}) throw PreconditionError("binomial index needs a != 0");
    if (n < 2) throw PreconditionError("binomial index needs n >= 2");
    const bool imaginary = std::abs(a.real()) <= 1e-12 * std::abs(a);
    if (n % 2 == 0) return imaginary ? +1 : 0;
    return (imaginary || a.real() > 0) ? +1 : -1;
}

std::optional<std::pair<Complex, int>> binomial_form(const AnalyticFunction& h) {
    if (!h.is_polynomial()) return std::nullopt;
    const auto& c = h.rational()->num.coeffs();
    if (c.size() < 3) return std::nullopt;
    const double tiny = 1e-14;
    if (std::abs(c[0]) > tiny || std::abs(c[1] - 1.0) > tiny) return std::nullopt;
    const int n = static_cast<int>(c.size()) - 1;
    for (int k = 2; k < n; ++k)
        if (std::abs(c[k]) > tiny) return std::nullopt;
    return std::pair{c[n], n};
}

IndexVerdict index(const HarmonicMapping& f, Complex z0, const ClassifierOptions& opts) {
    const AnalyticFunction& h = f.h();
    if (h.is_rational() && !h.is_polynomial()) {
        for (const Pole& p : poles_of(h)) {
            if (std::abs(p.location - z0) <= opts.pole_match * std::max(1.0, std::abs(p.location))) {
                IndexVerdict v;
                v.value = -p.order;
                v.method = IndexMethod::RegularRule;
                v.notes.push_back("pole of order " + std::to_string(p.order));
                return v;
            }
        }
    }

    auto numeric = [&](IndexVerdict v) {
        v.theorem_attempt = v.method;
        v.value = poincare_index(f, z0, opts.numeric).value;
        v.method = IndexMethod::NumericFallback;
        return v;
    };

    Complex fz;
    try {
        fz = f(z0);
    } catch (const PoleError&) {
        IndexVerdict v;
        v.method = IndexMethod::NumericFallback;
        v.notes.emplace_back("singularity of a non-rational h; index measured numerically");
        v.value = poincare_index(f, z0, opts.numeric).value;
        return v;
    }
    if (std::abs(fz) > zero_residual_bound(opts.zero_residual, z0, f.h_prime()(z0)))
        throw NotExceptionalError("point is neither a zero of f nor a pole of h");

    const PointClass cls = classify_point(f, z0, opts.singular_band);
    if (cls.kind != PointClass::Kind::Singular) {
        IndexVerdict v;
        v.value = index_regular(cls);
        v.method = IndexMethod::RegularRule;
        v.notes.push_back(std::string(to_string(cls.kind)) + " zero, |h'| = " + std::to_string(cls.witness));
        return v;
    }

    IndexVerdict v;
    try {
        v = index_singular_general(f.local_series(z0, opts.order), opts);
    } catch (const PreconditionError& e) {
        v = IndexVerdict{};
        v.method = IndexMethod::GeneralTheorem;
        v.notes.emplace_back(e.what());
    }
    if (!v.indeterminate()) {
        if (!v.details || std::abs(v.details->eta) > opts.eta_defer) return v;
        v.notes.emplace_back("|eta| within the deferral band; index measured numerically");
        return numeric(std::move(v));
    }

    if (auto bin = binomial_form(h); bin && std::abs(z0) <= 1e-12) {
        v.theorem_attempt = v.method;
        v.value = index_binomial(bin->first, bin->second);
        v.method = IndexMethod::BinomialLemma;
        return v;
    }
    return numeric(std::move(v));
}

}  // namespace harmonic
