#pragma once

#include "harmonic/function.hpp"

namespace harmonic {

/// f(z) = h(z) - conj(z).
class HarmonicMapping {
public:
    explicit HarmonicMapping(AnalyticFunction h) : h_(std::move(h)), dh_(derivative(h_)) {}
    static HarmonicMapping parse(std::string_view text) { return HarmonicMapping(parse_function(text)); }

    const AnalyticFunction& h() const noexcept { return h_; }
    const AnalyticFunction& h_prime() const noexcept { return dh_; }

    Complex operator()(Complex z) const { return h_(z) - std::conj(z); }

    /// Jacobian |h'(z)|^2 - 1 of (Re f, Im f).
    double jacobian(Complex z) const { return std::norm(dh_(z)) - 1.0; }

    /// Local expansion sum_{k>=1} a_k (z - z0)^k - conj(z - z0) of f about z0,
    /// returned as h's series with the constant term replaced by f(z0).
    TruncatedSeries local_series(Complex z0, int order = kDefaultTaylorOrder) const {
        return taylor_at(h_, z0, order).with_constant((*this)(z0));
    }

private:
    AnalyticFunction h_;
    AnalyticFunction dh_;
};

}  // namespace harmonic
