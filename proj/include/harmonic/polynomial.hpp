#pragma once

#include <span>
#include <vector>

#include "harmonic/errors.hpp"

namespace harmonic {

/// Dense complex polynomial, coefficients in ascending order.
/// The stored form never has a zero leading coefficient (the zero
/// polynomial is the empty coefficient list).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial constant(Complex c) { return Polynomial({c}); }
    static Polynomial identity() { return Polynomial({0.0, 1.0}); }
    /// lead * prod (z - r)
    static Polynomial from_roots(std::span<const Complex> roots, Complex lead = 1.0);

    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
    Complex coeff(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Complex{};
    }
    double max_abs_coeff() const;

    Complex operator()(Complex z) const;

    Polynomial derivative() const;
    /// Coefficients conjugated: z -> conj(p(conj z)).
    Polynomial conjugated() const;
    /// Quotient by (z - root); the remainder is dropped.
    Polynomial deflate(Complex root) const;
    Polynomial scaled(Complex s) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const { return scaled(-1.0); }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<Complex> coeffs_;
};

Polynomial pow(const Polynomial& p, int n);

struct RootOptions {
    double step_tolerance = 1e-12;
    int max_iterations = 500;
    double cluster_radius = 1e-7;
};

/// Raw Durand-Kerner (Weierstrass) approximations, one per degree.
std::vector<Complex> durand_kerner(const Polynomial& p, const RootOptions& opts = {});

struct Root {
    Complex location;
    int multiplicity = 1;
};

/// Roots with multiplicities. Approximations closer than `cluster_radius`
/// are merged; wider clusters are merged too when their centroid is
/// numerically a root of the matching multiplicity.
std::vector<Root> roots(const Polynomial& p, const RootOptions& opts = {});

/// Reduced p/q. Polynomial when the denominator is constant (then `den`
/// is the constant 1 and the constant has been folded into `num`).
struct RationalForm {
    Polynomial num;
    Polynomial den;

    int num_degree() const { return num.degree() < 0 ? 0 : num.degree(); }
    int den_degree() const { return den.degree(); }
    int degree() const { return num_degree() > den_degree() ? num_degree() : den_degree(); }
    bool is_polynomial() const { return den.degree() == 0; }
    Complex operator()(Complex z) const { return num(z) / den(z); }
};

/// Builds num/den, cancels common roots matching within `match_tolerance`
/// and normalizes the denominator to be monic.
RationalForm reduce_rational(const Polynomial& num, const Polynomial& den,
                             double match_tolerance = 1e-8);

/// Polynomial whose roots contain every zero of h(z) - conj(z) for rational h:
/// such zeros solve conj(h)(h(z)) = z with conj(h)(w) = conj(h(conj w)).
/// Returns the zero polynomial when that identity holds everywhere.
Polynomial fixed_point_polynomial(const RationalForm& h);

}  // namespace harmonic
