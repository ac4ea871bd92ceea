#pragma once

#include <vector>

#include "harmonic/errors.hpp"

namespace harmonic {

/// Truncated Taylor expansion sum_{k=0}^{N} a_k (z - center)^k.
///
/// Arithmetic between two series requires the same center and order and
/// produces a series with that center and order. `exact_tail` records that
/// the truncation dropped nothing (a polynomial of degree <= N); it survives
/// addition and multiplication only when the product degree still fits.
class TruncatedSeries {
public:
    TruncatedSeries(Complex center, std::vector<Complex> coeffs, bool exact_tail = false);

    static TruncatedSeries constant(Complex c, Complex center, int order);
    /// The series of z itself: center + (z - center).
    static TruncatedSeries variable(Complex center, int order);

    Complex center() const noexcept { return center_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    Complex operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    bool exact_tail() const noexcept { return exact_tail_; }

    /// Value of the truncated sum at z.
    Complex sum_at(Complex z) const;
    /// Copy with the constant term replaced.
    TruncatedSeries with_constant(Complex a0) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    /// Throws SeriesError when the constant term of `b` vanishes.
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries operator-() const;

private:
    // Degree of the captured polynomial when exact_tail holds.
    int exact_degree() const;

    Complex center_;
    std::vector<Complex> coeffs_;
    bool exact_tail_ = false;
};

TruncatedSeries pow(const TruncatedSeries& s, int n);
/// exp composed with a series: e' = e * s', i.e. k e_k = sum_j j s_j e_{k-j}.
TruncatedSeries exp(const TruncatedSeries& s);

}  // namespace harmonic
