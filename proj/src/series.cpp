#include "harmonic/series.hpp"

#include <algorithm>
#include <cmath>

namespace harmonic {

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.center() != b.center() || a.order() != b.order())
        throw PreconditionError("series arithmetic needs equal center and order");
}

}  // namespace

TruncatedSeries::TruncatedSeries(Complex center, std::vector<Complex> coeffs, bool exact_tail)
    : center_(center), coeffs_(std::move(coeffs)), exact_tail_(exact_tail) {
    if (coeffs_.empty()) throw PreconditionError("series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::constant(Complex c, Complex center, int order) {
    std::vector<Complex> a(static_cast<std::size_t>(order) + 1);
    a[0] = c;
    return {center, std::move(a), true};
}

TruncatedSeries TruncatedSeries::variable(Complex center, int order) {
    std::vector<Complex> a(static_cast<std::size_t>(order) + 1);
    a[0] = center;
    if (order >= 1) a[1] = 1.0;
    return {center, std::move(a), order >= 1};
}

int TruncatedSeries::exact_degree() const {
    int d = order();
    while (d > 0 && coeffs_[d] == Complex{}) --d;
    return d;
}

Complex TruncatedSeries::sum_at(Complex z) const {
    const Complex w = z - center_;
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
    return acc;
}

TruncatedSeries TruncatedSeries::with_constant(Complex a0) const {
    TruncatedSeries s = *this;
    s.coeffs_[0] = a0;
    return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    std::vector<Complex> c(a.coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
    return {a.center_, std::move(c), a.exact_tail_ && b.exact_tail_};
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    std::vector<Complex> c(a.coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeffs_[k] - b.coeffs_[k];
    return {a.center_, std::move(c), a.exact_tail_ && b.exact_tail_};
}

TruncatedSeries TruncatedSeries::operator-() const {
    std::vector<Complex> c(coeffs_);
    for (Complex& v : c) v = -v;
    return {center_, std::move(c), exact_tail_};
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    const std::size_t n = a.coeffs_.size();
    std::vector<Complex> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    const bool exact = a.exact_tail_ && b.exact_tail_ && a.exact_degree() + b.exact_degree() <= a.order();
    return {a.center_, std::move(c), exact};
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    double scale = 0.0;
    for (Complex v : b.coeffs_) scale = std::max(scale, std::abs(v));
    const Complex b0 = b.coeffs_[0];
    if (std::abs(b0) <= 1e-13 * scale || b0 == Complex{})
        throw SeriesError("series division by a denominator vanishing at the center");
    const std::size_t n = a.coeffs_.size();
    std::vector<Complex> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = a.coeffs_[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= b.coeffs_[j] * c[k - j];
        c[k] = acc / b0;
    }
    const bool exact = a.exact_tail_ && b.exact_tail_ && b.exact_degree() == 0;
    return {a.center_, std::move(c), exact};
}

TruncatedSeries pow(const TruncatedSeries& s, int n) {
    if (n < 0) throw PreconditionError("negative series power");
    TruncatedSeries r = TruncatedSeries::constant(1.0, s.center(), s.order());
    for (int k = 0; k < n; ++k) r = r * s;
    return r;
}

TruncatedSeries exp(const TruncatedSeries& s) {
    const int n = s.order();
    std::vector<Complex> e(static_cast<std::size_t>(n) + 1);
    e[0] = std::exp(s[0]);
    for (int k = 1; k <= n; ++k) {
        Complex acc{};
        for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * s[j] * e[k - j];
        e[k] = acc / static_cast<double>(k);
    }
    bool constant = true;
    for (int k = 1; k <= n; ++k) constant = constant && s[k] == Complex{};
    return {s.center(), std::move(e), constant && s.exact_tail()};
}

}  // namespace harmonic
