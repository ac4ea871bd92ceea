#include "harmonic/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace harmonic {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, Complex lead) {
    Polynomial p = constant(lead);
    for (Complex r : roots) p = p * Polynomial({-r, 1.0});
    return p;
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (Complex c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::conjugated() const {
    std::vector<Complex> c(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [](Complex v) { return std::conj(v); });
    return Polynomial(std::move(c));
}

Polynomial Polynomial::deflate(Complex root) const {
    if (coeffs_.size() <= 1) return {};
    const std::size_t n = coeffs_.size() - 1;
    std::vector<Complex> q(n);
    Complex carry = coeffs_[n];
    for (std::size_t k = n; k-- > 0;) {
        q[k] = carry;
        carry = coeffs_[k] + carry * root;
    }
    return Polynomial(std::move(q));
}

Polynomial Polynomial::scaled(Complex s) const {
    std::vector<Complex> c(coeffs_);
    for (Complex& v : c) v *= s;
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial pow(const Polynomial& p, int n) {
    if (n < 0) throw PreconditionError("negative polynomial power");
    Polynomial r = Polynomial::constant(1.0);
    for (int k = 0; k < n; ++k) r = r * p;
    return r;
}

std::vector<Complex> durand_kerner(const Polynomial& p, const RootOptions& opts) {
    const int n = p.degree();
    if (n <= 0) return {};
    std::vector<Complex> a(p.coeffs());
    const Complex lead = a.back();
    for (Complex& c : a) c /= lead;
    if (n == 1) return {-a[0]};

    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(a[k]));
    radius += 1.0;

    const Polynomial monic(a);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        double max_step = 0.0;
        for (int k = 0; k < n; ++k) {
            Complex denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (denom == Complex{}) denom = 1e-300;
            const Complex step = monic(z[k]) / denom;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (max_step < opts.step_tolerance) break;
    }

    // Newton polish; only accepted while the residual decreases.
    const Polynomial d = monic.derivative();
    for (Complex& r : z) {
        for (int k = 0; k < 3; ++k) {
            const Complex dv = d(r);
            if (dv == Complex{}) break;
            const Complex next = r - monic(r) / dv;
            if (std::abs(monic(next)) < std::abs(monic(r))) r = next;
            else break;
        }
    }
    return z;
}

namespace {

struct Cluster {
    Complex sum;
    int count = 0;
    Complex centroid() const { return sum / static_cast<double>(count); }
};

// Taylor coefficient b_k of p about c together with the magnitude of the
// terms that produced it, used as a cancellation scale.
std::pair<Complex, double> taylor_coefficient(const Polynomial& p, Complex c, int k) {
    Complex value{};
    double scale = 0.0;
    const auto& a = p.coeffs();
    for (int j = k; j < static_cast<int>(a.size()); ++j) {
        double binom = 1.0;
        for (int i = 1; i <= k; ++i) binom = binom * (j - k + i) / i;
        const Complex term = a[j] * binom * std::pow(c, j - k);
        value += term;
        scale += std::abs(term);
    }
    return {value, scale};
}

bool is_root_of_multiplicity(const Polynomial& p, Complex c, int m) {
    for (int k = 0; k < m; ++k) {
        auto [value, scale] = taylor_coefficient(p, c, k);
        if (std::abs(value) > 1e-12 * std::max(scale, 1e-300)) return false;
    }
    return true;
}

// An m-fold root of p is a simple root of p^(m-1); Newton on it pins the
// cluster center down far better than the centroid of the spread roots.
std::optional<Complex> refine_multiple_root(const Polynomial& p, Complex c0, int m) {
    Complex c = c0;
    for (int it = 0; it < 50; ++it) {
        const Complex d = static_cast<double>(m) * taylor_coefficient(p, c, m).first;
        if (d == Complex{}) break;
        const Complex step = taylor_coefficient(p, c, m - 1).first / d;
        c -= step;
        if (std::abs(c - c0) > 1e-3 * (1.0 + std::abs(c0))) return std::nullopt;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(c))) break;
    }
    if (!is_root_of_multiplicity(p, c, m)) return std::nullopt;
    return c;
}

std::vector<Cluster> merge(std::vector<Cluster> clusters, auto&& accept) {
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
                if (accept(clusters[i], clusters[j])) {
                    clusters[i].sum += clusters[j].sum;
                    clusters[i].count += clusters[j].count;
                    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
        }
    }
    return clusters;
}

}  // namespace

std::vector<Root> roots(const Polynomial& p, const RootOptions& opts) {
    std::vector<Cluster> clusters;
    for (Complex z : durand_kerner(p, opts)) clusters.push_back({z, 1});

    clusters = merge(std::move(clusters), [&](const Cluster& a, const Cluster& b) {
        const Complex ca = a.centroid(), cb = b.centroid();
        return std::abs(ca - cb) <= opts.cluster_radius * std::max(1.0, std::abs(ca));
    });
    // Multiple roots perturbed by rounding spread like eps^(1/m); accept a
    // wider cluster only when it really surrounds an m-fold root.
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
                const Complex ca = clusters[i].centroid(), cb = clusters[j].centroid();
                if (std::abs(ca - cb) > 1e-3 * (1.0 + std::abs(ca))) continue;
                const int m = clusters[i].count + clusters[j].count;
                const Complex c = (clusters[i].sum + clusters[j].sum) / static_cast<double>(m);
                if (auto r = refine_multiple_root(p, c, m)) {
                    clusters[i] = {*r * static_cast<double>(m), m};
                    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
        }
    }

    std::vector<Root> out;
    out.reserve(clusters.size());
    for (const Cluster& c : clusters) out.push_back({c.centroid(), c.count});
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

namespace {

Polynomial trim_relative(const Polynomial& p, double rel) {
    std::vector<Complex> c = p.coeffs();
    const double scale = p.max_abs_coeff();
    while (!c.empty() && std::abs(c.back()) <= rel * scale) c.pop_back();
    return Polynomial(std::move(c));
}

}  // namespace

RationalForm reduce_rational(const Polynomial& num_in, const Polynomial& den_in, double match_tolerance) {
    if (den_in.is_zero()) throw PreconditionError("rational function with zero denominator");
    Polynomial num = trim_relative(num_in, 1e-14);
    Polynomial den = trim_relative(den_in, 1e-14);
    if (den.is_zero()) throw PreconditionError("rational function with zero denominator");

    if (num.is_zero()) return {Polynomial{}, Polynomial::constant(1.0)};

    if (den.degree() > 0 && num.degree() > 0) {
        std::vector<Root> num_roots = roots(num);
        for (const Root& d : roots(den)) {
            for (Root& n : num_roots) {
                if (n.multiplicity == 0) continue;
                if (std::abs(n.location - d.location) > match_tolerance * std::max(1.0, std::abs(d.location)))
                    continue;
                const int common = std::min(n.multiplicity, d.multiplicity);
                const Complex r = 0.5 * (n.location + d.location);
                for (int k = 0; k < common; ++k) {
                    num = num.deflate(r);
                    den = den.deflate(r);
                }
                n.multiplicity -= common;
                break;
            }
        }
    }

    const Complex lead = den.leading();
    num = num.scaled(1.0 / lead);
    den = den.scaled(1.0 / lead);
    if (den.degree() == 0) den = Polynomial::constant(1.0);
    return {num, den};
}

Polynomial fixed_point_polynomial(const RationalForm& h) {
    const Polynomial& p = h.num;
    const Polynomial& q = h.den;
    const int d = h.degree();

    std::vector<Polynomial> p_pow(d + 1), q_pow(d + 1);
    p_pow[0] = q_pow[0] = Polynomial::constant(1.0);
    for (int k = 1; k <= d; ++k) {
        p_pow[k] = p_pow[k - 1] * p;
        q_pow[k] = q_pow[k - 1] * q;
    }
    Polynomial a, b;
    for (int k = 0; k <= p.degree(); ++k) a = a + (p_pow[k] * q_pow[d - k]).scaled(std::conj(p.coeff(k)));
    for (int k = 0; k <= q.degree(); ++k) b = b + (p_pow[k] * q_pow[d - k]).scaled(std::conj(q.coeff(k)));
    const Polynomial zb = Polynomial::identity() * b;
    const Polynomial diff = a - zb;
    const double scale = std::max(a.max_abs_coeff(), zb.max_abs_coeff());
    if (diff.max_abs_coeff() <= 1e-12 * scale) return {};
    return trim_relative(diff, 1e-14);
}

}  // namespace harmonic
