#include "harmonic/zero_finder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace harmonic {

unsigned default_thread_count() {
    if (const char* env = std::getenv("HARMONIC_INDEX_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

std::optional<Complex> safe_eval(const HarmonicMapping& f, Complex z) {
    try {
        const Complex v = f(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
        return v;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Newton (or descent) direction for F = (Re f, Im f) with the real Jacobian
// [[p - 1, -q], [q, p + 1]], p + iq = h'(z).
Complex search_direction(Complex fz, Complex dh, double singular_jacobian) {
    const double p = dh.real(), q = dh.imag();
    const double fx = fz.real(), fy = fz.imag();
    const double det = p * p + q * q - 1.0;
    if (std::abs(det) >= singular_jacobian) {
        return {-((p + 1.0) * fx + q * fy) / det, -(-q * fx + (p - 1.0) * fy) / det};
    }
    // Steepest descent on |F|^2 / 2 with the step that minimizes the linear model.
    const Complex g{(p - 1.0) * fx + q * fy, -q * fx + (p + 1.0) * fy};
    const double gg = std::norm(g);
    if (gg == 0.0) return {};
    const Complex jg{(p - 1.0) * g.real() - q * g.imag(), q * g.real() + (p + 1.0) * g.imag()};
    const double jgg = std::norm(jg);
    const double alpha = jgg > 0 ? gg / jgg : std::norm(fz) / gg;
    return -alpha * g;
}

}  // namespace

std::optional<Complex> refine_zero(const HarmonicMapping& f, Complex seed, const FinderOptions& opts) {
    Complex z = seed;
    auto fz0 = safe_eval(f, z);
    if (!fz0) return std::nullopt;
    Complex fz = *fz0;
    bool converged = false;
    int extra = 0;
    for (int it = 0; it < opts.max_newton_iterations; ++it) {
        Complex dh;
        try {
            dh = f.h_prime()(z);
        } catch (const Error&) {
            return std::nullopt;
        }
        if (std::abs(fz) <= opts.convergence * (1.0 + std::abs(dh))) {
            converged = true;
            if (fz == Complex{} || ++extra > 8) break;  // a few polishing steps past the tolerance
        }
        const Complex dir = search_direction(fz, dh, opts.singular_jacobian);
        if (dir == Complex{}) break;
        double lambda = 1.0;
        bool accepted = false;
        for (int m = 0; m <= opts.max_step_halvings; ++m, lambda *= 0.5) {
            const Complex zn = z + lambda * dir;
            if (auto fn = safe_eval(f, zn); fn && std::abs(*fn) < std::abs(fz)) {
                z = zn;
                fz = *fn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (!converged) {
        try {
            converged = std::abs(fz) <= opts.convergence * (1.0 + std::abs(f.h_prime()(z)));
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    if (!converged) return std::nullopt;
    return z;
}

namespace {

double coefficient_threshold(const TruncatedSeries& s, double rel) {
    double scale = 0.0;
    for (int k = 1; k <= s.order(); ++k) scale = std::max(scale, std::abs(s[k]));
    return rel * (1.0 + scale);
}

bool verifies_singular(const HarmonicMapping& f, Complex w, int vanishing_upto, const FinderOptions& opts) {
    const auto fw = safe_eval(f, w);
    if (!fw) return false;
    try {
        const TruncatedSeries s = taylor_at(f.h(), w, std::max(opts.classifier.order, vanishing_upto + 1));
        if (std::abs(*fw) > opts.convergence * (1.0 + std::abs(s[1]))) return false;
        if (std::abs(std::abs(s[1]) - 1.0) > 1e-10) return false;
        const double thr = coefficient_threshold(s, opts.classifier.coefficient_zero);
        for (int j = 2; j <= vanishing_upto; ++j)
            if (std::abs(s[j]) > thr) return false;
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::optional<Complex> newton_on_derivative(const HarmonicMapping& f, Complex z, int k) {
    Complex w = z;
    for (int it = 0; it < 60; ++it) {
        const TruncatedSeries s = taylor_at(f.h(), w, k + 1);
        const Complex denom = static_cast<double>(k + 1) * s[k + 1];
        if (denom == Complex{}) return std::nullopt;
        const Complex step = s[k] / denom;
        w -= step;
        if (std::abs(w - z) > 1e-3 * (1.0 + std::abs(z))) return std::nullopt;
        if (std::abs(step) <= 1e-17 * (1.0 + std::abs(w))) break;
    }
    return w;
}

std::optional<Complex> gauss_newton_critical(const HarmonicMapping& f, Complex z) {
    auto residual = [&](Complex w, double r[3], double jac[3][2]) {
        const TruncatedSeries s = taylor_at(f.h(), w, 2);
        const Complex fw = s[0] - std::conj(w);
        const Complex d1 = s[1], d2 = 2.0 * s[2];
        const double p = d1.real(), q = d1.imag();
        r[0] = fw.real();
        r[1] = fw.imag();
        r[2] = std::norm(d1) - 1.0;
        jac[0][0] = p - 1.0;
        jac[0][1] = -q;
        jac[1][0] = q;
        jac[1][1] = p + 1.0;
        const Complex cd = std::conj(d1) * d2;
        jac[2][0] = 2.0 * cd.real();
        jac[2][1] = -2.0 * cd.imag();
    };
    Complex w = z;
    try {
        for (int it = 0; it < 60; ++it) {
            double r[3], jac[3][2];
            residual(w, r, jac);
            double a = 0, b = 0, d = 0, g0 = 0, g1 = 0;
            for (int i = 0; i < 3; ++i) {
                a += jac[i][0] * jac[i][0];
                b += jac[i][0] * jac[i][1];
                d += jac[i][1] * jac[i][1];
                g0 += jac[i][0] * r[i];
                g1 += jac[i][1] * r[i];
            }
            const double det = a * d - b * b;
            if (det == 0.0) break;
            const Complex step{-(d * g0 - b * g1) / det, -(-b * g0 + a * g1) / det};
            const double norm0 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
            double lambda = 1.0;
            bool accepted = false;
            for (int m = 0; m < 30; ++m, lambda *= 0.5) {
                double rn[3], jn[3][2];
                residual(w + lambda * step, rn, jn);
                if (rn[0] * rn[0] + rn[1] * rn[1] + rn[2] * rn[2] < norm0) {
                    w += lambda * step;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            if (std::abs(w - z) > 1e-3 * (1.0 + std::abs(z))) return std::nullopt;
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    return w;
}

}  // namespace

Complex polish_singular_zero(const HarmonicMapping& f, Complex z, const FinderOptions& opts) {
    try {
        if (std::abs(std::abs(f.h_prime()(z)) - 1.0) > 1e-4) return z;
    } catch (const Error&) {
        return z;
    }
    const int top = std::min(6, opts.classifier.order - 1);
    for (int k = top; k >= 2; --k) {
        try {
            if (auto w = newton_on_derivative(f, z, k); w && verifies_singular(f, *w, k, opts)) return *w;
        } catch (const Error&) {
        }
    }
    if (auto w = gauss_newton_critical(f, z); w && verifies_singular(f, *w, 1, opts)) return *w;
    return z;
}

SearchRegion default_region(const HarmonicMapping& f, int grid) {
    SearchRegion region;
    region.grid = grid;
    if (!f.h().is_rational()) return region;
    const RationalForm& h = *f.h().rational();
    double m = 0.0;
    for (const Root& r : roots(h.num)) m = std::max(m, std::abs(r.location));
    for (const Root& r : roots(h.den)) m = std::max(m, std::abs(r.location));
    const Polynomial fixed = fixed_point_polynomial(h);
    if (fixed.degree() > 0 && fixed.degree() <= 64) {
        for (Complex z : durand_kerner(fixed)) {
            if (auto v = safe_eval(f, z); v && std::abs(*v) <= 1e-4 * (1.0 + std::abs(z)))
                m = std::max(m, std::abs(z));
        }
    }
    region.half_width = 2.0 * (1.0 + m);
    return region;
}

namespace {

std::vector<Complex> grid_seeds(const HarmonicMapping& f, const SearchRegion& region) {
    const int g = region.grid;
    const double step = 2.0 * region.half_width / (g - 1);
    auto node = [&](int i, int j) {
        return region.center + Complex{-region.half_width + step * i, -region.half_width + step * j};
    };
    std::vector<double> mod(static_cast<std::size_t>(g) * g, std::numeric_limits<double>::infinity());
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            if (auto v = safe_eval(f, node(i, j))) mod[static_cast<std::size_t>(i) * g + j] = std::abs(*v);

    std::vector<Complex> seeds;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double m = mod[static_cast<std::size_t>(i) * g + j];
            if (!std::isfinite(m)) continue;
            bool minimal = true;
            for (int di = -1; di <= 1 && minimal; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int a = i + di, b = j + dj;
                    if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= g || b >= g) continue;
                    if (mod[static_cast<std::size_t>(a) * g + b] < m) {
                        minimal = false;
                        break;
                    }
                }
            }
            if (minimal) seeds.push_back(node(i, j));
        }
    }
    return seeds;
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct Located {
    Complex z;
    double residual;
};

}  // namespace

ZeroSearch find_zeros(const HarmonicMapping& f, const SearchRegion& region, const FinderOptions& opts) {
    if (!(region.half_width > 0)) throw PreconditionError("search region half width must be positive");
    if (region.grid < 8) throw PreconditionError("search grid needs at least 8 nodes per axis");

    std::vector<Complex> seeds = grid_seeds(f, region);
    if (opts.fixed_point_seeds && f.h().is_rational()) {
        const Polynomial fixed = fixed_point_polynomial(*f.h().rational());
        if (fixed.degree() > 0 && fixed.degree() <= 64)
            for (Complex z : durand_kerner(fixed))
                if (region.contains(z, 1e-6)) seeds.push_back(z);
    }

    const unsigned threads = opts.threads ? opts.threads : default_thread_count();
    std::vector<std::optional<Located>> refined(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t i) {
        auto z = refine_zero(f, seeds[i], opts);
        if (!z) return;
        const Complex w = polish_singular_zero(f, *z, opts);
        const auto v = safe_eval(f, w);
        if (!v || !region.contains(w, 1e-9)) return;
        if (std::abs(*v) <= zero_residual_bound(opts.max_residual, w, f.h_prime()(w)))
            refined[i] = Located{w, std::abs(*v)};
    });

    // Merge in seed order so the result does not depend on scheduling.
    std::vector<Located> found;
    for (const auto& r : refined) {
        if (!r) continue;
        auto same = std::find_if(found.begin(), found.end(), [&](const Located& l) {
            return std::abs(l.z - r->z) <= opts.dedupe_radius * std::max(1.0, std::abs(l.z));
        });
        if (same == found.end()) found.push_back(*r);
        else if (r->residual < same->residual) *same = *r;
    }
    std::sort(found.begin(), found.end(), [](const Located& a, const Located& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });

    ZeroSearch out;
    if (found.size() > opts.max_points) {
        found.resize(opts.max_points);
        out.budget_exceeded = true;
        out.notes.emplace_back("point budget exceeded; zero list is partial");
    }

    std::vector<Complex> exceptional;
    for (const Located& l : found) exceptional.push_back(l.z);
    if (f.h().is_rational() && !f.h().is_polynomial())
        for (const Pole& p : poles_of(f.h())) exceptional.push_back(p.location);

    ClassifierOptions copts = opts.classifier;
    copts.singular_band = opts.singular_band;
    copts.eta_defer = opts.eta_defer;
    const ComplexFunction fn = [&f](Complex z) { return f(z); };

    out.zeros.resize(found.size());
    parallel_for(found.size(), threads, [&](std::size_t i) {
        ExceptionalPoint& p = out.zeros[i];
        p.location = found[i].z;
        p.kind = ExceptionalPoint::Kind::Zero;
        p.residual = found[i].residual;
        p.point_class = classify_point(f, p.location, opts.singular_band);
        const double r = auto_index_radius(p.location, exceptional, copts.numeric.default_radius);
        p.isolated = is_isolated_zero(fn, p.location, r, copts.numeric.nonisolated_tolerance,
                                      copts.numeric.nonisolated_run);
        if (!p.isolated) return;
        ClassifierOptions local = copts;
        if (!local.numeric.r_start && local.numeric.known_points.empty()) {
            for (Complex e : exceptional)
                if (e != p.location) local.numeric.known_points.push_back(e);
        }
        try {
            p.verdict = index(f, p.location, local);
        } catch (const NonIsolatedZeroError&) {
            p.isolated = false;
        }
    });
    for (const auto& p : out.zeros) {
        if (!p.isolated) out.non_isolated = true;
    }
    if (out.non_isolated) out.notes.emplace_back("non-isolated zeros detected; no index reported for them");
    return out;
}

int max_zero_bound(const AnalyticFunction& h) {
    const RationalForm& r = h.require_rational();
    if (r.degree() < 2) throw PreconditionError("zero bound needs rational h of degree >= 2");
    return 5 * (r.degree() - 1);
}

int expected_global_winding(const AnalyticFunction& h) {
    const RationalForm& r = h.require_rational();
    if (r.degree() < 2) throw PreconditionError("global winding needs rational h of degree >= 2");
    const int j = r.num_degree(), k = r.den_degree();
    if (j <= k) return -1;
    if (j - k >= 2) return j - k;
    throw UncoveredTypeError("rational type (k+1, k) is not covered by the global winding formula");
}

}  // namespace harmonic
