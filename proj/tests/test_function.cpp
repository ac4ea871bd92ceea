#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace harmonic;
using namespace testing_support;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

bool same_rational(const RationalForm& a, const RationalForm& b, double tol) {
    if (a.num.degree() != b.num.degree() || a.den.degree() != b.den.degree()) return false;
    for (int k = 0; k <= a.num.degree(); ++k)
        if (!close(a.num.coeff(k), b.num.coeff(k), tol)) return false;
    for (int k = 0; k <= a.den.degree(); ++k)
        if (!close(a.den.coeff(k), b.den.coeff(k), tol)) return false;
    return true;
}

}  // namespace

TEST_CASE("parse: rational types of the worked examples") {
    const auto h = parse_function("z/(z^2-1)");
    REQUIRE(h.is_rational());
    CHECK(rational_type(h) == RationalType{1, 2});

    const auto g = parse_function("2*z^3 + 1/(8*z)");
    CHECK(rational_type(g) == RationalType{4, 1});
    CHECK(g.rational()->degree() == 4);

    const auto id = parse_function("z");
    REQUIRE(id.is_polynomial());
    CHECK(id.rational()->num.degree() == 1);
    CHECK(id.rational()->num.coeff(1) == Complex(1.0));
    CHECK(id.rational()->num.coeff(0) == Complex(0.0));
}

TEST_CASE("parse: literals, precedence and exp") {
    CHECK(parse_function("2i")(0.0) == Complex(0, 2));
    CHECK(parse_function("i")(0.0) == Complex(0, 1));
    CHECK(parse_function("1e-3")(0.0) == Complex(1e-3));
    CHECK(parse_function("-z^2")(2.0) == Complex(-4.0));
    CHECK(parse_function("2*z^3")(1.0) == Complex(2.0));
    CHECK(parse_function("z^(3)")(2.0) == Complex(8.0));
    CHECK(parse_function(" ( 1 + 2i ) * z ")(1.0) == Complex(1, 2));
    CHECK_FALSE(parse_function("exp(z)").is_rational());
    CHECK(parse_function("exp(0)").is_polynomial());
}

TEST_CASE("parse: errors carry a position") {
    auto position_of = [](const char* text) -> long {
        try {
            parse_function(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position_of("z/(") == 3);
    CHECK(position_of("z + w") == 4);
    CHECK(position_of("z^2.5") >= 0);
    CHECK(position_of("z^-1") >= 0);
    CHECK(position_of("z^z") >= 0);
    CHECK(position_of("(z") >= 0);
    CHECK(position_of("z)") >= 0);
    CHECK(position_of("") >= 0);
    CHECK(position_of("1/(z-z)") >= 0);
}

TEST_CASE("eval: examples") {
    const double r2 = std::sqrt(2.0);
    CHECK(close(parse_function("z/(z^2-1)")(r2), r2 / (r2 * r2 - 1.0), 1e-14));
    CHECK(parse_function("exp(z)-1")(0.0) == Complex(0.0));
    CHECK(parse_function("-z/(z^2-1)")(0.0) == Complex(0.0));
}

TEST_CASE("eval: poles raise PoleError with the location") {
    const auto h = parse_function("z/(z^2-1)");
    try {
        (void)h(1.0);
        FAIL("expected PoleError");
    } catch (const PoleError& e) {
        CHECK(e.where() == Complex(1.0));
    }
    CHECK_THROWS_AS((void)parse_function("1/z")(0.0), PoleError);
}

TEST_CASE("derivative: examples") {
    const auto h = parse_function("z/(z^2-1)");
    const auto dh = derivative(h);
    for (int k = 0; k < 20; ++k) {
        const Complex z = random_in_annulus(0.1, 3.0);
        if (std::abs(z * z - 1.0) < 0.1) continue;
        const Complex expected = (z * z + 1.0) / ((z * z - 1.0) * (z * z - 1.0));
        CHECK(std::abs(std::abs(dh(z)) - std::abs(expected)) <= 1e-12 * (1 + std::abs(expected)));
    }

    const auto g = derivative(parse_function("2*z^3+1/(8*z)"));
    for (int k = 0; k < 20; ++k) {
        const Complex z = random_in_annulus(0.2, 2.0);
        CHECK(close(g(z), 6.0 * z * z - 1.0 / (8.0 * z * z), 1e-12 * (1 + std::abs(g(z)))));
    }

    const auto c = derivative(parse_function("3+2i"));
    CHECK(c(0.7) == Complex(0.0));
    CHECK(c.is_polynomial());
}

TEST_CASE("derivative: exp chain rule") {
    const auto d = derivative(parse_function("exp(z^2)"));
    for (int k = 0; k < 10; ++k) {
        const Complex z = random_in_disk();
        CHECK(close(d(z), 2.0 * z * std::exp(z * z), 1e-12));
    }
}

TEST_CASE("taylor_at: examples") {
    const auto s = taylor_at(parse_function("z/(1-z^2)"), 0.0, 5);
    REQUIRE(s.order() == 5);
    const double expected[] = {0, 1, 0, 1, 0, 1};
    for (int k = 0; k <= 5; ++k) CHECK(close(s[k], expected[k], 1e-14));

    const Complex z0(0, 0.5);
    const auto t = taylor_at(parse_function("2*z^3+1/(8*z)"), z0, 4);
    // a_0 = h(z0) = 2 z0^3 + 1 / (8 z0) = conj(z0), as f(z0) = 0
    CHECK(close(t[0], 2.0 * z0 * z0 * z0 + 1.0 / (8.0 * z0), 1e-13));
    CHECK(close(t[0], std::conj(z0), 1e-13));
    CHECK(close(t[1], -1.0, 1e-13));
    CHECK(close(t[2], Complex(0, 4), 1e-12));
    CHECK(close(t[3], 0.0, 1e-12));
    CHECK(t.center() == Complex(0, 0.5));

    const auto e = taylor_at(parse_function("exp(z)-1"), 0.0, 3);
    CHECK(close(e[0], 0.0, 1e-15));
    CHECK(close(e[1], 1.0, 1e-15));
    CHECK(close(e[2], 0.5, 1e-15));
    CHECK(close(e[3], 1.0 / 6.0, 1e-15));
}

TEST_CASE("taylor_at: errors at poles") {
    CHECK_THROWS_AS(taylor_at(parse_function("1/z"), 0.0, 4), PoleError);
    CHECK_THROWS_AS(taylor_at(parse_function("z/(z^2-1)"), -1.0, 4), PoleError);
}

TEST_CASE("series: division by a series with vanishing constant term") {
    const auto num = TruncatedSeries::constant(1.0, 0.0, 4);
    const auto den = TruncatedSeries::variable(0.0, 4);
    CHECK_THROWS_AS(num / den, SeriesError);
}

TEST_CASE("series: exact tail for polynomials") {
    CHECK(taylor_at(parse_function("z^3+z"), 0.5, 16).exact_tail());
    CHECK_FALSE(taylor_at(parse_function("1/(z-3)"), 0.5, 16).exact_tail());
}

TEST_CASE("poles_of: examples") {
    auto p = poles_of(parse_function("z/(z^2-1)"));
    REQUIRE(p.size() == 2);
    std::sort(p.begin(), p.end(), [](const Pole& a, const Pole& b) { return a.location.real() < b.location.real(); });
    CHECK(close(p[0].location, -1.0, 1e-12));
    CHECK(close(p[1].location, 1.0, 1e-12));
    CHECK(p[0].order == 1);
    CHECK(p[1].order == 1);

    const auto q = poles_of(parse_function("2*z^3+1/(8*z)"));
    REQUIRE(q.size() == 1);
    CHECK(close(q[0].location, 0.0, 1e-12));
    CHECK(q[0].order == 1);

    CHECK(poles_of(parse_function("z^2")).empty());
    CHECK_THROWS_AS(poles_of(parse_function("exp(z)")), NotRationalError);
}

TEST_CASE("poles_of: multiplicities and cancellation") {
    const auto p = poles_of(parse_function("1/((z-1)^3*(z+2i))"));
    REQUIRE(p.size() == 2);
    int total = 0;
    for (const auto& pole : p) total += pole.order;
    CHECK(total == 4);

    const auto reduced = parse_function("(z^2-1)/(z-1)");
    CHECK(reduced.is_polynomial());
    CHECK(close(reduced.rational()->num.coeff(0), 1.0, 1e-12));
    CHECK(close(reduced.rational()->num.coeff(1), 1.0, 1e-12));
}

TEST_CASE("property: poles recovered from a factored denominator") {
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 1 + trial % 4;
        std::vector<Complex> roots;
        std::string den;
        for (int k = 0; k < m; ++k) {
            Complex r;
            bool separated = false;
            while (!separated) {
                r = random_in_disk(2.0);
                separated = true;
                for (Complex s : roots) separated = separated && std::abs(r - s) > 0.05;
            }
            roots.push_back(r);
            den += (k ? "*" : "") + std::string("(z-(") + format_complex(r) + "))";
        }
        const auto poles = poles_of(parse_function("(z^" + std::to_string(m + 1) + "+3)/(" + den + ")"));
        REQUIRE(poles.size() == roots.size());
        for (Complex r : roots) {
            double best = 1e9;
            for (const auto& p : poles) best = std::min(best, std::abs(p.location - r));
            CHECK(best <= 1e-8);
        }
    }
}

TEST_CASE("property: recentering reconstructs polynomials") {
    for (int trial = 0; trial < 30; ++trial) {
        const int deg = 1 + trial % 7;
        const auto h = parse_function(random_polynomial_text(deg));
        const Complex c = random_in_disk(2.0);
        const auto s = taylor_at(h, c, deg);
        for (int k = 0; k < 5; ++k) {
            const Complex z = random_in_disk(3.0);
            const Complex v = h(z);
            CHECK(std::abs(s.sum_at(z) - v) <= 1e-9 * (1.0 + std::abs(v)));
        }
    }
}

TEST_CASE("property: derivative agrees with finite differences") {
    const char* functions[] = {"z/(z^2-1)", "2*z^3+1/(8*z)", "exp(z)-1", "z*exp(2*z)/(z+3)", "(z^4-2i*z)/(z^2+z+1)"};
    const double eps = 1e-6;
    for (const char* text : functions) {
        const auto h = parse_function(text);
        const auto dh = derivative(h);
        for (int k = 0; k < 20; ++k) {
            const Complex z = random_in_annulus(0.2, 0.8);
            const Complex fd = (h(z + eps) - h(z)) / eps;
            CHECK(std::abs(fd - dh(z)) <= 1e-3 * (1.0 + std::abs(dh(z))));
        }
    }
}

TEST_CASE("property: series ring laws at a fixed center") {
    for (int trial = 0; trial < 20; ++trial) {
        const Complex c = random_in_disk();
        const int n = 8;
        auto random_series = [&] {
            std::vector<Complex> a(n + 1);
            for (auto& x : a) x = random_in_disk();
            return TruncatedSeries(c, a);
        };
        const auto A = random_series(), B = random_series(), C = random_series();
        const auto lhs = (A + B) * C;
        const auto rhs = A * C + B * C;
        CHECK(lhs.center() == c);
        REQUIRE(lhs.order() == n);
        for (int k = 0; k <= n; ++k) CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-12);
        const auto assoc_l = (A * B) * C, assoc_r = A * (B * C);
        for (int k = 0; k <= n; ++k) CHECK(std::abs(assoc_l[k] - assoc_r[k]) <= 1e-12);
    }
}

TEST_CASE("property: exp series agrees with evaluation on the unit disk") {
    const char* functions[] = {"exp(z)", "exp(z)-1", "z*exp(z)", "exp(z^2)", "exp(z)/(z+3)"};
    for (const char* text : functions) {
        const auto h = parse_function(text);
        const auto s = taylor_at(h, 0.0, 24);
        for (int k = 0; k < 20; ++k) {
            const Complex z = random_in_disk();
            CHECK(std::abs(s.sum_at(z) - h(z)) <= 1e-9);
        }
    }
}

TEST_CASE("printing round-trips through the parser") {
    const char* functions[] = {"z/(z^2-1)", "2*z^3 + 1/(8*z)", "-z^3+i*z^2+z", "(1.5-2i)*z^4 - z/(z+0.25i)",
                               "exp(z)-1", "-(z+1)^3"};
    for (const char* text : functions) {
        const auto h = parse_function(text);
        const auto again = parse_function(h.to_string());
        for (int k = 0; k < 5; ++k) {
            const Complex z = random_in_annulus(0.3, 0.9);
            CHECK(close(h(z), again(z), 1e-12 * (1 + std::abs(h(z)))));
        }
        if (h.is_rational()) {
            CHECK(same_rational(*h.rational(), *again.rational(), 1e-12));
            CHECK(same_rational(*h.rational(), *parse_function(canonical_text(h)).rational(), 1e-12));
        }
    }
}

TEST_CASE("polynomial roots with multiplicity") {
    const std::vector<Complex> rs{1.0, 1.0, Complex(0, 2), -0.5};
    const auto p = Polynomial::from_roots(rs);
    const auto found = roots(p);
    int total = 0;
    for (const auto& r : found) total += r.multiplicity;
    CHECK(total == 4);
    bool double_root = false;
    for (const auto& r : found)
        if (std::abs(r.location - 1.0) < 1e-7 && r.multiplicity == 2) double_root = true;
    CHECK(double_root);
}

TEST_CASE("fixed-point polynomial vanishes at the zeros of f") {
    const auto h = parse_function("2*z^3+1/(8*z)");
    const auto P = fixed_point_polynomial(*h.rational());
    CHECK(P.degree() <= 17);
    for (int k = 0; k < 4; ++k) {
        const Complex z = std::polar(0.5, kPi * k / 2);
        CHECK(std::abs(P(z)) <= 1e-10 * (1 + P.max_abs_coeff()));
    }
}
