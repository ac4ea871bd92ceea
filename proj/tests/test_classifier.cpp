#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace harmonic;
using namespace testing_support;

namespace {

TruncatedSeries series_of(std::vector<Complex> a, int order = 8) {
    a.resize(static_cast<std::size_t>(order) + 1);
    return TruncatedSeries(0.0, a);
}

int numeric_index(const std::string& h, Complex z0 = 0.0) {
    return poincare_index(HarmonicMapping::parse(h), z0).value;
}

std::string binomial_text(Complex a, int n) {
    return "(" + format_complex(a) + ")*z^" + std::to_string(n) + " + z";
}

// h with expansion sum a_k z^k at 0, a_1 = e^{i theta}, obtained from a
// normalized expansion b by a_k = b_k e^{i (k+1) theta / 2}.
std::string rotated_text(const std::vector<Complex>& b, double theta) {
    std::vector<Complex> a(b.size());
    for (std::size_t k = 1; k < b.size(); ++k) a[k] = b[k] * std::polar(1.0, 0.5 * (k + 1) * theta);
    return format_polynomial(Polynomial(a));
}

}  // namespace

TEST_CASE("classify_point: examples") {
    const auto c1 = classify_point(HarmonicMapping::parse("z/(z^2-1)"), std::sqrt(2.0));
    CHECK(c1.kind == PointClass::Kind::SensePreserving);
    CHECK(c1.witness == doctest::Approx(3.0));

    const auto c2 = classify_point(HarmonicMapping::parse("2*z^3+1/(8*z)"), Complex(0, 0.5));
    CHECK(c2.kind == PointClass::Kind::Singular);
    CHECK(c2.witness == doctest::Approx(1.0));

    CHECK(classify_point(HarmonicMapping::parse("exp(z)-1"), 0.0).kind == PointClass::Kind::Singular);
    CHECK(classify_point(HarmonicMapping::parse("z/2"), 0.0).kind == PointClass::Kind::SenseReversing);
    CHECK_THROWS_AS(classify_point(HarmonicMapping::parse("z/(z^2-1)"), 1.0), PoleError);
}

TEST_CASE("classify_point: band width") {
    const auto f = HarmonicMapping::parse("(1+1e-8)*z");
    CHECK(classify_point(f, 0.0).kind == PointClass::Kind::SensePreserving);
    CHECK(classify_point(f, 0.0, 1e-7).kind == PointClass::Kind::Singular);
}

TEST_CASE("index_regular") {
    CHECK(index_regular({PointClass::Kind::SensePreserving, 2.0}) == 1);
    CHECK(index_regular({PointClass::Kind::SenseReversing, 0.5}) == -1);
    CHECK_THROWS_AS(index_regular({PointClass::Kind::Singular, 1.0}), PreconditionError);
}

TEST_CASE("index_singular_normalized: examples") {
    const auto v0 = index_singular_normalized(series_of({0, 1, 0.5, 1.0 / 6}));
    CHECK(v0.value == 0);
    CHECK(v0.details->n == 2);
    CHECK(v0.method == IndexMethod::NormalizedTheorem);

    const auto vp = index_singular_normalized(series_of({0, 1, 0, 1, 0, 1}));
    CHECK(vp.value == 1);
    CHECK(vp.details->n == 3);

    CHECK(index_singular_normalized(series_of({0, 1, 0, -1, 0, -1})).value == -1);

    const auto vi = index_singular_normalized(series_of({0, 1, Complex(0, 1)}));
    CHECK(vi.indeterminate());
    CHECK(vi.details->n == 2);
}

TEST_CASE("index_singular_normalized: preconditions") {
    CHECK_THROWS_AS(index_singular_normalized(series_of({0, 1})), PreconditionError);
    CHECK_THROWS_AS(index_singular_normalized(series_of({0, -1, 1})), PreconditionError);
    CHECK_THROWS_AS(index_singular_normalized(series_of({0.1, 1, 1})), PreconditionError);
}

TEST_CASE("index_singular_general: expansion around i/2") {
    const auto f = HarmonicMapping::parse("2*z^3+1/(8*z)");
    const auto v = index_singular_general(f.local_series(Complex(0, 0.5), 16));
    REQUIRE(v.details);
    CHECK(v.details->n == 2);
    CHECK(v.details->theta == doctest::Approx(kPi));
    CHECK(v.details->phi == doctest::Approx(kPi / 2));
    CHECK(v.details->eta == doctest::Approx(-1.0));
    CHECK(v.value == 0);
}

TEST_CASE("index_singular_general: theta = 0 coincides with the normalized criterion") {
    const std::vector<std::vector<Complex>> cases{{0, 1, 0.5}, {0, 1, 0, 2}, {0, 1, 0, -0.3}, {0, 1, 0, 0, 1},
                                                  {0, 1, Complex(0, 2)}, {0, 1, 0, Complex(0.2, -1)}};
    for (const auto& c : cases) {
        const auto s = series_of(c);
        CHECK(index_singular_general(s).value == index_singular_normalized(s).value);
    }
}

TEST_CASE("index_singular_general: rotated normalized examples agree with the numeric oracle") {
    const std::vector<std::pair<std::vector<Complex>, int>> normalized{
        {{0, 1, 0.5}, 0}, {{0, 1, 0, 1}, 1}, {{0, 1, 0, -1}, -1}, {{0, 1, Complex(0.5, 0.5)}, 0},
        {{0, 1, 0, Complex(0.3, 1)}, 1}, {{0, 1, 0, Complex(-0.3, 1)}, -1}, {{0, 1, 0, 0, 0, 2}, 1}};
    for (const auto& [b, expected] : normalized) {
        for (int trial = 0; trial < 4; ++trial) {
            const double theta = uniform(-kPi, kPi);
            const auto f = HarmonicMapping::parse(rotated_text(b, theta));
            const auto v = index_singular_general(f.local_series(0.0, 12));
            REQUIRE(v.value);
            CHECK(*v.value == expected);
            CHECK(poincare_index(f, 0.0).value == expected);
        }
    }
}

TEST_CASE("index_binomial: table entries") {
    CHECK(index_binomial(1.0, 2) == 0);
    CHECK(index_binomial(Complex(0, 1), 4) == 1);
    CHECK(index_binomial(-1.0, 3) == -1);
    CHECK(index_binomial(Complex(0, 1), 3) == 1);
    CHECK(index_binomial(Complex(0, -2), 5) == 1);
    CHECK(index_binomial(Complex(-0.1, 3), 2) == 0);
    CHECK_THROWS_AS(index_binomial(0.0, 3), PreconditionError);
    CHECK_THROWS_AS(index_binomial(1.0, 1), PreconditionError);
}

TEST_CASE("index: dispatch") {
    const auto pole = index(HarmonicMapping::parse("z/(z^2-1)"), 1.0);
    CHECK(pole.value == -1);
    CHECK(pole.method == IndexMethod::RegularRule);
    CHECK(index(HarmonicMapping::parse("1/(z-1)^2"), 1.0).value == -2);

    const auto reg = index(HarmonicMapping::parse("z/(z^2-1)"), std::sqrt(2.0));
    CHECK(reg.value == 1);
    CHECK(reg.method == IndexMethod::RegularRule);

    const auto e = index(HarmonicMapping::parse("exp(z)-1"), 0.0);
    CHECK(e.value == 0);
    CHECK(e.method == IndexMethod::GeneralTheorem);
    CHECK(e.details->n == 2);
    CHECK(e.details->a_n == Complex(0.5));

    CHECK_THROWS_AS(index(HarmonicMapping::parse("z/(z^2-1)"), 0.5), NotExceptionalError);
}

TEST_CASE("index: purely imaginary a_2 falls back to the numeric oracle") {
    const auto f1 = HarmonicMapping::parse("-z^3+i*z^2+z");
    const auto f2 = HarmonicMapping::parse("-20*z^3+i*z^2+z");
    for (const auto* f : {&f1, &f2}) {
        const auto theorem = index_singular_general(f->local_series(0.0, 16));
        CHECK(theorem.indeterminate());
        CHECK(theorem.details->n == 2);
        CHECK(theorem.details->a_n == Complex(0, 1));
    }
    const auto v1 = index(f1, 0.0), v2 = index(f2, 0.0);
    CHECK(v1.value == 1);
    CHECK(v2.value == -1);
    CHECK(v1.method == IndexMethod::NumericFallback);
    CHECK(v2.method == IndexMethod::NumericFallback);
    CHECK(v1.theorem_attempt == IndexMethod::GeneralTheorem);
}

TEST_CASE("index: the binomial family with imaginary coefficient uses the closed form") {
    const auto v = index(HarmonicMapping::parse("i*z^2+z"), 0.0);
    CHECK(v.value == 1);
    CHECK(v.method == IndexMethod::BinomialLemma);
    CHECK(v.theorem_attempt == IndexMethod::GeneralTheorem);
    CHECK(numeric_index("i*z^2+z") == 1);
}

TEST_CASE("index: eta deferral band sends near-zero eta to the oracle") {
    ClassifierOptions opts;
    opts.eta_defer = 0.5;
    const auto v = index(HarmonicMapping::parse("z+(0.1+i)*z^2"), 0.0, opts);
    CHECK(v.method == IndexMethod::NumericFallback);
    CHECK(v.value == 0);
}

TEST_CASE("property: theorem verdicts agree with the numeric oracle") {
    const char* functions[] = {"-z/(z^2-1)", "z/(z^2-1)", "2*z^3+1/(8*z)", "exp(z)-1", "z+z^3", "z-z^3",
                               "z+z^2", "z+(1+2i)*z^3"};
    for (const char* text : functions) {
        const auto f = HarmonicMapping::parse(text);
        const auto zs = find_zeros(f, default_region(f));
        for (const auto& p : zs.zeros) {
            REQUIRE(p.verdict);
            REQUIRE(p.verdict->value);
            const int v = *p.verdict->value;
            CHECK((v >= -1 && v <= 1));
            std::vector<Complex> others;
            for (const auto& q : zs.zeros)
                if (q.location != p.location) others.push_back(q.location);
            PoincareOptions po;
            po.known_points = others;
            if (f.h().is_rational())
                for (const auto& pole : poles_of(f.h())) po.known_points.push_back(pole.location);
            CHECK(poincare_index(f, p.location, po).value == v);
        }
    }
}

TEST_CASE("property: truncating the tail keeps the index") {
    for (int trial = 0; trial < 24; ++trial) {
        const int n = 2 + trial % 4;
        Complex an = random_in_annulus(0.3, 1.0);
        if (std::abs(an.real()) < 0.1) an += 0.2;
        std::vector<Complex> full{0, 1}, head{0, 1};
        for (int k = 2; k < n; ++k) full.push_back(0.0), head.push_back(0.0);
        full.push_back(an);
        head.push_back(an);
        for (int k = n + 1; k <= n + 3; ++k) full.push_back(random_in_disk());
        CHECK(numeric_index(format_polynomial(Polynomial(full))) == numeric_index(format_polynomial(Polynomial(head))));
    }
}

TEST_CASE("property: scaling a along a ray keeps the index") {
    for (int trial = 0; trial < 24; ++trial) {
        const int n = 2 + trial % 4;
        const double arg = uniform(-kPi, kPi);
        const int reference = numeric_index(binomial_text(std::polar(1.0, arg), n));
        for (double modulus : {0.5, 2.0}) CHECK(numeric_index(binomial_text(std::polar(modulus, arg), n)) == reference);
    }
}

TEST_CASE("property: only the sign of Re(a) matters") {
    for (int trial = 0; trial < 24; ++trial) {
        const int n = 2 + trial % 4;
        Complex a = random_in_annulus(0.2, 2.0);
        if (std::abs(a.real()) < 0.05) a += 0.1;
        const double sign = a.real() > 0 ? 1.0 : -1.0;
        CHECK(numeric_index(binomial_text(a, n)) == numeric_index(binomial_text(sign, n)));
    }
}

TEST_CASE("property: raising n by two keeps the index") {
    for (int trial = 0; trial < 24; ++trial) {
        const int n = 2 + trial % 3;
        Complex a = random_in_annulus(0.3, 1.5);
        if (std::abs(a.real()) < 0.05) a += 0.1;
        CHECK(numeric_index(binomial_text(a, n)) == numeric_index(binomial_text(a, n + 2)));
    }
}

TEST_CASE("property: general criterion equals the normalized criterion after rotation") {
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Complex> a(10);
        a[1] = std::polar(1.0, uniform(-kPi, kPi));
        const int n = 2 + trial % 5;
        for (int k = n; k < 10; ++k) a[k] = random_in_disk(2.0);
        const TruncatedSeries s(0.0, a);
        const auto general = index_singular_general(s);
        const auto normalized = index_singular_normalized(normalize_series(s));
        CHECK(general.value == normalized.value);
        CHECK(general.details->n == normalized.details->n);
        CHECK(general.details->eta == doctest::Approx(normalized.details->eta).epsilon(1e-9));
    }
}

TEST_CASE("property: theta branch does not change the verdict") {
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 5;
        const double theta = uniform(-kPi, kPi), phi = uniform(-kPi, kPi);
        const double eta = std::cos(phi - 0.5 * (n + 1) * theta);
        const double eta_shifted = std::cos(phi - 0.5 * (n + 1) * (theta + 2 * kPi));
        if (n % 2 == 0) CHECK((eta > 0) != (eta_shifted > 0));
        else CHECK(eta == doctest::Approx(eta_shifted));
    }
}
