#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace harmonic;
using namespace testing_support;

namespace {

std::vector<ExceptionalPoint> inventory(const HarmonicMapping& f, double half_width) {
    auto points = find_zeros(f, SearchRegion{0.0, half_width, 64}).zeros;
    for (auto& p : pole_points(f)) points.push_back(std::move(p));
    return points;
}

int count_index(const AuditReport& r, int value) {
    int n = 0;
    for (const auto& p : r.points)
        if (p.verdict && p.verdict->value == value) ++n;
    return n;
}

}  // namespace

TEST_CASE("audit_curve: -z/(z^2-1) on a large circle") {
    const auto f = HarmonicMapping::parse("-z/(z^2-1)");
    const auto r = audit_curve(f, ClosedCurve::circle(0.0, 5.0), inventory(f, 3.0));
    CHECK(r.curve_winding == -1);
    CHECK(r.index_sum == -1);
    CHECK(r.consistent);
    CHECK(r.points.size() == 3);
    CHECK(count_index(r, -1) == 2);
    CHECK(count_index(r, 1) == 1);
}

TEST_CASE("audit_curve: 2z^3 + 1/(8z) on a large circle") {
    const auto f = HarmonicMapping::parse("2*z^3+1/(8*z)");
    const auto r = audit_curve(f, ClosedCurve::circle(0.0, 3.0), inventory(f, 2.0));
    CHECK(r.curve_winding == 3);
    CHECK(r.index_sum == 3);
    CHECK(r.consistent);
    CHECK(r.points.size() == 9);
    CHECK(count_index(r, 1) == 4);
    CHECK(count_index(r, 0) == 4);
    CHECK(count_index(r, -1) == 1);
}

TEST_CASE("audit_curve: a circle enclosing nothing") {
    const auto f = HarmonicMapping::parse("z/(z^2-1)");
    const auto r = audit_curve(f, ClosedCurve::circle(Complex(3, 3), 0.5), inventory(f, 3.0));
    CHECK(r.points.empty());
    CHECK(r.curve_winding == 0);
    CHECK(r.index_sum == 0);
    CHECK(r.consistent);
}

TEST_CASE("audit_curve: polygons and partial enclosures") {
    const auto f = HarmonicMapping::parse("z/(z^2-1)");
    const auto pts = inventory(f, 3.0);
    // encloses 0 (-1) and the pole at 1 (-1) only
    const auto tri = ClosedCurve::polygon({Complex(-0.5, -0.5), Complex(1.6, -0.4), Complex(0.2, 0.9)});
    const auto r = audit_curve(f, tri, pts);
    CHECK(r.points.size() == 2);
    CHECK(r.index_sum == -2);
    CHECK(r.curve_winding == -2);
    CHECK(r.consistent);
}

TEST_CASE("audit_curve: errors") {
    const auto f = HarmonicMapping::parse("z/(z^2-1)");
    CHECK_THROWS_AS(audit_curve(f, ClosedCurve::circle(0.0, 1.0), inventory(f, 3.0)), PointOnCurveError);

    ExceptionalPoint unknown;
    unknown.location = 0.0;
    unknown.verdict = IndexVerdict{};
    CHECK_THROWS_AS(audit_curve(f, ClosedCurve::circle(0.0, 0.5), {unknown}), PreconditionError);
}

TEST_CASE("audit_global: z/(z^2-1)") {
    const auto r = audit_global(HarmonicMapping::parse("z/(z^2-1)"));
    CHECK(r.consistent);
    CHECK(r.curve_winding == -1);
    CHECK(r.index_sum == -1);
    CHECK(r.expected_winding == -1);
    CHECK(r.points.size() == 5);
    CHECK(count_index(r, 1) == 2);
    CHECK(count_index(r, -1) == 3);
}

TEST_CASE("audit_global: -z/(z^2-1)") {
    const auto r = audit_global(HarmonicMapping::parse("-z/(z^2-1)"));
    CHECK(r.consistent);
    CHECK(r.curve_winding == -1);
    CHECK(r.points.size() == 3);
}

TEST_CASE("audit_global: uncovered type and non-rational input") {
    const auto r = audit_global(HarmonicMapping::parse("(z^2+1)/(2*z)"));
    CHECK_FALSE(r.expected_winding);
    CHECK(r.consistent);
    CHECK_THROWS_AS(audit_global(HarmonicMapping::parse("exp(z)-1")), NotRationalError);
    CHECK_THROWS_AS(audit_global(HarmonicMapping::parse("2*z+1")), PreconditionError);
}

TEST_CASE("audit_global: random type (3,1) instances wind twice") {
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_audit_instance(3, 1);
        const auto r = audit_global(f);
        INFO(f.h().text());
        CHECK(r.consistent);
        CHECK(r.curve_winding == 2);
    }
}

TEST_CASE("audit_global: random types (j, n) with j <= n <= 4") {
    int trial = 0;
    for (int n = 2; n <= 4; ++n) {
        for (int j = 0; j <= n; ++j) {
            for (int rep = 0; rep < 5; ++rep, ++trial) {
                const auto f = random_audit_instance(j, n);
                const auto r = audit_global(f);
                INFO(f.h().text());
                CHECK(r.consistent);
                CHECK(r.curve_winding == -1);
            }
        }
    }
    CHECK(trial >= 50);
}

TEST_CASE("AuditReport JSON shape") {
    const auto r = audit_global(HarmonicMapping::parse("-z/(z^2-1)"));
    const Json j = to_json(r);
    CHECK(j["winding"] == -1);
    CHECK(j["index_sum"] == -1);
    CHECK(j["consistent"] == true);
    REQUIRE(j["points"].size() == 3);
    for (const auto& p : j["points"]) {
        CHECK(p.contains("z"));
        CHECK(p.contains("kind"));
        CHECK(p.contains("index"));
        CHECK(p.contains("method"));
        if (p["kind"] == "zero") CHECK(p["class"] == "Singular");
    }
}
