#include "harmonic/verifier.hpp"

#include <cmath>

namespace harmonic {

std::vector<ExceptionalPoint> pole_points(const HarmonicMapping& f) {
    std::vector<ExceptionalPoint> out;
    if (!f.h().is_rational() || f.h().is_polynomial()) return out;
    for (const Pole& p : poles_of(f.h())) {
        ExceptionalPoint e;
        e.location = p.location;
        e.kind = ExceptionalPoint::Kind::Pole;
        e.pole_order = p.order;
        IndexVerdict v;
        v.value = -p.order;
        v.method = IndexMethod::RegularRule;
        v.notes.push_back("pole of order " + std::to_string(p.order));
        e.verdict = std::move(v);
        out.push_back(std::move(e));
    }
    return out;
}

AuditReport audit_curve(const HarmonicMapping& f, const ClosedCurve& curve, const std::vector<ExceptionalPoint>& points,
                        const WindingOptions& opts) {
    AuditReport report;
    for (const ExceptionalPoint& p : points) {
        if (curve.distance_to(p.location) <= 1e-6) throw PointOnCurveError("exceptional point lies on the audit curve");
        const Complex c = p.location;
        const int turns = winding([c](Complex z) { return z - c; }, curve, opts).value;
        if (turns == 0) continue;
        if (!p.verdict || !p.verdict->value)
            throw PreconditionError("interior exceptional point has no index value");
        report.index_sum += *p.verdict->value;
        report.points.push_back(p);
    }
    report.curve_winding = winding(f, curve, opts).value;
    report.consistent = report.curve_winding == report.index_sum;
    if (!report.consistent)
        report.notes.push_back("winding " + std::to_string(report.curve_winding) + " differs from index sum " +
                               std::to_string(report.index_sum));
    return report;
}

AuditReport audit_global(const HarmonicMapping& f, const FinderOptions& opts) {
    const RationalForm& r = f.h().require_rational();
    if (r.degree() < 2) throw PreconditionError("global audit needs rational h of degree >= 2");

    const ZeroSearch search = find_zeros(f, default_region(f), opts);
    std::vector<ExceptionalPoint> points = search.zeros;
    for (ExceptionalPoint& p : pole_points(f)) points.push_back(std::move(p));

    if (search.non_isolated || search.budget_exceeded) {
        AuditReport report;
        report.points = points;
        report.notes = search.notes;
        report.notes.emplace_back("zero inventory incomplete; audit not performed");
        return report;
    }

    std::vector<Complex> known;
    for (const auto& p : points) known.push_back(p.location);
    const LargeCircleWinding lc = large_circle_winding(f, std::nullopt, known);
    AuditReport report = audit_curve(f, ClosedCurve::circle({}, lc.radius), points);
    report.radius = lc.radius;
    for (const std::string& n : search.notes) report.notes.push_back(n);

    const int bound = max_zero_bound(f.h());
    if (static_cast<int>(search.zeros.size()) > bound) {
        report.consistent = false;
        report.notes.push_back("found " + std::to_string(search.zeros.size()) + " zeros, more than the bound " +
                               std::to_string(bound));
    }
    if (report.points.size() != points.size()) {
        report.consistent = false;
        report.notes.emplace_back("some exceptional points lie outside the audit circle");
    }
    try {
        report.expected_winding = expected_global_winding(f.h());
        if (*report.expected_winding != report.curve_winding) {
            report.consistent = false;
            report.notes.push_back("large-circle winding " + std::to_string(report.curve_winding) +
                                   " differs from the value " + std::to_string(*report.expected_winding) +
                                   " predicted by the rational type");
        }
    } catch (const UncoveredTypeError&) {
        report.notes.emplace_back("rational type (k+1, k): no predicted global winding");
    }
    return report;
}

}  // namespace harmonic
