#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmonic/zero_finder.hpp"

namespace harmonic {

/// Winding of f along a curve against the sum of indices enclosed by it.
struct AuditReport {
    int curve_winding = 0;
    int index_sum = 0;
    /// Exceptional points inside the curve.
    std::vector<ExceptionalPoint> points;
    bool consistent = false;
    std::vector<std::string> notes;
    /// Radius of the audit circle when the curve was chosen automatically.
    std::optional<double> radius;
    /// Global winding predicted from the rational type of h, when covered.
    std::optional<int> expected_winding;
};

/// Exceptional points for the poles of rational h, each indexed -order.
std::vector<ExceptionalPoint> pole_points(const HarmonicMapping& f);

/// Throws PointOnCurveError when a point lies within 1e-6 of the curve and
/// PreconditionError when an interior point has no index value.
AuditReport audit_curve(const HarmonicMapping& f, const ClosedCurve& curve, const std::vector<ExceptionalPoint>& points,
                        const WindingOptions& opts = {});

/// Zeros in the default region plus poles, audited on the automatic large
/// circle and cross-checked with expected_global_winding.
AuditReport audit_global(const HarmonicMapping& f, const FinderOptions& opts = {});

}  // namespace harmonic
