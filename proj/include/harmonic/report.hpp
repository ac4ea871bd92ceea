#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "harmonic/verifier.hpp"

namespace harmonic {

using Json = nlohmann::ordered_json;

/// Parses a complex literal such as `2`, `-1.5i`, `0.5-2i` or `(1+i)/2`.
/// Throws ParseError for anything that depends on z.
Complex parse_complex(std::string_view text);

/// Shortest round-tripping decimal form of x.
std::string format_double(double x);
/// `a+bi` form accepted by parse_complex.
std::string format_complex(Complex z);
/// Re-parseable text of p in ascending powers of z.
std::string format_polynomial(const Polynomial& p);
/// Re-parseable text of the reduced rational form of h, when it has one.
std::string canonical_text(const AnalyticFunction& h);

Json to_json(Complex z);
Json to_json(const AnalyticFunction& h);
Json to_json(const IndexVerdict& v);
Json to_json(const ExceptionalPoint& p);
Json to_json(const ZeroSearch& s);
Json to_json(const AuditReport& r);

std::string to_text(const IndexVerdict& v);
std::string to_text(const ExceptionalPoint& p);
std::string to_text(const AuditReport& r);

}  // namespace harmonic
