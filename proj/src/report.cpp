#include "harmonic/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace harmonic {

Complex parse_complex(std::string_view text) {
    const AnalyticFunction c = parse_function(text);
    if (!c.is_polynomial() || c.rational()->num.degree() > 0)
        throw ParseError("expected a complex constant, got '" + std::string(text) + "'", 0);
    return c.rational()->num.coeff(0);
}

std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(std::abs(z.imag())) + "i";
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

std::string format_polynomial(const Polynomial& p) {
    if (p.degree() < 0) return "0";
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        const Complex c = p.coeff(k);
        if (c == Complex{}) continue;
        if (!out.empty()) out += " + ";
        out += "(" + format_complex(c) + ")";
        if (k == 1) out += "*z";
        else if (k > 1) out += "*z^" + std::to_string(k);
    }
    return out;
}

std::string canonical_text(const AnalyticFunction& h) {
    if (!h.is_rational()) return h.to_string();
    const RationalForm& r = *h.rational();
    if (r.is_polynomial()) return format_polynomial(r.num);
    return "(" + format_polynomial(r.num) + ")/(" + format_polynomial(r.den) + ")";
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

namespace {
Json coeffs_json(const Polynomial& p) {
    Json a = Json::array();
    for (const Complex& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}
}  // namespace

Json to_json(const AnalyticFunction& h) {
    Json j;
    j["text"] = h.text();
    j["printed"] = h.to_string();
    j["canonical_text"] = canonical_text(h);
    if (h.is_rational()) {
        const RationalForm& r = *h.rational();
        j["form"] = r.is_polynomial() ? "polynomial" : "rational";
        j["type"] = {r.num_degree(), r.den_degree()};
        j["degree"] = r.degree();
        j["numerator"] = coeffs_json(r.num);
        j["denominator"] = coeffs_json(r.den);
    } else {
        j["form"] = "expression";
    }
    return j;
}

Json to_json(const IndexVerdict& v) {
    Json j;
    j["value"] = v.value ? Json(*v.value) : Json(nullptr);
    j["indeterminate"] = v.indeterminate();
    j["method"] = std::string(to_string(v.method));
    if (v.theorem_attempt) j["theorem_attempt"] = std::string(to_string(*v.theorem_attempt));
    if (v.details) {
        j["n"] = v.details->n;
        j["a_n"] = to_json(v.details->a_n);
        j["theta"] = v.details->theta;
        j["phi"] = v.details->phi;
        j["eta"] = v.details->eta;
    }
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

Json to_json(const ExceptionalPoint& p) {
    Json j;
    j["z"] = to_json(p.location);
    if (p.kind == ExceptionalPoint::Kind::Zero) {
        j["kind"] = "zero";
        j["class"] = p.point_class ? Json(std::string(to_string(p.point_class->kind))) : Json(nullptr);
        if (p.point_class) j["abs_h_prime"] = p.point_class->witness;
        j["residual"] = p.residual;
        j["isolated"] = p.isolated;
    } else {
        j["kind"] = "pole";
        j["order"] = p.pole_order;
    }
    j["index"] = p.verdict && p.verdict->value ? Json(*p.verdict->value) : Json(nullptr);
    j["method"] = p.verdict ? Json(std::string(to_string(p.verdict->method))) : Json(nullptr);
    if (p.verdict) j["verdict"] = to_json(*p.verdict);
    return j;
}

Json to_json(const ZeroSearch& s) {
    Json j;
    j["count"] = s.zeros.size();
    Json zs = Json::array();
    for (const auto& p : s.zeros) zs.push_back(to_json(p));
    j["zeros"] = zs;
    j["budget_exceeded"] = s.budget_exceeded;
    j["non_isolated"] = s.non_isolated;
    if (!s.notes.empty()) j["notes"] = s.notes;
    return j;
}

Json to_json(const AuditReport& r) {
    Json j;
    j["winding"] = r.curve_winding;
    j["index_sum"] = r.index_sum;
    j["consistent"] = r.consistent;
    if (r.radius) j["radius"] = *r.radius;
    if (r.expected_winding) j["expected_winding"] = *r.expected_winding;
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(to_json(p));
    j["points"] = pts;
    j["notes"] = r.notes;
    return j;
}

std::string to_text(const IndexVerdict& v) {
    std::ostringstream os;
    os << "index " << (v.value ? std::to_string(*v.value) : std::string("indeterminate")) << " via "
       << to_string(v.method);
    if (v.theorem_attempt) os << " (after " << to_string(*v.theorem_attempt) << ")";
    if (v.details)
        os << "; n = " << v.details->n << ", a_n = " << format_complex(v.details->a_n)
           << ", eta = " << format_double(v.details->eta);
    for (const auto& n : v.notes) os << "\n  note: " << n;
    return os.str();
}

std::string to_text(const ExceptionalPoint& p) {
    std::ostringstream os;
    os << (p.kind == ExceptionalPoint::Kind::Zero ? "zero " : "pole ") << format_complex(p.location);
    if (p.kind == ExceptionalPoint::Kind::Pole) os << " order " << p.pole_order;
    if (p.point_class) os << " " << to_string(p.point_class->kind);
    if (!p.isolated) os << " non-isolated";
    if (p.verdict) os << ": " << to_text(*p.verdict);
    return os.str();
}

std::string to_text(const AuditReport& r) {
    std::ostringstream os;
    os << "winding " << r.curve_winding << ", index sum " << r.index_sum << ": "
       << (r.consistent ? "consistent" : "INCONSISTENT") << "\n";
    for (const auto& p : r.points) os << "  " << to_text(p) << "\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    return os.str();
}

}  // namespace harmonic
