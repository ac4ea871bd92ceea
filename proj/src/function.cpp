#include "harmonic/function.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <system_error>

namespace harmonic {

using Op = AnalyticFunction::Op;
using Node = AnalyticFunction::Node;
using NodePtr = AnalyticFunction::NodePtr;

namespace {

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_const(Complex c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = c;
    return n;
}

NodePtr make_var() { return make_node(Op::Var); }

NodePtr make_pow_raw(NodePtr base, int exponent) {
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->exponent = exponent;
    n->lhs = std::move(base);
    return n;
}

bool is_const(const NodePtr& n, Complex c) { return n->op == Op::Const && n->value == c; }

// Simplifying constructors used by derivative(); they only fold constants
// and identities, nothing beyond structural normalization.
NodePtr s_add(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return make_const(a->value + b->value);
    return make_node(Op::Add, std::move(a), std::move(b));
}

NodePtr s_neg(NodePtr a) {
    if (a->op == Op::Const) return make_const(-a->value);
    if (a->op == Op::Neg) return a->lhs;
    return make_node(Op::Neg, std::move(a));
}

NodePtr s_sub(NodePtr a, NodePtr b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return s_neg(std::move(b));
    if (a->op == Op::Const && b->op == Op::Const) return make_const(a->value - b->value);
    return make_node(Op::Sub, std::move(a), std::move(b));
}

NodePtr s_mul(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return make_const(a->value * b->value);
    return make_node(Op::Mul, std::move(a), std::move(b));
}

NodePtr s_div(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0)) return make_const(0.0);
    if (is_const(b, 1.0)) return a;
    return make_node(Op::Div, std::move(a), std::move(b));
}

NodePtr s_pow(NodePtr a, int n) {
    if (n == 0) return make_const(1.0);
    if (n == 1) return a;
    return make_pow_raw(std::move(a), n);
}

NodePtr derive(const NodePtr& n) {
    switch (n->op) {
    case Op::Const: return make_const(0.0);
    case Op::Var: return make_const(1.0);
    case Op::Add: return s_add(derive(n->lhs), derive(n->rhs));
    case Op::Sub: return s_sub(derive(n->lhs), derive(n->rhs));
    case Op::Neg: return s_neg(derive(n->lhs));
    case Op::Mul: return s_add(s_mul(derive(n->lhs), n->rhs), s_mul(n->lhs, derive(n->rhs)));
    case Op::Div:
        return s_div(s_sub(s_mul(derive(n->lhs), n->rhs), s_mul(n->lhs, derive(n->rhs))), s_pow(n->rhs, 2));
    case Op::Pow:
        return s_mul(s_mul(make_const(static_cast<double>(n->exponent)), s_pow(n->lhs, n->exponent - 1)),
                     derive(n->lhs));
    case Op::Exp: return s_mul(n, derive(n->lhs));
    }
    return make_const(0.0);
}

// ---- evaluation -----------------------------------------------------------

Complex evaluate(const Node& n, Complex z) {
    switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return z;
    case Op::Add: return evaluate(*n.lhs, z) + evaluate(*n.rhs, z);
    case Op::Sub: return evaluate(*n.lhs, z) - evaluate(*n.rhs, z);
    case Op::Neg: return -evaluate(*n.lhs, z);
    case Op::Mul: return evaluate(*n.lhs, z) * evaluate(*n.rhs, z);
    case Op::Div: {
        const Complex num = evaluate(*n.lhs, z);
        const Complex den = evaluate(*n.rhs, z);
        if (std::abs(den) < 1e-300) throw PoleError(z);
        const Complex q = num / den;
        if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) throw PoleError(z);
        return q;
    }
    case Op::Pow: {
        const Complex b = evaluate(*n.lhs, z);
        Complex r = 1.0;
        for (int k = 0; k < n.exponent; ++k) r *= b;
        return r;
    }
    case Op::Exp: {
        const Complex e = std::exp(evaluate(*n.lhs, z));
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) throw Error("exp overflow");
        return e;
    }
    }
    return {};
}

TruncatedSeries evaluate_series(const Node& n, Complex center, int order) {
    switch (n.op) {
    case Op::Const: return TruncatedSeries::constant(n.value, center, order);
    case Op::Var: return TruncatedSeries::variable(center, order);
    case Op::Add: return evaluate_series(*n.lhs, center, order) + evaluate_series(*n.rhs, center, order);
    case Op::Sub: return evaluate_series(*n.lhs, center, order) - evaluate_series(*n.rhs, center, order);
    case Op::Neg: return -evaluate_series(*n.lhs, center, order);
    case Op::Mul: return evaluate_series(*n.lhs, center, order) * evaluate_series(*n.rhs, center, order);
    case Op::Div: return evaluate_series(*n.lhs, center, order) / evaluate_series(*n.rhs, center, order);
    case Op::Pow: return pow(evaluate_series(*n.lhs, center, order), n.exponent);
    case Op::Exp: return exp(evaluate_series(*n.lhs, center, order));
    }
    return TruncatedSeries::constant(0.0, center, order);
}

// ---- rational canonical form ---------------------------------------------

struct RawRational {
    Polynomial num;
    Polynomial den;
};

std::optional<RawRational> raw_rational(const Node& n) {
    switch (n.op) {
    case Op::Const: return RawRational{Polynomial::constant(n.value), Polynomial::constant(1.0)};
    case Op::Var: return RawRational{Polynomial::identity(), Polynomial::constant(1.0)};
    case Op::Add:
    case Op::Sub: {
        auto a = raw_rational(*n.lhs);
        auto b = raw_rational(*n.rhs);
        if (!a || !b) return std::nullopt;
        if (a->den == b->den) {
            return RawRational{n.op == Op::Add ? a->num + b->num : a->num - b->num, a->den};
        }
        const Polynomial l = a->num * b->den;
        const Polynomial r = b->num * a->den;
        return RawRational{n.op == Op::Add ? l + r : l - r, a->den * b->den};
    }
    case Op::Neg: {
        auto a = raw_rational(*n.lhs);
        if (!a) return std::nullopt;
        return RawRational{-a->num, a->den};
    }
    case Op::Mul: {
        auto a = raw_rational(*n.lhs);
        auto b = raw_rational(*n.rhs);
        if (!a || !b) return std::nullopt;
        return RawRational{a->num * b->num, a->den * b->den};
    }
    case Op::Div: {
        auto a = raw_rational(*n.lhs);
        auto b = raw_rational(*n.rhs);
        if (!a || !b) return std::nullopt;
        if (b->num.is_zero()) throw PreconditionError("division by an identically zero expression");
        return RawRational{a->num * b->den, a->den * b->num};
    }
    case Op::Pow: {
        auto a = raw_rational(*n.lhs);
        if (!a) return std::nullopt;
        return RawRational{pow(a->num, n.exponent), pow(a->den, n.exponent)};
    }
    case Op::Exp: {
        auto a = raw_rational(*n.lhs);
        if (!a || a->num.degree() > 0 || a->den.degree() > 0) return std::nullopt;
        const Complex c = a->num.coeff(0) / a->den.coeff(0);
        return RawRational{Polynomial::constant(std::exp(c)), Polynomial::constant(1.0)};
    }
    }
    return std::nullopt;
}

// ---- printing -------------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_const(Complex c) {
    if (c.imag() == 0.0) {
        const std::string s = format_double(c.real());
        return c.real() < 0 || std::signbit(c.real()) ? "(" + s + ")" : s;
    }
    const std::string im = format_double(std::abs(c.imag())) + "i";
    if (c.real() == 0.0) return c.imag() < 0 ? "(-" + im + ")" : im;
    return "(" + format_double(c.real()) + (c.imag() < 0 ? "-" : "+") + im + ")";
}

int precedence(const Node& n) {
    switch (n.op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
    }
}

std::string print(const Node& n) {
    auto wrap = [](const Node& child, int min_prec) {
        std::string s = print(child);
        return precedence(child) < min_prec ? "(" + s + ")" : s;
    };
    switch (n.op) {
    case Op::Const: return format_const(n.value);
    case Op::Var: return "z";
    case Op::Add: return wrap(*n.lhs, 1) + "+" + wrap(*n.rhs, 1);
    case Op::Sub: return wrap(*n.lhs, 1) + "-" + wrap(*n.rhs, 2);
    case Op::Mul: return wrap(*n.lhs, 2) + "*" + wrap(*n.rhs, 3);
    case Op::Div: return wrap(*n.lhs, 2) + "/" + wrap(*n.rhs, 3);
    case Op::Neg: return "-" + wrap(*n.lhs, 3);
    case Op::Pow: return wrap(*n.lhs, 5) + "^" + std::to_string(n.exponent);
    case Op::Exp: return "exp(" + print(*n.lhs) + ")";
    }
    return {};
}

// ---- parsing --------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
        NodePtr e = expr();
        skip_space();
        if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make_node(Op::Add, lhs, term());
            else if (accept('-')) lhs = make_node(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make_node(Op::Mul, lhs, unary());
            else if (accept('/')) lhs = make_node(Op::Div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_node(Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (!accept('^')) return base;
        skip_space();
        const std::size_t at = pos_;
        const bool paren = accept('(');
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' ||
                                                     text_[pos_] == 'E' || text_[pos_] == 'i')))
            throw ParseError("exponent must be a nonnegative integer", at);
        int exponent = 0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
        if (res.ec != std::errc{} || exponent > 4096) throw ParseError("exponent out of range", at);
        if (paren) expect(')');
        return make_pow_raw(std::move(base), exponent);
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "z") return make_var();
            if (word == "i") return make_const({0.0, 1.0});
            if (word == "exp") {
                expect('(');
                NodePtr arg = expr();
                expect(')');
                return make_node(Op::Exp, std::move(arg));
            }
            throw ParseError("unknown identifier '" + std::string(word) + "'", start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t s = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return pos_ - s;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) throw ParseError("malformed number", start);
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double v = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc{} || res.ptr != text_.data() + pos_ || !std::isfinite(v))
            throw ParseError("malformed number", start);
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            return make_const({0.0, v});
        }
        return make_const(v);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

AnalyticFunction::AnalyticFunction(NodePtr root, std::string text) : root_(std::move(root)), text_(std::move(text)) {
    if (!root_) throw PreconditionError("empty expression tree");
    if (text_.empty()) text_ = print(*root_);
    if (auto raw = raw_rational(*root_)) rational_ = reduce_rational(raw->num, raw->den);
}

AnalyticFunction AnalyticFunction::constant(Complex c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw PreconditionError("non-finite constant");
    return AnalyticFunction(make_const(c));
}

AnalyticFunction AnalyticFunction::variable() { return AnalyticFunction(make_var()); }

std::string AnalyticFunction::to_string() const { return print(*root_); }

const RationalForm& AnalyticFunction::require_rational() const {
    if (!rational_) throw NotRationalError("function '" + text_ + "' is not rational");
    return *rational_;
}

Complex AnalyticFunction::operator()(Complex z) const { return evaluate(*root_, z); }

AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction(make_node(Op::Add, a.root_, b.root_));
}
AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction(make_node(Op::Sub, a.root_, b.root_));
}
AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction(make_node(Op::Mul, a.root_, b.root_));
}
AnalyticFunction operator/(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction(make_node(Op::Div, a.root_, b.root_));
}
AnalyticFunction AnalyticFunction::operator-() const { return AnalyticFunction(make_node(Op::Neg, root_)); }
AnalyticFunction pow(const AnalyticFunction& a, int exponent) {
    if (exponent < 0) throw PreconditionError("exponent must be a nonnegative integer");
    return AnalyticFunction(make_pow_raw(a.root_, exponent));
}
AnalyticFunction exp(const AnalyticFunction& a) { return AnalyticFunction(make_node(Op::Exp, a.root_)); }

AnalyticFunction parse_function(std::string_view text) {
    NodePtr root = Parser(text).parse();
    try {
        return AnalyticFunction(std::move(root), std::string(text));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what(), 0);
    }
}

AnalyticFunction derivative(const AnalyticFunction& h) { return AnalyticFunction(derive(h.root())); }

TruncatedSeries taylor_at(const AnalyticFunction& h, Complex center, int order) {
    if (order < 0) throw PreconditionError("negative series order");
    (void)h(center);  // PoleError when the center is a pole
    TruncatedSeries s = evaluate_series(*h.root(), center, order);
    if (!s.exact_tail() && h.is_polynomial() && h.rational()->num.degree() <= order)
        s = TruncatedSeries(s.center(), s.coeffs(), true);
    return s;
}

std::vector<Pole> poles_of(const AnalyticFunction& h) {
    const RationalForm& r = h.require_rational();
    std::vector<Pole> out;
    for (const Root& root : roots(r.den)) out.push_back({root.location, root.multiplicity});
    return out;
}

RationalType rational_type(const AnalyticFunction& h) {
    const RationalForm& r = h.require_rational();
    return {r.num_degree(), r.den_degree()};
}

}  // namespace harmonic
