#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "harmonic/errors.hpp"
#include "harmonic/polynomial.hpp"
#include "harmonic/series.hpp"

namespace harmonic {

/// Immutable expression tree for the analytic part h of f(z) = h(z) - conj(z).
///
/// Grammar (whitespace ignored):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unsigned-integer)?
///   primary := number | number 'i' | 'i' | 'z' | 'exp' '(' expr ')' | '(' expr ')'
///
/// So `-z^2` is `-(z^2)` and `2*z^3` is `2*(z^3)`.
class AnalyticFunction {
public:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp };

    struct Node {
        Op op = Op::Const;
        Complex value{};
        int exponent = 0;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };
    using NodePtr = std::shared_ptr<const Node>;

    static AnalyticFunction constant(Complex c);
    static AnalyticFunction variable();

    const NodePtr& root() const noexcept { return root_; }
    /// Text the function was parsed from, or the printed tree when built in code.
    const std::string& text() const noexcept { return text_; }
    /// Re-parseable rendering of the tree.
    std::string to_string() const;

    /// Reduced p/q when the tree is built from rational operations only.
    const std::optional<RationalForm>& rational() const noexcept { return rational_; }
    bool is_rational() const noexcept { return rational_.has_value(); }
    bool is_polynomial() const noexcept { return rational_ && rational_->is_polynomial(); }
    /// Throws NotRationalError when there is no rational canonical form.
    const RationalForm& require_rational() const;

    /// h(z); throws PoleError on division by zero.
    Complex operator()(Complex z) const;

    friend AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b);
    friend AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b);
    friend AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b);
    friend AnalyticFunction operator/(const AnalyticFunction& a, const AnalyticFunction& b);
    AnalyticFunction operator-() const;
    friend AnalyticFunction pow(const AnalyticFunction& a, int exponent);
    friend AnalyticFunction exp(const AnalyticFunction& a);

    explicit AnalyticFunction(NodePtr root, std::string text = {});

private:
    NodePtr root_;
    std::string text_;
    std::optional<RationalForm> rational_;
};

AnalyticFunction parse_function(std::string_view text);

inline Complex eval(const AnalyticFunction& h, Complex z) { return h(z); }

/// Symbolic d/dz.
AnalyticFunction derivative(const AnalyticFunction& h);

inline constexpr int kDefaultTaylorOrder = 16;

/// Taylor coefficients of h about `center` by truncated-series arithmetic.
/// Throws PoleError / SeriesError when h is not analytic at the center.
TruncatedSeries taylor_at(const AnalyticFunction& h, Complex center, int order = kDefaultTaylorOrder);

struct Pole {
    Complex location;
    int order = 1;
};

/// Roots of the reduced denominator with multiplicities.
std::vector<Pole> poles_of(const AnalyticFunction& h);

/// Rational type (deg num, deg den) of the reduced form.
struct RationalType {
    int num_degree = 0;
    int den_degree = 0;
    int degree() const { return num_degree > den_degree ? num_degree : den_degree; }
    friend bool operator==(const RationalType&, const RationalType&) = default;
};
RationalType rational_type(const AnalyticFunction& h);

}  // namespace harmonic
