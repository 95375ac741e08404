/// @file exprlang.hpp
/// @brief Tiny expression language over the phase-space variables q, p.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ['-'] atom ['^' int]
///   atom   := number | 'q' | 'p' | func '(' expr ')' | '(' expr ')'
/// with func in {sin, cos, exp, tanh}. Powers take integer exponents so
/// symbolic differentiation stays closed under the grammar.
#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "phasewig/field.hpp"

namespace phasewig::exprlang {

enum class Var { Q, P };

namespace detail {
struct Node;
using NodeP = std::shared_ptr<const Node>;
}  // namespace detail

class Expr {
public:
    /// Parses per the grammar; throws SyntaxError / UnknownIdentifierError
    /// with the byte offset of the offending token.
    static Expr parse(std::string_view text);

    static Expr number(double v);
    static Expr variable(Var v);

    /// Raw evaluation; may produce NaN/Inf, caller decides.
    double eval(double q, double p) const;

    /// Exact symbolic derivative with constant folding.
    Expr diff(Var v) const;

    /// Canonical fully-parenthesized form; parse(str()) evaluates
    /// identically to this expression.
    std::string str() const;

    bool is_constant(double* value = nullptr) const;

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator-() const;

private:
    explicit Expr(detail::NodeP n) : node_(std::move(n)) {}
    detail::NodeP node_;
    friend struct detail::Node;
    friend class Parser;
};

/// Pointwise evaluation over the 2-D grid; throws EvalDomainError naming
/// the first non-finite point.
numgrid::RealField eval_on_grid(const Expr& e, const numgrid::PhaseGrid& grid);

}  // namespace phasewig::exprlang
