/// @file genfun.hpp
/// @brief Generating functions f(q,p): a parsed expression together with
/// its symbolic gradients.
///
/// Gradients are always derived symbolically at construction. Spectral
/// gradients of the sampled field are available as a cross-check, but
/// only when the sampled f wraps continuously around the grid; functions
/// that grow toward the boundary (like p*q/2) are flagged unsafe for
/// spectral differentiation.
#pragma once

#include <optional>
#include <string>

#include "phasewig/exprlang.hpp"
#include "phasewig/field.hpp"

namespace phasewig::symcalc {

class GeneratingFunction {
public:
    static GeneratingFunction parse(const std::string& text);
    static GeneratingFunction from_expr(const exprlang::Expr& f);
    static GeneratingFunction zero();
    /// The canonical choice p*q/2.
    static GeneratingFunction canonical();

    const exprlang::Expr& f() const { return f_; }
    const exprlang::Expr& grad_q() const { return dq_; }
    const exprlang::Expr& grad_p() const { return dp_; }
    const std::string& text() const { return text_; }

    double eval(double q, double p) const { return f_.eval(q, p); }

    numgrid::RealField sample(const numgrid::PhaseGrid& grid) const;
    numgrid::RealField sample_grad_q(const numgrid::PhaseGrid& grid) const;
    numgrid::RealField sample_grad_p(const numgrid::PhaseGrid& grid) const;

    /// True when the sampled field wraps continuously around both axes,
    /// so Fourier gradients of the samples are trustworthy.
    bool spectral_safe(const numgrid::PhaseGrid& grid) const;

private:
    GeneratingFunction(exprlang::Expr f, std::string text);
    exprlang::Expr f_, dq_, dp_;
    std::string text_;
};

}  // namespace phasewig::symcalc
