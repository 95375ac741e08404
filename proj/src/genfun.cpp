#include "phasewig/genfun.hpp"

#include <cmath>

namespace phasewig::symcalc {

GeneratingFunction::GeneratingFunction(exprlang::Expr f, std::string text)
    : f_(f), dq_(f.diff(exprlang::Var::Q)), dp_(f.diff(exprlang::Var::P)), text_(std::move(text)) {}

GeneratingFunction GeneratingFunction::parse(const std::string& text) {
    return GeneratingFunction(exprlang::Expr::parse(text), text);
}

GeneratingFunction GeneratingFunction::from_expr(const exprlang::Expr& f) {
    return GeneratingFunction(f, f.str());
}

GeneratingFunction GeneratingFunction::zero() { return parse("0"); }

GeneratingFunction GeneratingFunction::canonical() { return parse("p*q/2"); }

numgrid::RealField GeneratingFunction::sample(const numgrid::PhaseGrid& grid) const {
    return exprlang::eval_on_grid(f_, grid);
}

numgrid::RealField GeneratingFunction::sample_grad_q(const numgrid::PhaseGrid& grid) const {
    return exprlang::eval_on_grid(dq_, grid);
}

numgrid::RealField GeneratingFunction::sample_grad_p(const numgrid::PhaseGrid& grid) const {
    return exprlang::eval_on_grid(dp_, grid);
}

bool GeneratingFunction::spectral_safe(const numgrid::PhaseGrid& grid) const {
    // Wrap continuity: f at the (unsampled) right endpoint must match the
    // left endpoint along both axes, otherwise Fourier calculus on the
    // samples sees a jump.
    double scale = 1.0, mismatch = 0.0;
    const int probes = 17;
    for (int k = 0; k < probes; ++k) {
        const double p = grid.p.min + grid.p.length() * k / probes;
        const double q = grid.q.min + grid.q.length() * k / probes;
        const double fq0 = f_.eval(grid.q.min, p), fq1 = f_.eval(grid.q.max, p);
        const double fp0 = f_.eval(q, grid.p.min), fp1 = f_.eval(q, grid.p.max);
        mismatch = std::max({mismatch, std::abs(fq1 - fq0), std::abs(fp1 - fp0)});
        scale = std::max({scale, std::abs(fq0), std::abs(fq1), std::abs(fp0), std::abs(fp1)});
    }
    return mismatch <= 1e-9 * scale;
}

}  // namespace phasewig::symcalc
