#include "phasewig/symcalc.hpp"

#include <cmath>

namespace phasewig::symcalc {

using exprlang::Expr;
using exprlang::Var;
using numgrid::Axis;
using numgrid::cd;
using numgrid::Field;
using numgrid::FieldShape;
using states::PhaseState;

OneForm oneform_from_exprs(const Expr& aq, const Expr& ap, const PhaseGrid& grid) {
    return OneForm{exprlang::eval_on_grid(aq, grid), exprlang::eval_on_grid(ap, grid), aq, ap};
}

Connection connection_from_exprs(const Expr& aq, const Expr& ap, const PhaseGrid& grid) {
    return Connection{exprlang::eval_on_grid(aq, grid), exprlang::eval_on_grid(ap, grid), aq, ap,
                      std::nullopt};
}

void PathPolyline::validate(const PhaseGrid& grid) const {
    if (vertices.size() < 2)
        throw InvalidSpecError("path: need at least 2 vertices");
    if (samples_per_segment < 1)
        throw InvalidSpecError("path: samples_per_segment must be positive");
    for (const auto& v : vertices) {
        if (v[0] < grid.q.min || v[0] > grid.q.max || v[1] < grid.p.min || v[1] > grid.p.max)
            throw PathOutOfDomainError("path: vertex outside the grid rectangle");
    }
}

OneForm exterior_d(const GeneratingFunction& f, const PhaseGrid& grid) {
    return oneform_from_exprs(f.grad_q(), f.grad_p(), grid);
}

OneForm symplectic_d(const GeneratingFunction& f, const PhaseGrid& grid) {
    return oneform_from_exprs(-f.grad_q(), f.grad_p(), grid);
}

OneForm canonical_theta(const PhaseGrid& grid) {
    return oneform_from_exprs(-Expr::variable(Var::P), Expr::number(0.0), grid);
}

RealField canonical_omega_coefficient(const PhaseGrid& grid) {
    RealField one(grid, FieldShape::OverQP);
    for (int k = 0; k < one.size(); ++k) one[k] = 1.0;
    return one;
}

PoincareCartan poincare_cartan(const OneForm& theta, const RealField& hamiltonian,
                               const PhaseGrid& grid) {
    if (!(theta.grid() == grid) || !(hamiltonian.grid() == grid))
        throw ShapeMismatchError("poincare_cartan: mismatched grids");
    // On a fixed-time / fixed-energy slice the H dt leg drops out.
    return PoincareCartan{theta, hamiltonian};
}

RealField d_of_oneform(const OneForm& alpha) {
    alpha.alpha_q.require_same_layout(alpha.alpha_p, "d_of_oneform");
    const PhaseGrid& grid = alpha.grid();
    if (alpha.symbolic()) {
        const Expr coeff = alpha.p_expr->diff(Var::Q) - alpha.q_expr->diff(Var::P);
        return exprlang::eval_on_grid(coeff, grid);
    }
    return numgrid::derivative(alpha.alpha_p, Axis::Q) -
           numgrid::derivative(alpha.alpha_q, Axis::P);
}

double closedness_residual(const OneForm& xi) { return d_of_oneform(xi).max_abs(); }

namespace {

// 4-point Gauss-Legendre nodes/weights on [0,1].
constexpr double kGx[4] = {0.5 - 0.43056815579702629, 0.5 - 0.16999052179242816,
                           0.5 + 0.16999052179242816, 0.5 + 0.43056815579702629};
constexpr double kGw[4] = {0.17392742256872692, 0.32607257743127305, 0.32607257743127305,
                           0.17392742256872692};

double bilinear(const RealField& f, double q, double p) {
    const auto& gq = f.grid().q;
    const auto& gp = f.grid().p;
    double tq = (q - gq.min) / gq.spacing();
    double tp = (p - gp.min) / gp.spacing();
    int iq = static_cast<int>(std::floor(tq));
    int ip = static_cast<int>(std::floor(tp));
    iq = std::min(std::max(iq, 0), gq.n - 2);
    ip = std::min(std::max(ip, 0), gp.n - 2);
    const double uq = tq - iq, up = tp - ip;
    return f.at(iq, ip) * (1 - uq) * (1 - up) + f.at(iq + 1, ip) * uq * (1 - up) +
           f.at(iq, ip + 1) * (1 - uq) * up + f.at(iq + 1, ip + 1) * uq * up;
}

}  // namespace

double line_integral(const OneForm& alpha, const PathPolyline& path) {
    path.validate(alpha.grid());

    auto eval_q = [&](double q, double p) {
        return alpha.q_expr ? alpha.q_expr->eval(q, p) : bilinear(alpha.alpha_q, q, p);
    };
    auto eval_p = [&](double q, double p) {
        return alpha.p_expr ? alpha.p_expr->eval(q, p) : bilinear(alpha.alpha_p, q, p);
    };

    double total = 0.0;
    for (std::size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
        const auto& a = path.vertices[seg];
        const auto& b = path.vertices[seg + 1];
        const double dq = b[0] - a[0], dp = b[1] - a[1];
        const int m = path.samples_per_segment;
        double acc = 0.0;
        for (int sub = 0; sub < m; ++sub) {
            for (int g = 0; g < 4; ++g) {
                const double t = (sub + kGx[g]) / m;
                const double q = a[0] + t * dq;
                const double p = a[1] + t * dp;
                acc += kGw[g] * (eval_q(q, p) * dq + eval_p(q, p) * dp);
            }
        }
        total += acc / m;
    }
    return total;
}

OneForm gauge_shift_theta(const OneForm& theta_like, const OneForm& xi) {
    theta_like.alpha_q.require_same_layout(xi.alpha_q, "gauge_shift_theta");
    const double gate = closedness_residual(xi);
    if (gate >= kClosednessGate)
        throw NotClosedError("gauge_shift_theta: xi is not closed (|d xi| = " +
                             std::to_string(gate) + ")");
    OneForm out{theta_like.alpha_q + xi.alpha_q, theta_like.alpha_p + xi.alpha_p, std::nullopt,
                std::nullopt};
    if (theta_like.symbolic() && xi.symbolic()) {
        out.q_expr = *theta_like.q_expr + *xi.q_expr;
        out.p_expr = *theta_like.p_expr + *xi.p_expr;
    }
    return out;
}

Connection connection_from_generating(const GeneratingFunction& f, const PhaseGrid& grid) {
    const Expr aq = f.grad_q();
    const Expr ap = Expr::variable(Var::Q) - f.grad_p();
    Connection A = connection_from_exprs(aq, ap, grid);
    A.provenance = f;
    return A;
}

RealField integrability_residual(const Connection& A) {
    A.a_q.require_same_layout(A.a_p, "integrability_residual");
    const PhaseGrid& grid = A.grid();
    RealField coeff = A.symbolic()
        ? exprlang::eval_on_grid(A.p_expr->diff(Var::Q) + A.q_expr->diff(Var::P), grid)
        : numgrid::derivative(A.a_p, Axis::Q) + numgrid::derivative(A.a_q, Axis::P);
    for (int k = 0; k < coeff.size(); ++k) coeff[k] -= 1.0;
    return coeff;
}

namespace {

Field phase_factor(const GeneratingFunction& f, const PhaseGrid& grid, double sign_over_hbar) {
    const RealField fs = f.sample(grid);
    Field out(grid, FieldShape::OverQP);
    for (int k = 0; k < out.size(); ++k)
        out[k] = std::exp(cd(0.0, sign_over_hbar * fs[k]));
    return out;
}

// One covariant operator application. In a gauge frame f the state is
// written Psi = exp(-i f/hbar) R and the operator acts on R with the
// frame-shifted multiplier; this is an exact rewriting, and it keeps the
// differentiated field band-limited whenever R is.
PhaseState apply_covariant(const Connection& A, const PhaseState& s, bool is_q) {
    if (!(A.grid() == s.grid()))
        throw ShapeMismatchError("covariant op: connection and state on different grids");
    const PhaseGrid& grid = s.grid();
    const double hbar = grid.hbar;
    const Axis axis = is_q ? Axis::P : Axis::Q;
    const cd ih = is_q ? cd(0, hbar) : cd(0, -hbar);
    const RealField& comp = is_q ? A.a_p : A.a_q;

    if (!s.frame()) {
        Field out = hadamard(comp, s.values()) + ih * numgrid::derivative(s.values(), axis);
        return PhaseState(std::move(out));
    }

    const GeneratingFunction& f = *s.frame();
    const Field wind = phase_factor(f, grid, +1.0 / hbar);
    const Field unwind = phase_factor(f, grid, -1.0 / hbar);

    RealField mult = comp;
    const RealField grad = is_q ? f.sample_grad_p(grid) : f.sample_grad_q(grid);
    for (int k = 0; k < mult.size(); ++k)
        mult[k] = is_q ? mult[k] + grad[k] : mult[k] - grad[k];

    const Field reduced = hadamard(wind, s.values());
    Field res = hadamard(mult, reduced) + ih * numgrid::derivative(reduced, axis);
    Field out = hadamard(unwind, res);
    return s.with_values(std::move(out));
}

}  // namespace

CovariantOps covariant_ops(const Connection& A) {
    CovariantOps ops;
    ops.apply_q = [A](const PhaseState& s) { return apply_covariant(A, s, true); };
    ops.apply_p = [A](const PhaseState& s) { return apply_covariant(A, s, false); };
    return ops;
}

double commutator_residual(const Connection& A, const PhaseState& test) {
    const CovariantOps ops = covariant_ops(A);
    const Field qp = ops.apply_q(ops.apply_p(test)).values();
    const Field pq = ops.apply_p(ops.apply_q(test)).values();
    const double hbar = test.grid().hbar;

    const int nq = test.grid().q.n, np = test.grid().p.n;
    const int mq = nq / 10, mp = np / 10;
    double worst = 0.0;
    for (int iq = mq; iq < nq - mq; ++iq) {
        for (int ip = mp; ip < np - mp; ++ip) {
            const cd r = qp.at(iq, ip) - pq.at(iq, ip) - cd(0, hbar) * test.values().at(iq, ip);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

namespace {

Connection shifted_connection(const Connection& A, const GeneratingFunction& f, double sign_q) {
    const PhaseGrid& grid = A.grid();
    const RealField gq = f.sample_grad_q(grid);
    const RealField gp = f.sample_grad_p(grid);
    Connection out = A;
    for (int k = 0; k < out.a_q.size(); ++k) {
        out.a_q[k] += sign_q * gq[k];
        out.a_p[k] += gp[k];
    }
    if (A.symbolic()) {
        out.q_expr = sign_q > 0 ? (*A.q_expr + f.grad_q()) : (*A.q_expr - f.grad_q());
        out.p_expr = *A.p_expr + f.grad_p();
    }
    return out;
}

}  // namespace

Connection gauge_shift_connection(const Connection& A, const GeneratingFunction& f,
                                  double hbar) {
    if (!(hbar > 0.0)) throw InvalidSpecError("gauge_shift_connection: hbar must be positive");
    Connection out = shifted_connection(A, f, -1.0);
    if (A.provenance)
        out.provenance = GeneratingFunction::from_expr(A.provenance->f() - f.f());
    else
        out.provenance.reset();
    return out;
}

Connection gauge_shift_connection_with_d(const Connection& A, const GeneratingFunction& f,
                                         double hbar) {
    if (!(hbar > 0.0)) throw InvalidSpecError("gauge_shift_connection: hbar must be positive");
    Connection out = shifted_connection(A, f, +1.0);
    out.provenance.reset();
    return out;
}

}  // namespace phasewig::symcalc
