#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "phasewig/symcalc.hpp"

using namespace phasewig;
using namespace phasewig::symcalc;
using exprlang::Expr;
using exprlang::Var;
using numgrid::make_grid;
using numgrid::PhaseGrid;

namespace {

PhaseGrid mid_grid(int n = 128, double half = 12.0) {
    return make_grid({-half, half, n, false}, {-half, half, n, false}, 1.0);
}

// Band-limited decaying test state: Gaussian envelope times a few modes.
// The envelope must push boundary values below ~1e-11 of peak, otherwise
// multiplication by the coordinate ramps wraps with a jump and Gibbs
// noise leaks into the spectral derivatives.
states::PhaseState random_test_state(const PhaseGrid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    numgrid::Field f(g, numgrid::FieldShape::OverQP);
    const double sq = g.q.length() / 14.0, sp = g.p.length() / 14.0;
    struct Mode { double aq, ap, re, im; };
    std::vector<Mode> modes(4);
    for (auto& m : modes) m = {2.0 * U(rng), 2.0 * U(rng), U(rng), U(rng)};
    for (int j = 0; j < g.q.n; ++j) {
        const double q = g.q.coord(j);
        for (int i = 0; i < g.p.n; ++i) {
            const double p = g.p.coord(i);
            numgrid::cd acc(0, 0);
            for (const auto& m : modes)
                acc += numgrid::cd(m.re, m.im) *
                       std::exp(numgrid::cd(0, m.aq * q + m.ap * p));
            f.at(j, i) = acc * std::exp(-0.5 * (q * q) / (sq * sq) - 0.5 * (p * p) / (sp * sp));
        }
    }
    return states::PhaseState(std::move(f));
}

}  // namespace

TEST_CASE("exterior and symplectic derivatives of simple functions") {
    const PhaseGrid g = mid_grid(64);

    const auto fq = GeneratingFunction::parse("q");
    const OneForm dq = exterior_d(fq, g);
    CHECK(dq.alpha_q.max_abs() == 1.0);
    CHECK(dq.alpha_p.max_abs() == 0.0);
    const OneForm dpr = symplectic_d(fq, g);
    for (int k = 0; k < dpr.alpha_q.size(); ++k) CHECK(dpr.alpha_q[k] == -1.0);
    CHECK(dpr.alpha_p.max_abs() == 0.0);

    const auto fp = GeneratingFunction::parse("p");
    const OneForm dp2 = symplectic_d(fp, g);
    CHECK(dp2.alpha_q.max_abs() == 0.0);
    for (int k = 0; k < dp2.alpha_p.size(); ++k) CHECK(dp2.alpha_p[k] == 1.0);

    const auto fc = GeneratingFunction::canonical();
    const OneForm dfc = exterior_d(fc, g);
    const OneForm dfcs = symplectic_d(fc, g);
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            err = std::max(err, std::abs(dfc.alpha_q.at(j, i) - 0.5 * g.p.coord(i)));
            err = std::max(err, std::abs(dfc.alpha_p.at(j, i) - 0.5 * g.q.coord(j)));
            err = std::max(err, std::abs(dfcs.alpha_q.at(j, i) + 0.5 * g.p.coord(i)));
        }
    CHECK(err < 1e-14);

    const auto trig = GeneratingFunction::parse("sin(q)*cos(p)");
    const OneForm dt = exterior_d(trig, g);
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            const double q = g.q.coord(j), p = g.p.coord(i);
            err = std::max(err, std::abs(dt.alpha_q.at(j, i) - std::cos(q) * std::cos(p)));
            err = std::max(err, std::abs(dt.alpha_p.at(j, i) + std::sin(q) * std::sin(p)));
        }
    CHECK(err < 1e-8);
}

TEST_CASE("canonical forms: d theta = omega exactly, theta vanishes at p=0") {
    const PhaseGrid g = mid_grid(64);
    const OneForm theta = canonical_theta(g);

    const numgrid::RealField dtheta = d_of_oneform(theta);
    for (int k = 0; k < dtheta.size(); ++k) CHECK(dtheta[k] == 1.0);

    // the p = 0 row of alpha_q vanishes
    for (int j = 0; j < g.q.n; ++j) CHECK(theta.alpha_q.at(j, g.p.n / 2) == 0.0);

    const numgrid::RealField H = canonical_omega_coefficient(g);  // constant 1 reused as H = E
    const PoincareCartan pc = poincare_cartan(theta, H, g);
    for (int k = 0; k < theta.alpha_q.size(); ++k) {
        CHECK(pc.restriction.alpha_q[k] == theta.alpha_q[k]);
        CHECK(pc.restriction.alpha_p[k] == theta.alpha_p[k]);
    }
}

TEST_CASE("d of one-forms: exact forms close, q dp has coefficient 1") {
    const PhaseGrid g = mid_grid(64);
    for (const char* text : {"p*q/2", "sin(q)*cos(p)", "q^2*p/4", "exp(-q^2/8-p^2/8)"}) {
        const auto f = GeneratingFunction::parse(text);
        CHECK(closedness_residual(exterior_d(f, g)) < 1e-8);
    }
    const OneForm qdp = oneform_from_exprs(Expr::number(0.0), Expr::variable(Var::Q), g);
    const numgrid::RealField d = d_of_oneform(qdp);
    for (int k = 0; k < d.size(); ++k) CHECK(d[k] == 1.0);

    const OneForm pdq = oneform_from_exprs(Expr::variable(Var::P), Expr::number(0.0), g);
    CHECK(closedness_residual(pdq) == 1.0);

    const OneForm consts = oneform_from_exprs(Expr::number(1.5), Expr::number(-0.5), g);
    CHECK(closedness_residual(consts) < 1e-12);
}

TEST_CASE("d_of_oneform falls back to spectral derivatives for sampled forms") {
    const PhaseGrid g = mid_grid(128);
    // grid-periodic components so the spectral route is legitimate
    const double kq = 2.0 * std::numbers::pi / g.q.length();
    const double kp = 2.0 * std::numbers::pi / g.p.length();
    numgrid::RealField aq(g, numgrid::FieldShape::OverQP), ap(g, numgrid::FieldShape::OverQP);
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            const double q = g.q.coord(j), p = g.p.coord(i);
            aq.at(j, i) = std::sin(3 * kq * q) * std::cos(2 * kp * p);
            ap.at(j, i) = std::cos(kq * q) * std::sin(kp * p);
        }
    OneForm alpha{aq, ap, std::nullopt, std::nullopt};
    const numgrid::RealField d = d_of_oneform(alpha);
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            const double q = g.q.coord(j), p = g.p.coord(i);
            const double expect = -kq * std::sin(kq * q) * std::sin(kp * p) -
                                  2 * kp * std::sin(3 * kq * q) * (-std::sin(2 * kp * p));
            err = std::max(err, std::abs(d.at(j, i) - expect));
        }
    CHECK(err < 1e-9);
}

TEST_CASE("line integrals: exactness, Stokes on a rectangle, homotopic paths") {
    const PhaseGrid g = mid_grid(128);

    // df integrates to boundary differences for any path
    const auto f = GeneratingFunction::parse("sin(q)*cos(p) + q^2/8");
    const OneForm df = exterior_d(f, g);
    PathPolyline path{{{-3.0, -2.0}, {1.5, 4.0}, {5.0, 1.0}}, 64};
    const double val = line_integral(df, path);
    const double expect = f.eval(5.0, 1.0) - f.eval(-3.0, -2.0);
    CHECK(std::abs(val - expect) < 1e-6);

    // Stokes: counter-clockwise rectangle boundary of theta sweeps the area
    const OneForm theta = canonical_theta(g);
    PathPolyline rect{{{-3.0, -2.0}, {5.0, -2.0}, {5.0, 4.0}, {-3.0, 4.0}, {-3.0, -2.0}}, 64};
    CHECK(std::abs(line_integral(theta, rect) - 48.0) < 1e-6);

    // homotopic polylines agree for exact forms
    PathPolyline path2{{{-3.0, -2.0}, {-1.0, 3.5}, {2.0, -3.0}, {5.0, 1.0}}, 64};
    CHECK(std::abs(line_integral(df, path2) - expect) < 1e-6);

    // constant closed form: path independence
    const OneForm cform = oneform_from_exprs(Expr::number(0.7), Expr::number(0.0), g);
    CHECK(std::abs(line_integral(cform, path) - line_integral(cform, path2)) < 1e-8);

    PathPolyline outside{{{-3.0, -2.0}, {40.0, 0.0}}, 64};
    CHECK_THROWS_AS(line_integral(theta, outside), PathOutOfDomainError);
}

TEST_CASE("line integral via bilinear interpolation of sampled components") {
    const PhaseGrid g = mid_grid(256);
    OneForm theta = canonical_theta(g);
    theta.q_expr.reset();
    theta.p_expr.reset();  // force the sampled path
    PathPolyline rect{{{-3.0, -2.0}, {5.0, -2.0}, {5.0, 4.0}, {-3.0, 4.0}, {-3.0, -2.0}}, 64};
    // bilinear is exact for the linear components of theta
    CHECK(std::abs(line_integral(theta, rect) - 48.0) < 1e-9);
}

TEST_CASE("gauge shifts of theta: closed forms pass, p dq is rejected") {
    const PhaseGrid g = mid_grid(64);
    const OneForm theta = canonical_theta(g);

    const auto f = GeneratingFunction::parse("q*p/2 + sin(q)");
    const OneForm df = exterior_d(f, g);
    const OneForm shifted = gauge_shift_theta(theta, df);
    const numgrid::RealField before = d_of_oneform(theta);
    const numgrid::RealField after = d_of_oneform(shifted);
    double err = 0.0;
    for (int k = 0; k < before.size(); ++k) err = std::max(err, std::abs(after[k] - before[k]));
    CHECK(err < 1e-8);

    OneForm zero = oneform_from_exprs(Expr::number(0.0), Expr::number(0.0), g);
    const OneForm same = gauge_shift_theta(theta, zero);
    for (int k = 0; k < theta.alpha_q.size(); ++k) {
        CHECK(same.alpha_q[k] == theta.alpha_q[k]);
        CHECK(same.alpha_p[k] == theta.alpha_p[k]);
    }

    const OneForm pdq = oneform_from_exprs(Expr::variable(Var::P), Expr::number(0.0), g);
    CHECK_THROWS_AS(gauge_shift_theta(theta, pdq), NotClosedError);
}

TEST_CASE("connections from generating functions satisfy the component map") {
    const PhaseGrid g = mid_grid(64);

    const Connection A0 = connection_from_generating(GeneratingFunction::canonical(), g);
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            err = std::max(err, std::abs(A0.a_q.at(j, i) - 0.5 * g.p.coord(i)));
            err = std::max(err, std::abs(A0.a_p.at(j, i) - 0.5 * g.q.coord(j)));
        }
    CHECK(err < 1e-14);

    const Connection Az = connection_from_generating(GeneratingFunction::zero(), g);
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            err = std::max(err, std::abs(Az.a_q.at(j, i)));
            err = std::max(err, std::abs(Az.a_p.at(j, i) - g.q.coord(j)));
        }
    CHECK(err == 0.0);

    const auto fwob = GeneratingFunction::parse("p*q/2 + 0.1*sin(q)");
    const Connection Aw = connection_from_generating(fwob, g);
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            const double q = g.q.coord(j), p = g.p.coord(i);
            err = std::max(err, std::abs(Aw.a_q.at(j, i) - (0.5 * p + 0.1 * std::cos(q))));
            err = std::max(err, std::abs(Aw.a_p.at(j, i) - 0.5 * q));
        }
    CHECK(err < 1e-13);
    CHECK(integrability_residual(Aw).max_abs() < 1e-8);
}

TEST_CASE("integrability residual: generated, canonical, broken") {
    const PhaseGrid g = mid_grid(64);

    for (const char* text : {"p*q/2", "0", "sin(q)*cos(p)", "q^2/4 - p^2*q/8"}) {
        const Connection A = connection_from_generating(GeneratingFunction::parse(text), g);
        CHECK(integrability_residual(A).max_abs() < 1e-8);
    }

    const Connection A0 = connection_from_generating(GeneratingFunction::canonical(), g);
    CHECK(integrability_residual(A0).max_abs() == 0.0);

    const Connection broken =
        connection_from_exprs(Expr::variable(Var::P), Expr::variable(Var::Q), g);
    const numgrid::RealField res = integrability_residual(broken);
    for (int k = 0; k < res.size(); ++k) CHECK(res[k] == 1.0);
}

TEST_CASE("covariant operators: standard representation and multiplication") {
    const PhaseGrid g = mid_grid(128);
    const states::Wavefunction psi = states::oscillator_eigenstate(0, {1.0, 1.0}, g);

    // f = 0: A_q = 0 so P acts as -i hbar d/dq on the replicated state
    const auto fz = GeneratingFunction::zero();
    const Connection Az = connection_from_generating(fz, g);
    const states::PhaseState lifted = states::lift_state(psi, fz, g);
    const CovariantOps ops = covariant_ops(Az);

    const states::PhaseState Pl = ops.apply_p(lifted);
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j) {
        const double q = g.q.coord(j);
        const numgrid::cd expect = numgrid::cd(0, -1.0) * (-q * psi[j]);  // -i hbar psi'
        for (int i = 0; i < g.p.n; ++i)
            err = std::max(err, std::abs(Pl.values().at(j, i) - expect));
    }
    CHECK(err < 1e-9);

    // applyQ with A_p = q on a p-independent state multiplies by q
    const states::PhaseState Ql = ops.apply_q(lifted);
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i)
            err = std::max(err, std::abs(Ql.values().at(j, i) - g.q.coord(j) * psi[j]));
    CHECK(err < 1e-10);
}

TEST_CASE("canonical covariant operators act as their defining formulas") {
    const PhaseGrid g = mid_grid(128);
    std::mt19937_64 rng(5150);
    const Connection A0 = connection_from_generating(GeneratingFunction::canonical(), g);
    const CovariantOps ops = covariant_ops(A0);
    const states::PhaseState test = random_test_state(g, rng);

    // Q = q/2 + i hbar d_p, P = p/2 - i hbar d_q on frameless states
    const numgrid::Field dp = numgrid::derivative(test.values(), numgrid::Axis::P);
    const numgrid::Field dq = numgrid::derivative(test.values(), numgrid::Axis::Q);
    const auto Qv = ops.apply_q(test).values();
    const auto Pv = ops.apply_p(test).values();
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j) {
        for (int i = 0; i < g.p.n; ++i) {
            const numgrid::cd expectQ =
                0.5 * g.q.coord(j) * test.values().at(j, i) + numgrid::cd(0, g.hbar) * dp.at(j, i);
            const numgrid::cd expectP =
                0.5 * g.p.coord(i) * test.values().at(j, i) - numgrid::cd(0, g.hbar) * dq.at(j, i);
            err = std::max(err, std::abs(Qv.at(j, i) - expectQ));
            err = std::max(err, std::abs(Pv.at(j, i) - expectP));
        }
    }
    CHECK(err < 1e-12);
}

TEST_CASE("commutator residual: integrable connections vs broken counterexample") {
    const PhaseGrid g = mid_grid(128);
    std::mt19937_64 rng(2024);

    const Connection A0 = connection_from_generating(GeneratingFunction::canonical(), g);
    const states::Wavefunction psi = states::oscillator_eigenstate(0, {1.0, 1.0}, g);
    const states::PhaseState lifted =
        states::lift_state(psi, GeneratingFunction::canonical(), g);
    CHECK(commutator_residual(A0, lifted) < 1e-8);

    const char* fs[] = {"p*q/2", "0", "p*q/2 + 0.2*sin(q)*cos(p)"};
    for (const char* text : fs) {
        const Connection A = connection_from_generating(GeneratingFunction::parse(text), g);
        for (int t = 0; t < 3; ++t) {
            const states::PhaseState test = random_test_state(g, rng);
            CHECK(commutator_residual(A, test) < 1e-7 * std::max(1.0, test.values().max_abs()));
        }
    }

    const Connection broken =
        connection_from_exprs(Expr::variable(Var::P), Expr::variable(Var::Q), g);
    const states::PhaseState test = random_test_state(g, rng);
    double interior_peak = 0.0;
    for (int j = g.q.n / 10; j < g.q.n - g.q.n / 10; ++j)
        for (int i = g.p.n / 10; i < g.p.n - g.p.n / 10; ++i)
            interior_peak = std::max(interior_peak, std::abs(test.values().at(j, i)));
    CHECK(commutator_residual(broken, test) > 0.5 * g.hbar * interior_peak);
}

TEST_CASE("gauge shifts of connections") {
    const PhaseGrid g = mid_grid(64);
    const auto f0 = GeneratingFunction::parse("p*q/2 + 0.3*sin(q)");
    const auto f = GeneratingFunction::parse("q^2/8 + 0.2*cos(p)");
    const Connection A = connection_from_generating(f0, g);

    // constant f leaves the connection alone
    const Connection same = gauge_shift_connection(A, GeneratingFunction::parse("4.2"), g.hbar);
    for (int k = 0; k < A.a_q.size(); ++k) {
        CHECK(same.a_q[k] == A.a_q[k]);
        CHECK(same.a_p[k] == A.a_p[k]);
    }

    // shifting by d'f equals regenerating from f0 - f
    const Connection shifted = gauge_shift_connection(A, f, g.hbar);
    const Connection direct =
        connection_from_generating(GeneratingFunction::from_expr(f0.f() - f.f()), g);
    double err = 0.0;
    for (int k = 0; k < shifted.a_q.size(); ++k) {
        err = std::max(err, std::abs(shifted.a_q[k] - direct.a_q[k]));
        err = std::max(err, std::abs(shifted.a_p[k] - direct.a_p[k]));
    }
    CHECK(err < 1e-10);
    CHECK(integrability_residual(shifted).max_abs() < 1e-10);

    // the deliberately wrong d-shift breaks integrability by 2 d_q d_p f
    const Connection wrong =
        gauge_shift_connection_with_d(A, GeneratingFunction::canonical(), g.hbar);
    const numgrid::RealField res = integrability_residual(wrong);
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < res.size(); ++k) {
        lo = std::min(lo, std::abs(res[k]));
        hi = std::max(hi, std::abs(res[k]));
    }
    CHECK(lo > 0.5);
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("generating functions know when spectral gradients are unsafe") {
    const PhaseGrid g = mid_grid(128);
    CHECK_FALSE(GeneratingFunction::canonical().spectral_safe(g));
    CHECK_FALSE(GeneratingFunction::parse("sin(q)").spectral_safe(g));  // 24 not a period

    // grid-periodic function: spectral and symbolic gradients agree
    std::ostringstream os;
    const double kq = 2.0 * std::numbers::pi / g.q.length();
    os.precision(17);
    os << "sin(" << kq << "*q)*cos(" << kq << "*p)";
    const auto f = GeneratingFunction::parse(os.str());
    CHECK(f.spectral_safe(g));
    const numgrid::RealField sym = f.sample_grad_q(g);
    const numgrid::RealField spec = numgrid::derivative(f.sample(g), numgrid::Axis::Q);
    double err = 0.0;
    for (int k = 0; k < sym.size(); ++k) err = std::max(err, std::abs(sym[k] - spec[k]));
    CHECK(err < 1e-8);
}
