/// @file symcalc.hpp
/// @brief Symplectic geometry machinery: exterior and symplectic
/// derivatives, canonical forms, line integrals, connections built from
/// generating functions, covariant operators, and both gauge
/// transformation laws.
///
/// Component fields carry optional expression provenance. Derivatives of
/// forms and connections prefer the symbolic route when expressions are
/// attached (exact for the polynomial canonical objects, which are not
/// grid-periodic); purely sampled components fall back to Fourier
/// derivatives and then require band-limited data.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "phasewig/genfun.hpp"
#include "phasewig/states.hpp"

namespace phasewig::symcalc {

using numgrid::PhaseGrid;
using numgrid::RealField;

/// alpha = alpha_q dq + alpha_p dp.
struct OneForm {
    RealField alpha_q;
    RealField alpha_p;
    std::optional<exprlang::Expr> q_expr;
    std::optional<exprlang::Expr> p_expr;

    const PhaseGrid& grid() const { return alpha_q.grid(); }
    bool symbolic() const { return q_expr.has_value() && p_expr.has_value(); }
};

OneForm oneform_from_exprs(const exprlang::Expr& aq, const exprlang::Expr& ap,
                           const PhaseGrid& grid);

/// Symplectic connection components: A_q carries momentum units, A_p
/// length units (the 1/(i hbar) of the connection 1-form is bookkeeping
/// and never stored).
struct Connection {
    RealField a_q;
    RealField a_p;
    std::optional<exprlang::Expr> q_expr;
    std::optional<exprlang::Expr> p_expr;
    std::optional<GeneratingFunction> provenance;

    const PhaseGrid& grid() const { return a_q.grid(); }
    bool symbolic() const { return q_expr.has_value() && p_expr.has_value(); }
};

Connection connection_from_exprs(const exprlang::Expr& aq, const exprlang::Expr& ap,
                                 const PhaseGrid& grid);

struct PathPolyline {
    std::vector<std::array<double, 2>> vertices;  // (q,p) points
    int samples_per_segment = 64;
    void validate(const PhaseGrid& grid) const;
};

/// d f = (d_q f) dq + (d_p f) dp.
OneForm exterior_d(const GeneratingFunction& f, const PhaseGrid& grid);

/// d' f = -(d_q f) dq + (d_p f) dp.
OneForm symplectic_d(const GeneratingFunction& f, const PhaseGrid& grid);

/// theta = -p dq.
OneForm canonical_theta(const PhaseGrid& grid);

/// Coefficient field of omega = dq ^ dp (constant 1).
RealField canonical_omega_coefficient(const PhaseGrid& grid);

struct PoincareCartan {
    OneForm restriction;    // the fixed-energy slice equals theta
    RealField hamiltonian;  // recorded for reporting
};

PoincareCartan poincare_cartan(const OneForm& theta, const RealField& hamiltonian,
                               const PhaseGrid& grid);

/// Coefficient of d(alpha) on dq^dp: d_q alpha_p - d_p alpha_q.
RealField d_of_oneform(const OneForm& alpha);

/// max |d(xi)|; the gate applied before 1-form gauge shifts.
double closedness_residual(const OneForm& xi);

inline constexpr double kClosednessGate = 1e-6;

/// Composite Gauss-Legendre line integral of alpha along the polyline.
/// Components evaluate symbolically when expressions are attached,
/// otherwise by bilinear interpolation of the sampled fields.
double line_integral(const OneForm& alpha, const PathPolyline& path);

/// theta -> theta + xi for closed xi; throws NotClosedError when the
/// closedness gate fails.
OneForm gauge_shift_theta(const OneForm& theta_like, const OneForm& xi);

/// Component map A_q = d_q f, A_p = q - d_p f; integrability holds by
/// symmetry of mixed partials.
Connection connection_from_generating(const GeneratingFunction& f, const PhaseGrid& grid);

/// Field d_q A_p + d_p A_q - 1 (zero exactly when the connection is
/// integrable).
RealField integrability_residual(const Connection& A);

struct CovariantOps {
    std::function<states::PhaseState(const states::PhaseState&)> apply_q;
    std::function<states::PhaseState(const states::PhaseState&)> apply_p;
};

/// Q = A_p + i hbar d_p and P = A_q - i hbar d_q as grid operators.
/// States carrying a gauge frame are differentiated in that frame (the
/// lift phase is unwound first), which keeps the spectral calculus on
/// band-limited data; frameless states are differentiated directly.
CovariantOps covariant_ops(const Connection& A);

/// max |(QP - PQ - i hbar) test| over the interior (outer 10% excluded).
double commutator_residual(const Connection& A, const states::PhaseState& test);

/// A -> A + d'f in stored components: A_q -= d_q f, A_p += d_p f.
Connection gauge_shift_connection(const Connection& A, const GeneratingFunction& f, double hbar);

/// Diagnostic variant shifting with d instead of d' (A_q += d_q f); this
/// breaks integrability and exists to demonstrate that it does.
Connection gauge_shift_connection_with_d(const Connection& A, const GeneratingFunction& f,
                                         double hbar);

}  // namespace phasewig::symcalc
