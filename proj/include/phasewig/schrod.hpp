/// @file schrod.hpp
/// @brief Configuration-space eigensolver and the phase-space
/// Schroedinger operator built from covariant position/momentum.
#pragma once

#include <string>
#include <vector>

#include "phasewig/symcalc.hpp"

namespace phasewig::schrod {

using numgrid::PhaseGrid;
using states::PhaseState;
using states::Wavefunction;
using symcalc::Connection;
using symcalc::GeneratingFunction;

/// V(q) = sum_k c_k q^k, degree capped at 4 so V of an operator stays a
/// finite composition. Confining: highest nonzero coefficient must sit
/// at an even power and be positive.
struct PolynomialPotential {
    std::vector<double> coeffs;
    void validate() const;
    int degree() const;
    double eval(double q) const;
};

struct EigenPair {
    double energy = 0.0;
    Wavefunction state;
    double residual = 0.0;  // ||H psi - E psi|| / ||psi|| of the discrete H
};

/// Spectral discretization of H = -(hbar^2/2m) d^2/dq^2 + V(q), dense
/// symmetric eigensolve, k lowest pairs sorted by energy.
std::vector<EigenPair> solve_config(const PolynomialPotential& V, double mass,
                                    const PhaseGrid& grid, int k);

/// H(Q_A, P_A) Psi = (1/2m) P(P(Psi)) + V(Q)(Psi), all applications via
/// the covariant operators; V composed in Horner order.
PhaseState apply_phase_hamiltonian(const Connection& A, const PolynomialPotential& V, double mass,
                                   const PhaseState& Psi);

/// ||(H - E) Psi||_2 / ||Psi||_2 over the interior (outer 10% excluded).
double phase_residual(const Connection& A, const PolynomialPotential& V, double mass,
                      const PhaseState& Psi, double energy);

struct SweepCell {
    std::string f_text;
    int level = 0;
    double energy = 0.0;
    double phase_res = 0.0;
    double integrability_res = 0.0;
    double commutator_res = 0.0;
    std::string error;  // empty on success
};

struct SweepReport {
    std::vector<SweepCell> cells;
    double max_phase_res = 0.0;
    double max_integrability_res = 0.0;
    double max_commutator_res = 0.0;
};

/// For every f and every one of the k lowest eigenpairs: build the
/// connection from f, lift the eigenstate with the same f, and record the
/// three residuals. Per-cell failures are recorded, never thrown.
SweepReport equivalence_sweep(const PolynomialPotential& V, double mass, const PhaseGrid& grid,
                              const std::vector<GeneratingFunction>& fs, int k);

}  // namespace phasewig::schrod
