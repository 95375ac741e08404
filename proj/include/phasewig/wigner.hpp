/// @file wigner.hpp
/// @brief Wigner transforms by three independent routes plus diagnostics.
///
/// Route 1 (direct): the correlation integral over the separation
/// variable, quadrature on an even-offset lattice with decay padding,
/// transformed to p with the exp(-i p y / hbar) kernel.
/// Route 2 (integral-free): for Gaussian-times-polynomial states, the
/// correlation collapses to a finite differential operator in d/dp
/// applied to a p-Gaussian; everything is closed form.
/// Route 3 (covariant): builds the bra/ket pair from the lifted state
/// and the exponentiated covariant momentum, evaluated by its
/// characteristic flow (translation plus accumulated phase).
#pragma once

#include <string>
#include <utility>

#include "phasewig/genfun.hpp"
#include "phasewig/states.hpp"

namespace phasewig::wigner {

using numgrid::PhaseGrid;
using numgrid::RealField;
using states::GaussianFactorState;
using states::Wavefunction;
using symcalc::GeneratingFunction;

/// Raw-transform imaginary parts above this are an error.
inline constexpr double kRealnessGate = 1e-6;
/// Input states must decay below this relative edge magnitude.
inline constexpr double kLeakGate = 1e-6;

struct WignerField {
    RealField values;  // OverQP
    double discarded_imag_max = 0.0;
    double boundary_leak = 0.0;
    std::string provenance;

    const PhaseGrid& grid() const { return values.grid(); }
};

/// The correlation-integral route.
WignerField wigner_direct(const Wavefunction& psi, const PhaseGrid& grid);

/// The integral-free route for psi = exp(-a q^2) phi(q), phi polynomial
/// of degree <= 32.
WignerField wigner_tegmen(const GaussianFactorState& state, const PhaseGrid& grid);

/// How the accumulated connection phase along the characteristic flow is
/// evaluated: by the antiderivative of the symbolic gradient (exact), or
/// by composite numerical quadrature (slow; cross-validation).
enum class PhasePath { SymbolicAntiderivative, Quadrature };

/// The covariant-operator route: lifts psi with f, builds the connection
/// from f, applies exp(+-(2iq/hbar) P) by translation plus accumulated
/// phase, and integrates bra times ket over the separation variable.
/// With f = p*q this reproduces wigner_direct.
WignerField covariant_wigner(const Wavefunction& psi, const GeneratingFunction& f,
                             const PhaseGrid& grid,
                             PhasePath path = PhasePath::SymbolicAntiderivative);

/// (integral over p, integral over q): position and momentum densities.
std::pair<RealField, RealField> marginals(const WignerField& w);

struct NegativityReport {
    double min_value = 0.0;
    int iq = 0;
    int ip = 0;
    double negative_mass_fraction = 0.0;
};

NegativityReport negativity_report(const WignerField& w);

/// Momentum wavefunction by quadrature Fourier transform, sampled on the
/// grid's p axis (oracle for the momentum marginal).
std::vector<numgrid::cd> momentum_wavefunction(const Wavefunction& psi, const PhaseGrid& grid);

}  // namespace phasewig::wigner
