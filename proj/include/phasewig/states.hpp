/// @file states.hpp
/// @brief Configuration-space wavefunctions and their phase-space lifts
/// Psi_f(q,p) = exp(-i f(q,p)/hbar) psi(q).
#pragma once

#include <optional>
#include <string>

#include "phasewig/field.hpp"
#include "phasewig/genfun.hpp"
#include "phasewig/poly.hpp"
#include "phasewig/spectral.hpp"

namespace phasewig::states {

using numgrid::Field;
using numgrid::PhaseGrid;
using numgrid::RealField;

struct OscillatorParams {
    double mass = 1.0;
    double omega = 1.0;
    void validate() const;
};

/// Relative boundary magnitude above which factory-built states are
/// rejected as leaking out of the grid.
inline constexpr double kStateLeakTolerance = 1e-10;

/// Highest oscillator level the factories will build.
inline constexpr int kMaxOscillatorLevel = 32;

class Wavefunction {
public:
    Wavefunction(Field samples, double boundary_leak);

    const Field& samples() const { return samples_; }
    const PhaseGrid& grid() const { return samples_.grid(); }
    int n() const { return samples_.size(); }
    numgrid::cd operator[](int k) const { return samples_[k]; }

    double norm() const { return norm_; }
    double boundary_leak() const { return boundary_leak_; }

private:
    Field samples_;  // OverQ
    double norm_;
    double boundary_leak_;
};

/// psi(q) = exp(-a q^2) phi(q) with polynomial phi.
struct GaussianFactorState {
    double a = 0.5;
    poly::CPoly phi{poly::cd(1, 0)};
    void validate() const;
};

class PhaseState {
public:
    explicit PhaseState(Field values);
    PhaseState(Field values, symcalc::GeneratingFunction frame,
               std::optional<Wavefunction> source);

    const Field& values() const { return values_; }
    const PhaseGrid& grid() const { return values_.grid(); }

    /// Gauge frame: when set, values = exp(-i f/hbar) * (reduced field),
    /// which is what the covariant operators differentiate stably.
    const std::optional<symcalc::GeneratingFunction>& frame() const { return frame_; }
    /// Source wavefunction when this state is a pure lift.
    const std::optional<Wavefunction>& source() const { return source_; }

    PhaseState with_values(Field v) const;

private:
    Field values_;  // OverQP
    std::optional<symcalc::GeneratingFunction> frame_;
    std::optional<Wavefunction> source_;
};

/// Normalized n-th harmonic-oscillator eigenstate built by the stable
/// orthonormal Hermite-function recurrence.
Wavefunction oscillator_eigenstate(int n, const OscillatorParams& params, const PhaseGrid& grid);

/// Normalized Gaussian packet (2 pi sigma^2)^{-1/4}
/// exp(-(q-q0)^2/(4 sigma^2)) exp(i p0 q / hbar).
Wavefunction gaussian_packet(double q0, double p0, double sigma, const PhaseGrid& grid);

/// The factored form of the n-th eigenstate: a = m omega/(2 hbar) and
/// phi the matching scaled Hermite polynomial.
GaussianFactorState oscillator_factor_state(int n, const OscillatorParams& params, double hbar);

/// Wavefunction sampled from a factor state (normalized).
Wavefunction wavefunction_from_factor_state(const GaussianFactorState& s, const PhaseGrid& grid);

struct FactorizationReport {
    bool finite = false;
    std::complex<double> integral{0, 0};
    double max_abs_phi = 0.0;
    double refine_delta = 0.0;  // relative change of the integral at 2x sampling
};

/// Operational test of the Gaussian-factor hypothesis for the given a:
/// phi = psi * exp(+a q^2) must stay below an overflow guard and the
/// quadrature of exp(-2 a q^2) phi^2 must be stable under refinement.
FactorizationReport factorization_check(const Wavefunction& psi, double a);

/// Psi_f(q,p) = exp(-i f(q,p)/hbar) psi(q).
PhaseState lift_state(const Wavefunction& psi, const symcalc::GeneratingFunction& f,
                      const PhaseGrid& grid);

/// max over the grid of | |Psi(q,p)| - |psi(q)| |.
double born_residual(const PhaseState& Psi, const Wavefunction& psi);

}  // namespace phasewig::states
