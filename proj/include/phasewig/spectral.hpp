/// @file spectral.hpp
/// @brief Fourier-spectral calculus on uniform grids: derivatives,
/// band-limited shifts, rectangle quadrature, spectral refinement.
///
/// All of these assume the data is either genuinely periodic on the axis
/// or decays below tolerance at the boundary (decay padding). Shifts are
/// phase rotations in the spectral domain, so non-lattice amounts work.
#pragma once

#include "phasewig/field.hpp"

namespace phasewig::numgrid {

/// Spectral first derivative along the given axis. The Nyquist mode is
/// zeroed (keeps real data real).
Field derivative(const Field& f, Axis axis);
RealField derivative(const RealField& f, Axis axis);

/// Spectral second derivative (applies the full -k^2 symbol, Nyquist
/// included).
Field second_derivative(const Field& f, Axis axis);

/// Band-limited translation x -> x + amount along the axis.
Field shift(const Field& f, Axis axis, double amount);

/// Rectangle-rule reduction over one axis of a 2-D field.
Field integrate_axis(const Field& f, Axis axis);

/// Rectangle-rule integral over all axes of the field.
cd integrate_all(const Field& f);
double integrate_all(const RealField& f);

/// Rectangle quadrature of a 1-D sample vector with spacing h.
cd integrate_samples(const std::vector<cd>& v, double h);
double integrate_samples(const std::vector<double>& v, double h);

/// Exact band-limited interpolation of 1-D samples onto a grid with
/// double the sample count (same interval).
std::vector<cd> refine2(const std::vector<cd>& v);

/// Largest |value| on the boundary samples of the axis, divided by the
/// peak |value| of the field; 0 for an axis flagged periodic.
double boundary_leakage(const Field& f, Axis axis);
double boundary_leakage_1d(const std::vector<cd>& v, bool periodic);

/// L2 norm by rectangle quadrature.
double l2_norm(const Field& f);

}  // namespace phasewig::numgrid
