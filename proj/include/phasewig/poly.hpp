/// @file poly.hpp
/// @brief Dense univariate polynomials with complex coefficients,
/// coeffs[k] multiplying x^k. Shared by the oscillator factor states and
/// the integral-free Wigner route.
#pragma once

#include <complex>
#include <vector>

namespace phasewig::poly {

using cd = std::complex<double>;
using CPoly = std::vector<cd>;

CPoly trim(CPoly a);
CPoly add(const CPoly& a, const CPoly& b);
CPoly mul(const CPoly& a, const CPoly& b);
CPoly scale(const CPoly& a, cd s);
CPoly derivative(const CPoly& a);
/// Substitute x -> s*x.
CPoly stretch(const CPoly& a, cd s);
cd eval(const CPoly& a, cd x);
CPoly conj_coeffs(const CPoly& a);
int degree(const CPoly& a);

/// Physicists' Hermite polynomial H_n via the three-term recurrence.
CPoly hermite(int n);

}  // namespace phasewig::poly
