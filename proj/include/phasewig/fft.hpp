/// @file fft.hpp
/// @brief Self-contained complex FFT used by the spectral operators.
///
/// Radix-2 for power-of-two lengths, Bluestein's chirp-z algorithm for
/// everything else, so grids are not restricted to power-of-two sample
/// counts. Forward convention: X_k = sum_m x_m exp(-2*pi*i*k*m/n); the
/// inverse applies the 1/n factor.
#pragma once

#include <complex>
#include <vector>

namespace phasewig::fft {

using cd = std::complex<double>;

/// In-place transform of a. Any length >= 1.
void transform(std::vector<cd>& a, bool inverse);

/// Strided in-place transform: count elements starting at base, step
/// `stride` apart. Used for column transforms of row-major 2-D data.
void transform_strided(cd* base, int count, int stride, bool inverse);

}  // namespace phasewig::fft
