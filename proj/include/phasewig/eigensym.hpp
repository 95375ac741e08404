/// @file eigensym.hpp
/// @brief Dense symmetric eigensolver: Householder tridiagonalization
/// followed by implicit-shift QL, eigenpairs sorted ascending.
/// Deterministic and self-contained; intended for desk-scale n <= 2048.
#pragma once

#include <vector>

namespace phasewig::eigensym {

/// a is n*n row-major symmetric (only fully read, not preserved).
/// On return: values[k] ascending, vectors row-major with eigenvector k
/// in column k (vectors[j*n + k] is component j), orthonormal.
void solve(std::vector<double> a, int n, std::vector<double>& values,
           std::vector<double>& vectors);

}  // namespace phasewig::eigensym
