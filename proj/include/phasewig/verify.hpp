/// @file verify.hpp
/// @brief The cross-module invariant suite: every numeric property the
/// toolkit promises, evaluated as named checks with pinned thresholds.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phasewig::verify {

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool greater_is_pass = false;  // default: pass when value <= threshold
    bool pass = false;
};

struct Options {
    std::uint64_t seed = 42;
    int grid_n = 512;        // main grid samples per axis (>= 256)
    double grid_half = 12.0; // main grid spans [-half, half]^2
    /// Swap the generated connections for the deliberately broken preset
    /// (A_q = p, A_p = q) in the integrability/commutator checks; those
    /// checks then fail while everything else keeps passing.
    bool broken_connection = false;
};

struct Report {
    Options options;
    std::vector<Check> checks;
    bool all_pass = false;
};

/// Runs every check in a fixed order. Deterministic for a fixed seed.
Report run_suite(const Options& options);

}  // namespace phasewig::verify
