/// @file grid.hpp
/// @brief Uniform phase-space grids: axis specs and the (q,p,hbar) grid.
#pragma once

#include <string>

#include "phasewig/errors.hpp"

namespace phasewig::numgrid {

/// One uniform axis. Samples are x_k = min + k*h, k = 0..n-1, with
/// h = (max-min)/n; the right endpoint is not a sample (periodic
/// convention). The periodic flag marks data as genuinely periodic,
/// which turns off decay diagnostics at the boundary.
struct AxisSpec {
    double min = 0.0;
    double max = 1.0;
    int n = 0;
    bool periodic = false;

    double spacing() const { return (max - min) / n; }
    double length() const { return max - min; }
    double coord(int k) const { return min + k * spacing(); }
    void validate(const char* label) const;

    bool operator==(const AxisSpec&) const = default;
};

struct PhaseGrid {
    AxisSpec q;
    AxisSpec p;
    double hbar = 1.0;

    void validate() const;
    bool operator==(const PhaseGrid&) const = default;
};

/// Validating factory; throws InvalidSpecError on bad specs.
PhaseGrid make_grid(const AxisSpec& q_spec, const AxisSpec& p_spec, double hbar);

std::string describe(const PhaseGrid& g);

}  // namespace phasewig::numgrid
