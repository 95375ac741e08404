#include "phasewig/grid.hpp"

#include <cmath>
#include <sstream>

namespace phasewig::numgrid {

void AxisSpec::validate(const char* label) const {
    if (!(max > min))
        throw InvalidSpecError(std::string(label) + " axis: max must exceed min");
    if (n < 8)
        throw InvalidSpecError(std::string(label) + " axis: need at least 8 samples, got " +
                               std::to_string(n));
    if (!(spacing() > 0.0) || !std::isfinite(spacing()))
        throw InvalidSpecError(std::string(label) + " axis: spacing must be positive and finite");
}

void PhaseGrid::validate() const {
    q.validate("q");
    p.validate("p");
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw InvalidSpecError("hbar must be positive and finite");
}

PhaseGrid make_grid(const AxisSpec& q_spec, const AxisSpec& p_spec, double hbar) {
    PhaseGrid g{q_spec, p_spec, hbar};
    g.validate();
    return g;
}

std::string describe(const PhaseGrid& g) {
    std::ostringstream os;
    os << "q:[" << g.q.min << "," << g.q.max << ")x" << g.q.n
       << " p:[" << g.p.min << "," << g.p.max << ")x" << g.p.n
       << " hbar=" << g.hbar;
    return os.str();
}

}  // namespace phasewig::numgrid
