#include "phasewig/schrod.hpp"

#include <cmath>
#include <numbers>

#include "phasewig/eigensym.hpp"

namespace phasewig::schrod {

using numgrid::Axis;
using numgrid::cd;
using numgrid::Field;
using numgrid::FieldShape;

void PolynomialPotential::validate() const {
    if (coeffs.empty()) throw InvalidSpecError("potential: no coefficients");
    if (coeffs.size() > 5)
        throw DegreeOverflowError("potential: degree capped at 4");
    const int deg = degree();
    if (deg == 0 || deg % 2 != 0 || !(coeffs[deg] > 0.0))
        throw NonConfiningPotentialError(
            "potential: leading coefficient must sit at a positive even power");
}

int PolynomialPotential::degree() const {
    for (std::size_t k = coeffs.size(); k-- > 0;)
        if (coeffs[k] != 0.0) return static_cast<int>(k);
    return 0;
}

double PolynomialPotential::eval(double q) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * q + coeffs[k];
    return acc;
}

std::vector<EigenPair> solve_config(const PolynomialPotential& V, double mass,
                                    const PhaseGrid& grid, int k) {
    V.validate();
    grid.validate();
    if (!(mass > 0.0)) throw InvalidSpecError("solve_config: mass must be positive");
    const int n = grid.q.n;
    if (n > 2048) throw InvalidSpecError("solve_config: dense solve capped at n = 2048");
    if (k < 1 || k > std::min(n, 64))
        throw InvalidSpecError("solve_config: eigenpair count out of range");

    // Circulant first row of the spectral second derivative.
    const double L = grid.q.length();
    std::vector<double> ksq(n);
    for (int j = 0; j < n; ++j) {
        const int jt = (j <= n / 2) ? j : j - n;
        const double kj = 2.0 * std::numbers::pi * jt / L;
        ksq[j] = kj * kj;
    }
    std::vector<double> row(n, 0.0);
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += -ksq[j] * std::cos(2.0 * std::numbers::pi * j * r / n);
        row[r] = acc / n;
    }

    const double kin = -grid.hbar * grid.hbar / (2.0 * mass);
    std::vector<double> H(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int m = 0; m < n; ++m) {
            double v = kin * row[(j - m + n) % n];
            if (j == m) v += V.eval(grid.q.coord(j));
            H[static_cast<std::size_t>(j) * n + m] = v;
        }
    }
    // symmetrize away rounding asymmetry from the cosine sums
    for (int j = 0; j < n; ++j)
        for (int m = j + 1; m < n; ++m) {
            const double s = 0.5 * (H[static_cast<std::size_t>(j) * n + m] +
                                    H[static_cast<std::size_t>(m) * n + j]);
            H[static_cast<std::size_t>(j) * n + m] = H[static_cast<std::size_t>(m) * n + j] = s;
        }

    std::vector<double> evals, evecs;
    eigensym::solve(H, n, evals, evecs);

    // rebuild H for residual checks (solve consumed its copy)
    std::vector<EigenPair> out;
    const double h = grid.q.spacing();
    for (int idx = 0; idx < k; ++idx) {
        std::vector<double> v(n);
        double mx = 0.0;
        int mxj = 0;
        for (int j = 0; j < n; ++j) {
            v[j] = evecs[static_cast<std::size_t>(j) * n + idx];
            if (std::abs(v[j]) > mx) {
                mx = std::abs(v[j]);
                mxj = j;
            }
        }
        if (v[mxj] < 0.0)
            for (auto& x : v) x = -x;

        double res_num = 0.0, res_den = 0.0;
        std::vector<double> hv(n, 0.0);
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int m = 0; m < n; ++m) acc += (kin * row[(j - m + n) % n]) * v[m];
            acc += V.eval(grid.q.coord(j)) * v[j];
            hv[j] = acc;
        }
        for (int j = 0; j < n; ++j) {
            const double r = hv[j] - evals[idx] * v[j];
            res_num += r * r;
            res_den += v[j] * v[j];
        }

        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm * h);
        std::vector<cd> samples(n);
        for (int j = 0; j < n; ++j) samples[j] = cd(v[j] / nrm, 0.0);

        const double leak = numgrid::boundary_leakage_1d(samples, grid.q.periodic);
        if (idx == k - 1 && leak > states::kStateLeakTolerance)
            throw BoundaryLeakageError(
                "solve_config: highest requested state leaks at the boundary (" +
                std::to_string(leak) + "); widen the grid");

        out.push_back(EigenPair{evals[idx],
                                Wavefunction(Field(grid, FieldShape::OverQ, std::move(samples)),
                                             leak),
                                std::sqrt(res_num / res_den)});
    }
    return out;
}

PhaseState apply_phase_hamiltonian(const Connection& A, const PolynomialPotential& V, double mass,
                                   const PhaseState& Psi) {
    V.validate();
    if (!(mass > 0.0)) throw InvalidSpecError("apply_phase_hamiltonian: mass must be positive");
    if (!(A.grid() == Psi.grid()))
        throw ShapeMismatchError("apply_phase_hamiltonian: connection/state grid mismatch");

    const symcalc::CovariantOps ops = symcalc::covariant_ops(A);

    const PhaseState pp = ops.apply_p(ops.apply_p(Psi));
    Field total = pp.values() * cd(1.0 / (2.0 * mass), 0.0);

    // V(Q) in Horner order: c0 + Q(c1 + Q(c2 + ... Q(cK)))
    const int deg = V.degree();
    PhaseState acc = Psi.with_values(Psi.values() * cd(V.coeffs[deg], 0.0));
    for (int kk = deg - 1; kk >= 0; --kk) {
        acc = ops.apply_q(acc);
        acc = acc.with_values(acc.values() + Psi.values() * cd(V.coeffs[kk], 0.0));
    }
    total = total + acc.values();
    return Psi.with_values(std::move(total));
}

double phase_residual(const Connection& A, const PolynomialPotential& V, double mass,
                      const PhaseState& Psi, double energy) {
    const PhaseState H = apply_phase_hamiltonian(A, V, mass, Psi);
    const PhaseGrid& grid = Psi.grid();
    const int nq = grid.q.n, np = grid.p.n;
    const int mq = nq / 10, mp = np / 10;
    double num = 0.0, den = 0.0;
    for (int iq = mq; iq < nq - mq; ++iq) {
        for (int ip = mp; ip < np - mp; ++ip) {
            const cd r = H.values().at(iq, ip) - energy * Psi.values().at(iq, ip);
            num += std::norm(r);
            den += std::norm(Psi.values().at(iq, ip));
        }
    }
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

SweepReport equivalence_sweep(const PolynomialPotential& V, double mass, const PhaseGrid& grid,
                              const std::vector<GeneratingFunction>& fs, int k) {
    SweepReport rep;
    std::vector<EigenPair> pairs;
    try {
        pairs = solve_config(V, mass, grid, k);
    } catch (const Error& e) {
        SweepCell cell;
        cell.f_text = "(eigensolve)";
        cell.error = e.what();
        rep.cells.push_back(cell);
        return rep;
    }

    for (const auto& f : fs) {
        for (int nlev = 0; nlev < static_cast<int>(pairs.size()); ++nlev) {
            SweepCell cell;
            cell.f_text = f.text();
            cell.level = nlev;
            cell.energy = pairs[nlev].energy;
            try {
                const Connection A = symcalc::connection_from_generating(f, grid);
                const PhaseState lifted = states::lift_state(pairs[nlev].state, f, grid);
                cell.phase_res = phase_residual(A, V, mass, lifted, pairs[nlev].energy);
                cell.integrability_res = symcalc::integrability_residual(A).max_abs();
                cell.commutator_res = symcalc::commutator_residual(A, lifted);
                rep.max_phase_res = std::max(rep.max_phase_res, cell.phase_res);
                rep.max_integrability_res =
                    std::max(rep.max_integrability_res, cell.integrability_res);
                rep.max_commutator_res = std::max(rep.max_commutator_res, cell.commutator_res);
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            rep.cells.push_back(std::move(cell));
        }
    }
    return rep;
}

}  // namespace phasewig::schrod
