#include "phasewig/wigner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace phasewig::wigner {

using numgrid::cd;
using numgrid::FieldShape;

namespace {

constexpr double kPi = std::numbers::pi;

// The separation lattice y_m = 2 h (m - n/2) keeps q +- y/2 on the q
// lattice, so the correlation needs no resampling; indices that leave the
// grid contribute zero (decay padding).
double separation(int m, int n, double h) { return 2.0 * h * (m - n / 2); }

void check_transform_inputs(const Wavefunction& psi, const PhaseGrid& grid, const char* who) {
    if (!(psi.grid() == grid))
        throw ShapeMismatchError(std::string(who) + ": state lives on a different grid");
    const double leak = psi.boundary_leak();
    if (leak > kLeakGate)
        throw BoundaryLeakageError(std::string(who) + ": state leaks at the boundary (" +
                                   std::to_string(leak) + ")");
    if (grid.p.n > grid.q.n)
        throw InvalidSpecError(std::string(who) +
                               ": p axis has more samples than the correlation lattice supports");
    const double h = grid.q.spacing();
    const double p_abs = std::max(std::abs(grid.p.min), std::abs(grid.p.coord(grid.p.n - 1)));
    const double p_nyquist = kPi * grid.hbar / (2.0 * h);
    if (p_abs > p_nyquist)
        throw InvalidSpecError(std::string(who) + ": p axis exceeds the separation-lattice "
                               "Nyquist bound " + std::to_string(p_nyquist));
}

WignerField finish_transform(numgrid::Field raw, double leak, std::string provenance,
                             const char* who) {
    const double imag_max = numgrid::max_imag_abs(raw);
    if (imag_max > kRealnessGate)
        throw RealnessError(std::string(who) + ": transform has imaginary magnitude " +
                            std::to_string(imag_max));
    WignerField out{numgrid::real_part(raw), imag_max, leak, std::move(provenance)};
    if (!out.values.all_finite())
        throw NumericalGateError(std::string(who) + ": non-finite transform values");
    return out;
}

}  // namespace

WignerField wigner_direct(const Wavefunction& psi, const PhaseGrid& grid) {
    check_transform_inputs(psi, grid, "wigner_direct");
    const int n = grid.q.n;
    const int np = grid.p.n;
    const double h = grid.q.spacing();
    const double hbar = grid.hbar;
    const double weight = 2.0 * h / (2.0 * kPi * hbar);

    // kernel[m][i] = exp(-i p_i y_m / hbar)
    std::vector<cd> kernel(static_cast<std::size_t>(n) * np);
    for (int m = 0; m < n; ++m) {
        const double y = separation(m, n, h);
        for (int i = 0; i < np; ++i)
            kernel[static_cast<std::size_t>(m) * np + i] =
                std::exp(cd(0.0, -grid.p.coord(i) * y / hbar));
    }

    const auto& s = psi.samples().values();
    numgrid::Field raw(grid, FieldShape::OverQP);
    std::vector<cd> row(np);
    for (int j = 0; j < n; ++j) {
        std::fill(row.begin(), row.end(), cd(0, 0));
        const int w = std::min(j, n - 1 - j);
        for (int mt = -w; mt <= w; ++mt) {
            const cd corr = std::conj(s[j - mt]) * s[j + mt];
            if (corr == cd(0, 0)) continue;
            const cd* krow = kernel.data() + static_cast<std::size_t>(mt + n / 2) * np;
            for (int i = 0; i < np; ++i) row[i] += corr * krow[i];
        }
        for (int i = 0; i < np; ++i) raw.at(j, i) = weight * row[i];
    }

    return finish_transform(std::move(raw), psi.boundary_leak(), "wigner_direct", "wigner_direct");
}

namespace {

using poly::CPoly;

// Polynomials in the derivative symbol D = d/dp with q-polynomial
// coefficients; index = power of D.
using BiPoly = std::vector<CPoly>;

BiPoly bipoly_mul(const BiPoly& a, const BiPoly& b) {
    BiPoly out(a.size() + b.size() - 1, CPoly{cd(0, 0)});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = poly::add(out[i + j], poly::mul(a[i], b[j]));
    return out;
}

// phi evaluated at the operator argument (q + c D) by Horner.
BiPoly bipoly_of_operator(const CPoly& phi, cd c) {
    const BiPoly arg{CPoly{cd(0, 0), cd(1, 0)}, CPoly{c}};  // q + c D
    BiPoly acc{CPoly{phi.back()}};
    for (std::size_t k = phi.size() - 1; k-- > 0;) {
        acc = bipoly_mul(acc, arg);
        acc[0] = poly::add(acc[0], CPoly{phi[k]});
    }
    return acc;
}

}  // namespace

WignerField wigner_tegmen(const GaussianFactorState& state, const PhaseGrid& grid) {
    state.validate();
    grid.validate();
    const double hbar = grid.hbar;
    const double a = state.a;
    const double alpha = 1.0 / (2.0 * a * hbar * hbar);
    const cd c(0.0, hbar / 2.0);  // i hbar / 2

    // phi*(q - c D) phi(q + c D); q and D commute, so this is ordinary
    // bivariate polynomial algebra.
    const BiPoly bra = bipoly_of_operator(poly::conj_coeffs(state.phi), -c);
    const BiPoly ket = bipoly_of_operator(state.phi, +c);
    const BiPoly op = bipoly_mul(bra, ket);

    // D^d exp(-alpha p^2) = g_d(p) exp(-alpha p^2),
    // g_{d+1} = g_d' - 2 alpha p g_d.
    std::vector<CPoly> gs(op.size());
    gs[0] = CPoly{cd(1, 0)};
    for (std::size_t d = 1; d < op.size(); ++d) {
        CPoly up(gs[d - 1].size() + 1, cd(0, 0));
        for (std::size_t k = 0; k < gs[d - 1].size(); ++k) up[k + 1] = gs[d - 1][k];
        gs[d] = poly::add(poly::derivative(gs[d - 1]), poly::scale(up, cd(-2.0 * alpha, 0)));
    }

    const int nq = grid.q.n, np = grid.p.n;
    std::vector<std::vector<cd>> bq(op.size(), std::vector<cd>(nq));
    std::vector<std::vector<cd>> gp(op.size(), std::vector<cd>(np));
    for (std::size_t d = 0; d < op.size(); ++d) {
        for (int j = 0; j < nq; ++j) bq[d][j] = poly::eval(op[d], cd(grid.q.coord(j), 0));
        for (int i = 0; i < np; ++i) gp[d][i] = poly::eval(gs[d], cd(grid.p.coord(i), 0));
    }

    const double pref = 1.0 / (hbar * std::sqrt(2.0 * kPi * a));
    numgrid::Field raw(grid, FieldShape::OverQP);
    for (int j = 0; j < nq; ++j) {
        const double q = grid.q.coord(j);
        const double envq = pref * std::exp(-2.0 * a * q * q);
        for (int i = 0; i < np; ++i) {
            const double p = grid.p.coord(i);
            cd acc(0, 0);
            for (std::size_t d = 0; d < op.size(); ++d) acc += bq[d][j] * gp[d][i];
            raw.at(j, i) = acc * envq * std::exp(-alpha * p * p);
        }
    }

    return finish_transform(std::move(raw), 0.0, "wigner_tegmen", "wigner_tegmen");
}

namespace {

// Composite Gauss-Legendre for the accumulated-phase integral of the
// quadrature path rule.
double integrate_grad_q(const GeneratingFunction& f, double y0, double span, double p) {
    static constexpr double gx[4] = {0.5 - 0.43056815579702629, 0.5 - 0.16999052179242816,
                                     0.5 + 0.16999052179242816, 0.5 + 0.43056815579702629};
    static constexpr double gw[4] = {0.17392742256872692, 0.32607257743127305,
                                     0.32607257743127305, 0.17392742256872692};
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(span))));
    double acc = 0.0;
    for (int s = 0; s < pieces; ++s) {
        const double lo = span * s / pieces, hi = span * (s + 1) / pieces;
        double piece = 0.0;
        for (int g = 0; g < 4; ++g) {
            const double x = y0 + lo + (hi - lo) * gx[g];
            piece += gw[g] * f.grad_q().eval(x, p);
        }
        acc += piece * (hi - lo);
    }
    return acc;
}

}  // namespace

WignerField covariant_wigner(const Wavefunction& psi, const GeneratingFunction& f,
                             const PhaseGrid& grid, PhasePath path) {
    check_transform_inputs(psi, grid, "covariant_wigner");
    const int n = grid.q.n;
    const int np = grid.p.n;
    const double h = grid.q.spacing();
    const double hbar = grid.hbar;
    const double weight = 2.0 * h / (2.0 * kPi * hbar);
    const auto& s = psi.samples().values();

    // Lift seed: Psi_f at the state argument, psi(q_r) e^{-i f(q_r,p)/hbar}.
    // Ket flow: translate by 2q and accumulate exp((i/hbar) int A_q); with
    // A_q = d_q f the accumulated phase telescopes to differences of f, so
    // each term needs f at the doubled coordinates only.
    auto fval = [&](double q, double p) {
        const double v = f.eval(q, p);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "covariant_wigner: f non-finite at (q=" << q << ", p=" << p << ")";
            throw EvalDomainError(os.str());
        }
        return v;
    };

    numgrid::Field raw(grid, FieldShape::OverQP);

    if (path == PhasePath::SymbolicAntiderivative) {
        // Per p row: U[r] = bra factor at q_r, V[r] = ket factor at q_r,
        // T[m] = e^{-2 i f(y_m, p)/hbar}.
        std::vector<cd> U(n), V(n), T(n);
        for (int i = 0; i < np; ++i) {
            const double p = grid.p.coord(i);
            for (int r = 0; r < n; ++r) {
                const double qr = grid.q.coord(r);
                const cd seed = s[r] * std::exp(cd(0.0, -fval(qr, p) / hbar));
                V[r] = std::exp(cd(0.0, +fval(2.0 * qr, p) / hbar)) * seed;
                U[r] = std::exp(cd(0.0, +fval(-2.0 * qr, p) / hbar)) * std::conj(seed);
            }
            for (int m = 0; m < n; ++m)
                T[m] = std::exp(cd(0.0, -2.0 * fval(separation(m, n, h), p) / hbar));
            for (int j = 0; j < n; ++j) {
                const int w = std::min(j, n - 1 - j);
                cd acc(0, 0);
                for (int mt = -w; mt <= w; ++mt)
                    acc += T[mt + n / 2] * U[j - mt] * V[j + mt];
                raw.at(j, i) = weight * acc;
            }
        }
    } else {
        // Literal flow evaluation: quadrature of A_q along each
        // characteristic. Slow; kept as an independent cross-check of the
        // antiderivative path.
        for (int i = 0; i < np; ++i) {
            const double p = grid.p.coord(i);
            std::vector<cd> seed(n);
            for (int r = 0; r < n; ++r)
                seed[r] = s[r] * std::exp(cd(0.0, -fval(grid.q.coord(r), p) / hbar));
            for (int j = 0; j < n; ++j) {
                const double twoq = 2.0 * grid.q.coord(j);
                const int w = std::min(j, n - 1 - j);
                cd acc(0, 0);
                for (int mt = -w; mt <= w; ++mt) {
                    const double y = separation(mt + n / 2, n, h);
                    const double ket_phase = integrate_grad_q(f, y, twoq, p);
                    const double bra_phase = -integrate_grad_q(f, y, -twoq, p);
                    const cd ket = std::exp(cd(0.0, +ket_phase / hbar)) * seed[j + mt];
                    const cd bra = std::exp(cd(0.0, -bra_phase / hbar)) * std::conj(seed[j - mt]);
                    acc += bra * ket;
                }
                raw.at(j, i) = weight * acc;
            }
        }
    }

    std::string prov = "covariant_wigner f=" + f.text();
    return finish_transform(std::move(raw), psi.boundary_leak(), std::move(prov),
                            "covariant_wigner");
}

std::pair<RealField, RealField> marginals(const WignerField& w) {
    const PhaseGrid& grid = w.grid();
    RealField pos(grid, FieldShape::OverQ);
    RealField mom(grid, FieldShape::OverP);
    const double hq = grid.q.spacing(), hp = grid.p.spacing();
    for (int j = 0; j < grid.q.n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < grid.p.n; ++i) acc += w.values.at(j, i);
        pos[j] = acc * hp;
    }
    for (int i = 0; i < grid.p.n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < grid.q.n; ++j) acc += w.values.at(j, i);
        mom[i] = acc * hq;
    }
    return {std::move(pos), std::move(mom)};
}

NegativityReport negativity_report(const WignerField& w) {
    NegativityReport rep;
    double neg = 0.0, total = 0.0;
    for (int j = 0; j < w.grid().q.n; ++j) {
        for (int i = 0; i < w.grid().p.n; ++i) {
            const double v = w.values.at(j, i);
            if (v < rep.min_value) {
                rep.min_value = v;
                rep.iq = j;
                rep.ip = i;
            }
            if (v < 0.0) neg += -v;
            total += std::abs(v);
        }
    }
    rep.negative_mass_fraction = (total > 0.0) ? neg / total : 0.0;
    return rep;
}

std::vector<cd> momentum_wavefunction(const Wavefunction& psi, const PhaseGrid& grid) {
    const int nq = grid.q.n, np = grid.p.n;
    const double h = grid.q.spacing();
    const double hbar = grid.hbar;
    const double pref = h / std::sqrt(2.0 * kPi * hbar);
    std::vector<cd> out(np, cd(0, 0));
    for (int i = 0; i < np; ++i) {
        const double p = grid.p.coord(i);
        cd acc(0, 0);
        for (int j = 0; j < nq; ++j)
            acc += psi[j] * std::exp(cd(0.0, -p * grid.q.coord(j) / hbar));
        out[i] = pref * acc;
    }
    return out;
}

}  // namespace phasewig::wigner
