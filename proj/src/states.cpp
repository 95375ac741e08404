#include "phasewig/states.hpp"

#include <cmath>
#include <numbers>

namespace phasewig::states {

using numgrid::Axis;
using numgrid::cd;
using numgrid::FieldShape;

void OscillatorParams::validate() const {
    if (!(mass > 0.0) || !(omega > 0.0))
        throw InvalidSpecError("oscillator parameters must satisfy m > 0, omega > 0");
}

void GaussianFactorState::validate() const {
    if (!(a > 0.0)) throw InvalidSpecError("factor state: a must be positive");
    if (poly::degree(phi) > kMaxOscillatorLevel)
        throw DegreeOverflowError("factor state: phi degree exceeds " +
                                  std::to_string(kMaxOscillatorLevel));
    double sum = 0.0;
    for (const auto& c : phi) sum += std::abs(c);
    if (sum == 0.0) throw InvalidSpecError("factor state: phi must be nonzero");
}

namespace {

double quadrature_norm(const std::vector<cd>& v, double h) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc * h);
}

Wavefunction finish_state(std::vector<cd> samples, const PhaseGrid& grid, const char* who) {
    const double leak = numgrid::boundary_leakage_1d(samples, grid.q.periodic);
    if (leak > kStateLeakTolerance)
        throw BoundaryLeakageError(std::string(who) +
                                   ": state does not decay at the grid boundary (relative edge "
                                   "magnitude " +
                                   std::to_string(leak) + ")");
    const double nrm = quadrature_norm(samples, grid.q.spacing());
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw InvalidSpecError(std::string(who) + ": degenerate state norm");
    for (auto& x : samples) x /= nrm;
    return Wavefunction(Field(grid, FieldShape::OverQ, std::move(samples)), leak);
}

}  // namespace

Wavefunction::Wavefunction(Field samples, double boundary_leak)
    : samples_(std::move(samples)), boundary_leak_(boundary_leak) {
    if (samples_.shape() != FieldShape::OverQ)
        throw ShapeMismatchError("Wavefunction: samples must live on the q axis");
    if (!samples_.all_finite()) throw InvalidSpecError("Wavefunction: non-finite samples");
    norm_ = quadrature_norm(samples_.values(), samples_.grid().q.spacing());
}

Wavefunction oscillator_eigenstate(int n, const OscillatorParams& params, const PhaseGrid& grid) {
    params.validate();
    grid.validate();
    if (n < 0 || n > kMaxOscillatorLevel)
        throw InvalidSpecError("oscillator_eigenstate: n must be in [0, " +
                               std::to_string(kMaxOscillatorLevel) + "]");

    const double s = std::sqrt(params.mass * params.omega / grid.hbar);
    const double amp = std::sqrt(s);  // (m omega / hbar)^{1/4}
    const double pi14 = std::pow(std::numbers::pi, -0.25);

    // Orthonormal Hermite functions h_k(x): h_{k+1} = sqrt(2/(k+1)) x h_k
    // - sqrt(k/(k+1)) h_{k-1}; renormalized per step so nothing overflows.
    const int nq = grid.q.n;
    std::vector<cd> samples(nq);
    for (int j = 0; j < nq; ++j) {
        const double x = s * grid.q.coord(j);
        double hkm1 = 0.0;
        double hk = pi14 * std::exp(-0.5 * x * x);
        for (int k = 0; k < n; ++k) {
            const double hkp1 =
                std::sqrt(2.0 / (k + 1)) * x * hk - std::sqrt(static_cast<double>(k) / (k + 1)) * hkm1;
            hkm1 = hk;
            hk = hkp1;
        }
        samples[j] = cd(amp * hk, 0.0);
    }
    return finish_state(std::move(samples), grid, "oscillator_eigenstate");
}

Wavefunction gaussian_packet(double q0, double p0, double sigma, const PhaseGrid& grid) {
    grid.validate();
    if (!(sigma > 0.0)) throw InvalidSpecError("gaussian_packet: sigma must be positive");
    const double amp = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
    const int nq = grid.q.n;
    std::vector<cd> samples(nq);
    for (int j = 0; j < nq; ++j) {
        const double q = grid.q.coord(j);
        const double g = amp * std::exp(-(q - q0) * (q - q0) / (4.0 * sigma * sigma));
        samples[j] = g * std::exp(cd(0.0, p0 * q / grid.hbar));
    }
    return finish_state(std::move(samples), grid, "gaussian_packet");
}

GaussianFactorState oscillator_factor_state(int n, const OscillatorParams& params, double hbar) {
    params.validate();
    if (n < 0 || n > kMaxOscillatorLevel)
        throw InvalidSpecError("oscillator_factor_state: n out of range");
    const double s = std::sqrt(params.mass * params.omega / hbar);
    poly::CPoly phi = poly::stretch(poly::hermite(n), poly::cd(s, 0));
    double norm = std::sqrt(s) * std::pow(std::numbers::pi, -0.25);
    for (int k = 1; k <= n; ++k) norm /= std::sqrt(2.0 * k);
    phi = poly::scale(phi, poly::cd(norm, 0));
    return GaussianFactorState{params.mass * params.omega / (2.0 * hbar), std::move(phi)};
}

Wavefunction wavefunction_from_factor_state(const GaussianFactorState& s, const PhaseGrid& grid) {
    s.validate();
    grid.validate();
    const int nq = grid.q.n;
    std::vector<cd> samples(nq);
    for (int j = 0; j < nq; ++j) {
        const double q = grid.q.coord(j);
        samples[j] = std::exp(-s.a * q * q) * poly::eval(s.phi, poly::cd(q, 0));
    }
    return finish_state(std::move(samples), grid, "wavefunction_from_factor_state");
}

FactorizationReport factorization_check(const Wavefunction& psi, double a) {
    if (!(a > 0.0)) throw InvalidSpecError("factorization_check: a must be positive");
    const PhaseGrid& grid = psi.grid();
    const double h = grid.q.spacing();
    constexpr double kOverflowGuard = 1e12;

    auto integral_of = [&](const std::vector<cd>& samples, double spacing, double* max_phi) {
        cd acc(0, 0);
        double peak = 0.0;
        for (std::size_t j = 0; j < samples.size(); ++j) {
            const double q = grid.q.min + spacing * static_cast<double>(j);
            const double grow = std::exp(a * q * q);
            const cd phi = samples[j] * grow;
            peak = std::max(peak, std::abs(phi));
            acc += std::exp(-2.0 * a * q * q) * phi * phi;
        }
        *max_phi = peak;
        return acc * spacing;
    };

    FactorizationReport rep;
    double peak_coarse = 0.0, peak_fine = 0.0;
    const cd coarse = integral_of(psi.samples().values(), h, &peak_coarse);
    const std::vector<cd> refined = numgrid::refine2(psi.samples().values());
    const cd fine = integral_of(refined, 0.5 * h, &peak_fine);

    rep.integral = coarse;
    // The guard looks at the stored samples only: spectral interpolation
    // carries absolute-level FFT noise that exp(a q^2) would amplify even
    // for perfectly legitimate a.
    rep.max_abs_phi = peak_coarse;
    const double scale = std::max(std::abs(coarse), 1e-300);
    rep.refine_delta = std::abs(fine - coarse) / scale;
    const bool guard_ok = std::isfinite(rep.max_abs_phi) && rep.max_abs_phi < kOverflowGuard;
    rep.finite = guard_ok && rep.refine_delta < 1e-6;
    return rep;
}

PhaseState::PhaseState(Field values) : values_(std::move(values)) {
    if (values_.shape() != FieldShape::OverQP)
        throw ShapeMismatchError("PhaseState: values must be a 2-D field");
}

PhaseState::PhaseState(Field values, symcalc::GeneratingFunction frame,
                       std::optional<Wavefunction> source)
    : values_(std::move(values)), frame_(std::move(frame)), source_(std::move(source)) {
    if (values_.shape() != FieldShape::OverQP)
        throw ShapeMismatchError("PhaseState: values must be a 2-D field");
}

PhaseState PhaseState::with_values(Field v) const {
    values_.require_same_layout(v, "PhaseState::with_values");
    if (frame_) return PhaseState(std::move(v), *frame_, std::nullopt);
    return PhaseState(std::move(v));
}

PhaseState lift_state(const Wavefunction& psi, const symcalc::GeneratingFunction& f,
                      const PhaseGrid& grid) {
    if (!(psi.grid() == grid))
        throw ShapeMismatchError("lift_state: wavefunction lives on a different grid");
    const RealField fs = f.sample(grid);  // throws EvalDomainError on non-finite f
    Field out(grid, FieldShape::OverQP);
    const double inv_hbar = 1.0 / grid.hbar;
    for (int iq = 0; iq < grid.q.n; ++iq) {
        const cd base = psi[iq];
        for (int ip = 0; ip < grid.p.n; ++ip) {
            out.at(iq, ip) = base * std::exp(cd(0.0, -fs.at(iq, ip) * inv_hbar));
        }
    }
    return PhaseState(std::move(out), f, psi);
}

double born_residual(const PhaseState& Psi, const Wavefunction& psi) {
    if (!(Psi.grid() == psi.grid()))
        throw ShapeMismatchError("born_residual: mismatched grids");
    const Field& v = Psi.values();
    double worst = 0.0;
    for (int iq = 0; iq < v.nq(); ++iq) {
        const double base = std::abs(psi[iq]);
        for (int ip = 0; ip < v.np(); ++ip)
            worst = std::max(worst, std::abs(std::abs(v.at(iq, ip)) - base));
    }
    return worst;
}

}  // namespace phasewig::states
