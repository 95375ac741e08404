#include <cmath>

#include "doctest.h"
#include "phasewig/schrod.hpp"

using namespace phasewig;
using namespace phasewig::schrod;
using numgrid::make_grid;
using numgrid::PhaseGrid;
using symcalc::GeneratingFunction;

namespace {

PhaseGrid sgrid(int n = 512, double half = 12.0) {
    return make_grid({-half, half, n, false}, {-half, half, n, false}, 1.0);
}

const PolynomialPotential kHarmonic{{0.0, 0.0, 0.5}};

}  // namespace

TEST_CASE("harmonic spectrum to 1e-8 relative accuracy") {
    const PhaseGrid g = sgrid();
    const auto pairs = solve_config(kHarmonic, 1.0, g, 6);
    REQUIRE(pairs.size() == 6);
    for (int n = 0; n < 6; ++n) {
        const double expect = n + 0.5;
        CHECK(std::abs(pairs[n].energy - expect) / expect < 1e-8);
        CHECK(pairs[n].residual < 1e-8);
        CHECK(std::abs(pairs[n].state.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("eigensolver ground state overlaps the Hermite ground state") {
    const PhaseGrid g = sgrid();
    const auto pairs = solve_config(kHarmonic, 1.0, g, 1);
    const auto psi0 = states::oscillator_eigenstate(0, {1.0, 1.0}, g);
    numgrid::cd acc(0, 0);
    for (int j = 0; j < g.q.n; ++j) acc += std::conj(pairs[0].state[j]) * psi0[j];
    const double overlap = std::abs(acc * g.q.spacing());
    CHECK(overlap > 1.0 - 1e-10);
}

TEST_CASE("non-confining potentials are rejected") {
    const PhaseGrid g = sgrid(64);
    CHECK_THROWS_AS(solve_config(PolynomialPotential{{0.0, 0.0, -1.0}}, 1.0, g, 2),
                    NonConfiningPotentialError);
    CHECK_THROWS_AS(solve_config(PolynomialPotential{{0.0, 1.0}}, 1.0, g, 2),
                    NonConfiningPotentialError);
    CHECK_THROWS_AS(solve_config(PolynomialPotential{{1.0}}, 1.0, g, 2),
                    NonConfiningPotentialError);
    CHECK_THROWS_AS(solve_config(PolynomialPotential{{0, 0, 0, 0, 0, 1.0}}, 1.0, g, 2),
                    DegreeOverflowError);
}

TEST_CASE("phase-space Hamiltonian: canonical lift of eigenstates is an eigenstate") {
    const PhaseGrid g = sgrid(256);
    const auto pairs = solve_config(kHarmonic, 1.0, g, 5);
    const auto f = GeneratingFunction::canonical();
    const auto A = symcalc::connection_from_generating(f, g);
    for (int n = 0; n <= 4; ++n) {
        const auto lifted = states::lift_state(pairs[n].state, f, g);
        CHECK(phase_residual(A, kHarmonic, 1.0, lifted, pairs[n].energy) < 1e-6);
    }

    // wrong energy shows up as |Delta E|
    const auto lifted0 = states::lift_state(pairs[0].state, f, g);
    const double off = phase_residual(A, kHarmonic, 1.0, lifted0, pairs[0].energy + 0.5);
    CHECK(off == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("zero generating function reduces to the configuration-space action") {
    const PhaseGrid g = sgrid(256);
    const auto pairs = solve_config(kHarmonic, 1.0, g, 2);
    const auto fz = GeneratingFunction::zero();
    const auto Az = symcalc::connection_from_generating(fz, g);
    for (int n = 0; n < 2; ++n) {
        const auto lifted = states::lift_state(pairs[n].state, fz, g);
        CHECK(phase_residual(Az, kHarmonic, 1.0, lifted, pairs[n].energy) < 1e-8);

        // each p row equals H psi computed in configuration space
        const auto H = apply_phase_hamiltonian(Az, kHarmonic, 1.0, lifted);
        double err = 0.0;
        for (int j = 0; j < g.q.n; ++j)
            for (int i = 0; i < g.p.n; ++i)
                err = std::max(err, std::abs(H.values().at(j, i) -
                                             pairs[n].energy * pairs[n].state[j]));
        CHECK(err < 1e-6);
    }
}

TEST_CASE("zero state maps to zero") {
    const PhaseGrid g = sgrid(64);
    const auto A = symcalc::connection_from_generating(GeneratingFunction::canonical(), g);
    states::PhaseState zero(numgrid::Field(g, numgrid::FieldShape::OverQP));
    const auto H = apply_phase_hamiltonian(A, kHarmonic, 1.0, zero);
    CHECK(H.values().max_abs() == 0.0);
}

TEST_CASE("wobbled generating function still solves the phase equation") {
    const PhaseGrid g = sgrid(256);
    const auto pairs = solve_config(kHarmonic, 1.0, g, 3);
    const auto f = GeneratingFunction::parse("p*q/2 + 0.1*sin(q)");
    const auto A = symcalc::connection_from_generating(f, g);
    for (int n = 0; n < 3; ++n) {
        const auto lifted = states::lift_state(pairs[n].state, f, g);
        CHECK(phase_residual(A, kHarmonic, 1.0, lifted, pairs[n].energy) < 1e-6);
    }
}

TEST_CASE("cross-pairing lift and connection generating functions fails loudly") {
    const PhaseGrid g = sgrid(256);
    const auto pairs = solve_config(kHarmonic, 1.0, g, 1);
    const auto f_lift = GeneratingFunction::canonical();
    const auto f_conn = GeneratingFunction::parse("p*q/2 + 0.5*sin(q)");
    const auto A = symcalc::connection_from_generating(f_conn, g);
    const auto lifted = states::lift_state(pairs[0].state, f_lift, g);
    CHECK(phase_residual(A, kHarmonic, 1.0, lifted, pairs[0].energy) > 1e-2);
}

TEST_CASE("phase-space Hamiltonian is Hermitian on band-limited pairs") {
    const PhaseGrid g = sgrid(128);
    const auto A = symcalc::connection_from_generating(
        GeneratingFunction::parse("p*q/2 + 0.2*sin(q)*cos(p)"), g);

    auto test_field = [&](double aq, double ap, double phase) {
        numgrid::Field f(g, numgrid::FieldShape::OverQP);
        const double sq = g.q.length() / 7.0, sp = g.p.length() / 7.0;
        for (int j = 0; j < g.q.n; ++j) {
            const double q = g.q.coord(j);
            for (int i = 0; i < g.p.n; ++i) {
                const double p = g.p.coord(i);
                f.at(j, i) = std::exp(numgrid::cd(0, aq * q + ap * p + phase)) *
                             std::exp(-0.5 * q * q / (sq * sq) - 0.5 * p * p / (sp * sp));
            }
        }
        return states::PhaseState(std::move(f));
    };

    const auto Phi = test_field(1.3, -0.4, 0.2);
    const auto Psi = test_field(-0.7, 2.1, 1.0);
    const auto HPsi = apply_phase_hamiltonian(A, kHarmonic, 1.0, Psi);
    const auto HPhi = apply_phase_hamiltonian(A, kHarmonic, 1.0, Phi);

    numgrid::cd lhs(0, 0), rhs(0, 0);
    for (int k = 0; k < Phi.values().size(); ++k) {
        lhs += std::conj(Phi.values()[k]) * HPsi.values()[k];
        rhs += std::conj(HPhi.values()[k]) * Psi.values()[k];
    }
    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-8);
}

TEST_CASE("equivalence sweep emits residual cells and never throws") {
    const PhaseGrid g = sgrid(256);
    const std::vector<GeneratingFunction> fs = {
        GeneratingFunction::canonical(),
        GeneratingFunction::zero(),
        GeneratingFunction::parse("p*q/2 + 0.1*sin(q)"),
    };
    const SweepReport rep = equivalence_sweep(kHarmonic, 1.0, g, fs, 3);
    REQUIRE(rep.cells.size() == 9);
    for (const auto& cell : rep.cells) {
        CHECK(cell.error.empty());
        CHECK(cell.phase_res < 1e-5);
        CHECK(cell.integrability_res < 1e-8);
    }
    CHECK(rep.max_phase_res < 1e-5);

    // a broken f (pole on the grid) shows up as a per-cell error
    const std::vector<GeneratingFunction> bad = {GeneratingFunction::parse("1/q")};
    const SweepReport rep2 = equivalence_sweep(kHarmonic, 1.0, g, bad, 1);
    REQUIRE(rep2.cells.size() == 1);
    CHECK_FALSE(rep2.cells[0].error.empty());
}
