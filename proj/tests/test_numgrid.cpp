#include <cmath>
#include <numbers>

#include "doctest.h"
#include "phasewig/fft.hpp"
#include "phasewig/spectral.hpp"

using namespace phasewig;
using namespace phasewig::numgrid;

namespace {

PhaseGrid std_grid(int n = 256, double half = 8.0, double hbar = 1.0) {
    return make_grid({-half, half, n, false}, {-half, half, n, false}, hbar);
}

Field gaussian_q(const PhaseGrid& g) {
    Field f(g, FieldShape::OverQ);
    for (int j = 0; j < g.q.n; ++j) {
        const double q = g.q.coord(j);
        f[j] = std::exp(-0.5 * q * q);
    }
    return f;
}

}  // namespace

TEST_CASE("fft matches a naive DFT for mixed sizes") {
    for (int n : {8, 12, 100, 128}) {
        std::vector<fft::cd> a(n);
        for (int k = 0; k < n; ++k)
            a[k] = fft::cd(std::sin(0.7 * k + 0.2), std::cos(1.3 * k));
        std::vector<fft::cd> ref(n, {0, 0});
        for (int k = 0; k < n; ++k)
            for (int m = 0; m < n; ++m)
                ref[k] += a[m] * std::exp(fft::cd(0, -2.0 * std::numbers::pi * k * m / n));
        std::vector<fft::cd> out = a;
        fft::transform(out, false);
        double err = 0.0;
        for (int k = 0; k < n; ++k) err = std::max(err, std::abs(out[k] - ref[k]));
        CHECK(err < 1e-10);
        fft::transform(out, true);
        err = 0.0;
        for (int k = 0; k < n; ++k) err = std::max(err, std::abs(out[k] - a[k]));
        CHECK(err < 1e-12);
    }
}

TEST_CASE("make_grid validates specs and reproduces coordinates") {
    const PhaseGrid g = std_grid(256, 8.0, 1.0);
    CHECK(g.q.spacing() == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(g.p.spacing() == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(g.q.coord(0) == -8.0);
    CHECK(g.q.coord(128) == 0.0);

    CHECK_THROWS_AS(make_grid({0, 1, 4, false}, {-8, 8, 256, false}, 1.0), InvalidSpecError);
    CHECK_THROWS_AS(make_grid({1, 0, 64, false}, {-8, 8, 256, false}, 1.0), InvalidSpecError);
    CHECK_THROWS_AS(make_grid({-8, 8, 256, false}, {-8, 8, 256, false}, 0.0), InvalidSpecError);

    const PhaseGrid g2 = make_grid({-8, 8, 256, false}, {-8, 8, 256, false}, 0.5);
    CHECK(g2.hbar == 0.5);
}

TEST_CASE("spectral derivative: resonant wave, constant, gaussian") {
    const PhaseGrid g = std_grid();
    const double L = g.q.length();

    Field wave(g, FieldShape::OverQ);
    const double k = 2.0 * std::numbers::pi * 5.0 / L;
    for (int j = 0; j < g.q.n; ++j) wave[j] = std::sin(k * g.q.coord(j));
    const Field dwave = derivative(wave, Axis::Q);
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j)
        err = std::max(err, std::abs(dwave[j] - k * std::cos(k * g.q.coord(j))));
    CHECK(err < 1e-10);

    Field cst(g, FieldShape::OverQ);
    for (int j = 0; j < g.q.n; ++j) cst[j] = 3.25;
    CHECK(derivative(cst, Axis::Q).max_abs() < 1e-13);

    const Field gs = gaussian_q(g);
    const Field dgs = derivative(gs, Axis::Q);
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j) {
        const double q = g.q.coord(j);
        err = std::max(err, std::abs(dgs[j] - (-q * std::exp(-0.5 * q * q))));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("spectral shift: gaussian, zero amount, full period") {
    const PhaseGrid g = std_grid();
    const Field gs = gaussian_q(g);

    const Field moved = shift(gs, Axis::Q, 1.0);
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j) {
        const double q = g.q.coord(j);
        err = std::max(err, std::abs(moved[j] - std::exp(-0.5 * (q + 1.0) * (q + 1.0))));
    }
    CHECK(err < 1e-9);

    const Field same = shift(gs, Axis::Q, 0.0);
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j) err = std::max(err, std::abs(same[j] - gs[j]));
    CHECK(err < 1e-14);

    const Field period = shift(gs, Axis::Q, g.q.length());
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j) err = std::max(err, std::abs(period[j] - gs[j]));
    CHECK(err < 1e-10);
}

TEST_CASE("shift round-trip and derivative/shift commutation") {
    const PhaseGrid g = std_grid();
    const Field gs = gaussian_q(g);

    const Field back = shift(shift(gs, Axis::Q, 0.73), Axis::Q, -0.73);
    double err = 0.0;
    for (int j = 0; j < g.q.n; ++j) err = std::max(err, std::abs(back[j] - gs[j]));
    CHECK(err < 1e-10);

    const Field a = derivative(shift(gs, Axis::Q, 0.41), Axis::Q);
    const Field b = shift(derivative(gs, Axis::Q), Axis::Q, 0.41);
    err = 0.0;
    for (int j = 0; j < g.q.n; ++j) err = std::max(err, std::abs(a[j] - b[j]));
    CHECK(err < 1e-9);
}

TEST_CASE("derivative twice agrees with the second derivative") {
    const PhaseGrid g = std_grid();
    const Field gs = gaussian_q(g);
    const Field twice = derivative(derivative(gs, Axis::Q), Axis::Q);
    const Field second = second_derivative(gs, Axis::Q);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.q.n; ++j) {
        num = std::max(num, std::abs(twice[j] - second[j]));
        den = std::max(den, std::abs(second[j]));
    }
    CHECK(num / den < 1e-9);
}

TEST_CASE("quadrature: gaussian integral, zero field, separable product, resonant mode") {
    const PhaseGrid g = std_grid();

    Field gs(g, FieldShape::OverQ);
    for (int j = 0; j < g.q.n; ++j) {
        const double q = g.q.coord(j);
        gs[j] = std::exp(-q * q);
    }
    CHECK(std::abs(integrate_all(gs).real() - std::sqrt(std::numbers::pi)) < 1e-10);
    CHECK(std::abs(integrate_all(gs).imag()) < 1e-15);

    Field zero(g, FieldShape::OverQP);
    CHECK(std::abs(integrate_all(zero)) == 0.0);

    Field prod(g, FieldShape::OverQP);
    for (int j = 0; j < g.q.n; ++j)
        for (int i = 0; i < g.p.n; ++i) {
            const double q = g.q.coord(j), p = g.p.coord(i);
            prod.at(j, i) = std::exp(-q * q) * std::exp(-0.5 * p * p);
        }
    Field fac_q(g, FieldShape::OverQ), fac_p(g, FieldShape::OverP);
    for (int j = 0; j < g.q.n; ++j) fac_q[j] = std::exp(-g.q.coord(j) * g.q.coord(j));
    for (int i = 0; i < g.p.n; ++i) fac_p[i] = std::exp(-0.5 * g.p.coord(i) * g.p.coord(i));
    const auto lhs = integrate_all(prod);
    const auto rhs = integrate_all(fac_q) * integrate_all(fac_p);
    CHECK(std::abs(lhs - rhs) < 1e-12);

    Field mode(g, FieldShape::OverQ);
    const double k = 2.0 * std::numbers::pi * 3.0 / g.q.length();
    for (int j = 0; j < g.q.n; ++j) mode[j] = std::exp(fft::cd(0, k * g.q.coord(j)));
    CHECK(std::abs(integrate_all(mode)) < 1e-12);
}

TEST_CASE("shape mismatches are rejected") {
    const PhaseGrid g = std_grid();
    Field f1(g, FieldShape::OverQ);
    CHECK_THROWS_AS(derivative(f1, Axis::P), ShapeMismatchError);
    CHECK_THROWS_AS((void)integrate_axis(f1, Axis::Q), ShapeMismatchError);
}

TEST_CASE("spectral refinement doubles samples on the same interval") {
    const PhaseGrid g = std_grid();
    const Field gs = gaussian_q(g);
    const auto fine = refine2(gs.values());
    REQUIRE(fine.size() == static_cast<std::size_t>(2 * g.q.n));
    double err = 0.0;
    const double h2 = 0.5 * g.q.spacing();
    for (std::size_t j = 0; j < fine.size(); ++j) {
        const double q = g.q.min + h2 * static_cast<double>(j);
        err = std::max(err, std::abs(fine[j] - std::exp(-0.5 * q * q)));
    }
    CHECK(err < 1e-10);
}
