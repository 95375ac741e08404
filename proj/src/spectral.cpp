#include "phasewig/spectral.hpp"

#include <cmath>
#include <numbers>

#include "phasewig/fft.hpp"

namespace phasewig::numgrid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Signed wavenumber of spectral bin j on an n-point axis of length L.
double wavenumber(int j, int n, double length) {
    const int jt = (j <= n / 2) ? j : j - n;
    return kTwoPi * jt / length;
}

enum class Symbol { FirstDeriv, SecondDeriv, Shift };

// Applies a diagonal spectral symbol along one axis of the field.
Field apply_symbol(const Field& f, Axis axis, Symbol sym, double amount) {
    if (!f.has_axis(axis))
        throw ShapeMismatchError("spectral op: field has no such axis");
    const AxisSpec& ax = (axis == Axis::Q) ? f.grid().q : f.grid().p;
    const int n = ax.n;
    const double length = ax.length();

    std::vector<cd> factor(n);
    for (int j = 0; j < n; ++j) {
        const double k = wavenumber(j, n, length);
        switch (sym) {
            case Symbol::FirstDeriv:
                // zero the Nyquist mode so real input stays real
                factor[j] = (n % 2 == 0 && j == n / 2) ? cd(0, 0) : cd(0, k);
                break;
            case Symbol::SecondDeriv:
                factor[j] = cd(-k * k, 0);
                break;
            case Symbol::Shift:
                if (n % 2 == 0 && j == n / 2) {
                    factor[j] = cd(std::cos(k * amount), 0);  // cosine convention at Nyquist
                } else {
                    factor[j] = std::exp(cd(0, k * amount));
                }
                break;
        }
    }

    Field out = f;
    auto& v = out.values();
    const int nq = out.nq(), np = out.np();

    if (out.shape() != FieldShape::OverQP) {
        fft::transform(v, false);
        for (int j = 0; j < n; ++j) v[j] *= factor[j];
        fft::transform(v, true);
        return out;
    }

    if (axis == Axis::P) {
        for (int iq = 0; iq < nq; ++iq) {
            cd* row = v.data() + static_cast<std::size_t>(iq) * np;
            fft::transform_strided(row, np, 1, false);
            for (int j = 0; j < np; ++j) row[j] *= factor[j];
            fft::transform_strided(row, np, 1, true);
        }
    } else {
        for (int ip = 0; ip < np; ++ip) {
            cd* col = v.data() + ip;
            fft::transform_strided(col, nq, np, false);
            for (int j = 0; j < nq; ++j) col[static_cast<std::size_t>(j) * np] *= factor[j];
            fft::transform_strided(col, nq, np, true);
        }
    }
    return out;
}

}  // namespace

Field derivative(const Field& f, Axis axis) {
    return apply_symbol(f, axis, Symbol::FirstDeriv, 0.0);
}

RealField derivative(const RealField& f, Axis axis) {
    return real_part(apply_symbol(f.to_complex(), axis, Symbol::FirstDeriv, 0.0));
}

Field second_derivative(const Field& f, Axis axis) {
    return apply_symbol(f, axis, Symbol::SecondDeriv, 0.0);
}

Field shift(const Field& f, Axis axis, double amount) {
    if (!std::isfinite(amount)) throw InvalidSpecError("shift: amount must be finite");
    return apply_symbol(f, axis, Symbol::Shift, amount);
}

Field integrate_axis(const Field& f, Axis axis) {
    if (f.shape() != FieldShape::OverQP)
        throw ShapeMismatchError("integrate_axis: needs a 2-D field");
    const int nq = f.nq(), np = f.np();
    if (axis == Axis::P) {
        const double h = f.grid().p.spacing();
        std::vector<cd> out(nq, cd(0, 0));
        for (int iq = 0; iq < nq; ++iq) {
            cd acc(0, 0);
            for (int ip = 0; ip < np; ++ip) acc += f.at(iq, ip);
            out[iq] = acc * h;
        }
        return Field(f.grid(), FieldShape::OverQ, std::move(out));
    }
    const double h = f.grid().q.spacing();
    std::vector<cd> out(np, cd(0, 0));
    for (int ip = 0; ip < np; ++ip) {
        cd acc(0, 0);
        for (int iq = 0; iq < nq; ++iq) acc += f.at(iq, ip);
        out[ip] = acc * h;
    }
    return Field(f.grid(), FieldShape::OverP, std::move(out));
}

cd integrate_all(const Field& f) {
    cd acc(0, 0);
    for (int k = 0; k < f.size(); ++k) acc += f[k];
    switch (f.shape()) {
        case FieldShape::OverQ: return acc * f.grid().q.spacing();
        case FieldShape::OverP: return acc * f.grid().p.spacing();
        case FieldShape::OverQP: return acc * (f.grid().q.spacing() * f.grid().p.spacing());
    }
    return acc;
}

double integrate_all(const RealField& f) {
    double acc = 0.0;
    for (int k = 0; k < f.size(); ++k) acc += f[k];
    switch (f.shape()) {
        case FieldShape::OverQ: return acc * f.grid().q.spacing();
        case FieldShape::OverP: return acc * f.grid().p.spacing();
        case FieldShape::OverQP: return acc * (f.grid().q.spacing() * f.grid().p.spacing());
    }
    return acc;
}

cd integrate_samples(const std::vector<cd>& v, double h) {
    cd acc(0, 0);
    for (const auto& x : v) acc += x;
    return acc * h;
}

double integrate_samples(const std::vector<double>& v, double h) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc * h;
}

std::vector<cd> refine2(const std::vector<cd>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<cd> spec(v);
    fft::transform(spec, false);
    std::vector<cd> wide(2 * n, cd(0, 0));
    // split the Nyquist bin symmetrically
    for (int j = 0; j <= n / 2; ++j) wide[j] = spec[j];
    for (int j = n / 2 + 1; j < n; ++j) wide[j + n] = spec[j];
    if (n % 2 == 0) {
        wide[n / 2] = 0.5 * spec[n / 2];
        wide[2 * n - n / 2] = 0.5 * spec[n / 2];
    }
    fft::transform(wide, true);
    for (auto& x : wide) x *= 2.0;  // inverse scaling uses the longer length
    return wide;
}

double boundary_leakage_1d(const std::vector<cd>& v, bool periodic) {
    if (periodic) return 0.0;
    double peak = 0.0;
    for (const auto& x : v) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) return 0.0;
    const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
    return edge / peak;
}

double boundary_leakage(const Field& f, Axis axis) {
    if (!f.has_axis(axis)) throw ShapeMismatchError("boundary_leakage: field has no such axis");
    const AxisSpec& ax = (axis == Axis::Q) ? f.grid().q : f.grid().p;
    if (ax.periodic) return 0.0;
    const double peak = f.max_abs();
    if (peak == 0.0) return 0.0;

    double edge = 0.0;
    if (f.shape() != FieldShape::OverQP) {
        edge = std::max(std::abs(f[0]), std::abs(f[f.size() - 1]));
    } else if (axis == Axis::Q) {
        for (int ip = 0; ip < f.np(); ++ip)
            edge = std::max({edge, std::abs(f.at(0, ip)), std::abs(f.at(f.nq() - 1, ip))});
    } else {
        for (int iq = 0; iq < f.nq(); ++iq)
            edge = std::max({edge, std::abs(f.at(iq, 0)), std::abs(f.at(iq, f.np() - 1))});
    }
    return edge / peak;
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (int k = 0; k < f.size(); ++k) acc += std::norm(f[k]);
    double h = 1.0;
    switch (f.shape()) {
        case FieldShape::OverQ: h = f.grid().q.spacing(); break;
        case FieldShape::OverP: h = f.grid().p.spacing(); break;
        case FieldShape::OverQP: h = f.grid().q.spacing() * f.grid().p.spacing(); break;
    }
    return std::sqrt(acc * h);
}

}  // namespace phasewig::numgrid
