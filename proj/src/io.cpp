#include "phasewig/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary field layout assumes a little-endian host");

namespace phasewig::io {

using numgrid::cd;
using numgrid::Field;
using numgrid::FieldShape;
using numgrid::RealField;

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

const char kMagic[8] = {'P', 'H', 'A', 'S', 'E', 'W', 'G', '1'};

void put_f64(std::string& s, double v) {
    char b[8];
    std::memcpy(b, &v, 8);
    s.append(b, 8);
}

void put_u64(std::string& s, std::uint64_t v) {
    char b[8];
    std::memcpy(b, &v, 8);
    s.append(b, 8);
}

std::string csv_header(const numgrid::PhaseGrid& g, FieldShape shape, bool complex_values) {
    std::string s = "# phasewig field";
    s += complex_values ? " (complex: value columns are re,im pairs)" : " (real)";
    s += "; q:[" + format_double(g.q.min) + "," + format_double(g.q.max) + ")x" +
         std::to_string(g.q.n);
    if (shape != FieldShape::OverQ)
        s += "; p:[" + format_double(g.p.min) + "," + format_double(g.p.max) + ")x" +
             std::to_string(g.p.n);
    s += "; hbar=" + format_double(g.hbar) + "\n";
    return s;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const Field& f) {
    const auto& g = f.grid();
    std::string s = csv_header(g, f.shape(), true);
    if (f.shape() == FieldShape::OverQP) {
        for (int j = 0; j < f.nq(); ++j) {
            s += format_double(g.q.coord(j));
            for (int i = 0; i < f.np(); ++i) {
                s += ',';
                s += format_double(f.at(j, i).real());
                s += ',';
                s += format_double(f.at(j, i).imag());
            }
            s += '\n';
        }
    } else {
        const auto& ax = (f.shape() == FieldShape::OverQ) ? g.q : g.p;
        for (int k = 0; k < f.size(); ++k) {
            s += format_double(ax.coord(k));
            s += ',';
            s += format_double(f[k].real());
            s += ',';
            s += format_double(f[k].imag());
            s += '\n';
        }
    }
    atomic_write(path, s);
}

void write_field_csv(const std::filesystem::path& path, const RealField& f) {
    const auto& g = f.grid();
    std::string s = csv_header(g, f.shape(), false);
    if (f.shape() == FieldShape::OverQP) {
        for (int j = 0; j < f.nq(); ++j) {
            s += format_double(g.q.coord(j));
            for (int i = 0; i < f.np(); ++i) {
                s += ',';
                s += format_double(f.at(j, i));
            }
            s += '\n';
        }
    } else {
        const auto& ax = (f.shape() == FieldShape::OverQ) ? g.q : g.p;
        for (int k = 0; k < f.size(); ++k) {
            s += format_double(ax.coord(k));
            s += ',';
            s += format_double(f[k]);
            s += '\n';
        }
    }
    atomic_write(path, s);
}

void write_field_binary(const std::filesystem::path& path, const Field& f) {
    const auto& g = f.grid();
    std::string s;
    s.reserve(96 + static_cast<std::size_t>(f.size()) * 16);
    s.append(kMagic, 8);
    put_f64(s, g.q.min);
    put_f64(s, g.q.max);
    put_u64(s, static_cast<std::uint64_t>(g.q.n));
    put_u64(s, g.q.periodic ? 1 : 0);
    put_f64(s, g.p.min);
    put_f64(s, g.p.max);
    put_u64(s, static_cast<std::uint64_t>(g.p.n));
    put_u64(s, g.p.periodic ? 1 : 0);
    put_f64(s, g.hbar);
    put_u64(s, static_cast<std::uint64_t>(f.shape()));
    for (int k = 0; k < f.size(); ++k) {
        put_f64(s, f[k].real());
        put_f64(s, f[k].imag());
    }
    atomic_write(path, s);
}

Field read_field_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open field file " + path.string());
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (s.size() < 96 || std::memcmp(s.data(), kMagic, 8) != 0)
        throw ConfigError("not a phasewig field file: " + path.string());

    std::size_t off = 8;
    auto get_f64 = [&]() {
        double v;
        std::memcpy(&v, s.data() + off, 8);
        off += 8;
        return v;
    };
    auto get_u64 = [&]() {
        std::uint64_t v;
        std::memcpy(&v, s.data() + off, 8);
        off += 8;
        return v;
    };

    numgrid::AxisSpec q{}, p{};
    q.min = get_f64();
    q.max = get_f64();
    q.n = static_cast<int>(get_u64());
    q.periodic = get_u64() != 0;
    p.min = get_f64();
    p.max = get_f64();
    p.n = static_cast<int>(get_u64());
    p.periodic = get_u64() != 0;
    const double hbar = get_f64();
    const auto shape = static_cast<FieldShape>(get_u64());
    const numgrid::PhaseGrid grid = numgrid::make_grid(q, p, hbar);

    const int count = numgrid::shape_size(grid, shape);
    if (s.size() != off + static_cast<std::size_t>(count) * 16)
        throw ConfigError("field file has wrong payload size: " + path.string());
    std::vector<cd> values(count);
    for (int k = 0; k < count; ++k) {
        const double re = get_f64();
        const double im = get_f64();
        values[k] = cd(re, im);
    }
    return Field(grid, shape, std::move(values));
}

ImageScale write_pgm(const std::filesystem::path& path, const RealField& f) {
    if (f.shape() != FieldShape::OverQP)
        throw ShapeMismatchError("write_pgm: needs a 2-D field");
    double lo = f[0], hi = f[0];
    for (int k = 0; k < f.size(); ++k) {
        lo = std::min(lo, f[k]);
        hi = std::max(hi, f[k]);
    }
    const int w = f.nq(), hgt = f.np();
    std::string s = "P5\n" + std::to_string(w) + " " + std::to_string(hgt) + "\n255\n";
    const double span = hi - lo;
    for (int y = 0; y < hgt; ++y) {
        const int ip = hgt - 1 - y;  // top row = max p
        for (int x = 0; x < w; ++x) {
            const double v = f.at(x, ip);
            const int gray = (span > 0.0)
                                 ? static_cast<int>(std::lround(255.0 * (v - lo) / span))
                                 : 0;
            s += static_cast<char>(std::clamp(gray, 0, 255));
        }
    }
    atomic_write(path, s);
    return ImageScale{lo, hi};
}

namespace {

nlohmann::ordered_json sidecar_base(const numgrid::PhaseGrid& g, const char* kind) {
    return nlohmann::ordered_json{{"kind", kind}, {"hbar", g.hbar}};
}

void write_sidecar(const std::filesystem::path& stem, const nlohmann::ordered_json& j) {
    atomic_write(std::filesystem::path(stem).concat(".json"), j.dump(2) + "\n");
}

}  // namespace

void write_state(const std::filesystem::path& stem, const states::Wavefunction& psi,
                 const std::string& provenance) {
    write_field_binary(std::filesystem::path(stem).concat(".bin"), psi.samples());
    auto j = sidecar_base(psi.grid(), "wavefunction");
    j["provenance"] = provenance;
    j["norm"] = psi.norm();
    j["boundary_leak"] = psi.boundary_leak();
    write_sidecar(stem, j);
}

void write_phase_state(const std::filesystem::path& stem, const states::PhaseState& Psi,
                       const std::string& provenance) {
    write_field_binary(std::filesystem::path(stem).concat(".bin"), Psi.values());
    auto j = sidecar_base(Psi.grid(), "phase_state");
    j["provenance"] = provenance;
    j["generating"] = Psi.frame() ? nlohmann::ordered_json(Psi.frame()->text())
                                  : nlohmann::ordered_json(nullptr);
    write_sidecar(stem, j);
}

void write_oneform(const std::filesystem::path& stem, const symcalc::OneForm& alpha) {
    write_field_binary(std::filesystem::path(stem).concat("_q.bin"), alpha.alpha_q.to_complex());
    write_field_binary(std::filesystem::path(stem).concat("_p.bin"), alpha.alpha_p.to_complex());
    auto j = sidecar_base(alpha.grid(), "oneform");
    j["component_q"] = alpha.q_expr ? nlohmann::ordered_json(alpha.q_expr->str())
                                    : nlohmann::ordered_json(nullptr);
    j["component_p"] = alpha.p_expr ? nlohmann::ordered_json(alpha.p_expr->str())
                                    : nlohmann::ordered_json(nullptr);
    write_sidecar(stem, j);
}

void write_connection(const std::filesystem::path& stem, const symcalc::Connection& A) {
    write_field_binary(std::filesystem::path(stem).concat("_q.bin"), A.a_q.to_complex());
    write_field_binary(std::filesystem::path(stem).concat("_p.bin"), A.a_p.to_complex());
    auto j = sidecar_base(A.grid(), "connection");
    j["generating"] = A.provenance ? nlohmann::ordered_json(A.provenance->text())
                                   : nlohmann::ordered_json(nullptr);
    j["component_q"] = A.q_expr ? nlohmann::ordered_json(A.q_expr->str())
                                : nlohmann::ordered_json(nullptr);
    j["component_p"] = A.p_expr ? nlohmann::ordered_json(A.p_expr->str())
                                : nlohmann::ordered_json(nullptr);
    write_sidecar(stem, j);
}

ImageScale write_ppm_diverging(const std::filesystem::path& path, const RealField& f) {
    if (f.shape() != FieldShape::OverQP)
        throw ShapeMismatchError("write_ppm_diverging: needs a 2-D field");
    double m = 0.0;
    for (int k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k]));
    const int w = f.nq(), hgt = f.np();
    std::string s = "P6\n" + std::to_string(w) + " " + std::to_string(hgt) + "\n255\n";
    for (int y = 0; y < hgt; ++y) {
        const int ip = hgt - 1 - y;
        for (int x = 0; x < w; ++x) {
            const double t = (m > 0.0) ? std::clamp(f.at(x, ip) / m, -1.0, 1.0) : 0.0;
            int r = 255, g = 255, b = 255;
            if (t >= 0.0) {
                g = b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            } else {
                r = g = static_cast<int>(std::lround(255.0 * (1.0 + t)));
            }
            s += static_cast<char>(std::clamp(r, 0, 255));
            s += static_cast<char>(std::clamp(g, 0, 255));
            s += static_cast<char>(std::clamp(b, 0, 255));
        }
    }
    atomic_write(path, s);
    return ImageScale{-m, m};
}

}  // namespace phasewig::io
