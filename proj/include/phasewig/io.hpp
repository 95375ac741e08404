/// @file io.hpp
/// @brief Field serialization: CSV, a little-endian binary layout, and
/// PGM/PPM heatmaps. All writes are atomic (temp file + rename).
///
/// Binary layout (all fields little-endian, 8 bytes each):
///   bytes 0-7   magic "PHASEWG1"
///   f64 q_min, f64 q_max, u64 q_n, u64 q_periodic(0|1)
///   f64 p_min, f64 p_max, u64 p_n, u64 p_periodic(0|1)
///   f64 hbar
///   u64 shape (0 = over q, 1 = over p, 2 = over q x p)
///   then size pairs of f64 (re, im), row-major with q slow.
#pragma once

#include <filesystem>
#include <string>

#include "phasewig/field.hpp"

namespace phasewig::io {

/// Shortest decimal form that round-trips the double exactly.
std::string format_double(double v);

void atomic_write(const std::filesystem::path& path, const std::string& contents);

/// One row per q sample (2-D: q, then re,im per p column;
/// 1-D over p: p, re, im rows).
void write_field_csv(const std::filesystem::path& path, const numgrid::Field& f);
void write_field_csv(const std::filesystem::path& path, const numgrid::RealField& f);

void write_field_binary(const std::filesystem::path& path, const numgrid::Field& f);
numgrid::Field read_field_binary(const std::filesystem::path& path);

struct ImageScale {
    double lo = 0.0;
    double hi = 0.0;
};

/// 8-bit grayscale, linear [min,max] -> [0,255]; top row is max p.
ImageScale write_pgm(const std::filesystem::path& path, const numgrid::RealField& f);

/// Diverging palette centered at 0 (blue negative, white zero, red
/// positive), scaled by max |value|.
ImageScale write_ppm_diverging(const std::filesystem::path& path, const numgrid::RealField& f);

}  // namespace phasewig::io

#include "phasewig/states.hpp"
#include "phasewig/symcalc.hpp"

namespace phasewig::io {

// Sidecar-carrying serialization: <stem>.bin (+ _q/_p for two-component
// objects) plus <stem>.json recording provenance and hbar.

void write_state(const std::filesystem::path& stem, const states::Wavefunction& psi,
                 const std::string& provenance);

void write_phase_state(const std::filesystem::path& stem, const states::PhaseState& Psi,
                       const std::string& provenance);

void write_oneform(const std::filesystem::path& stem, const symcalc::OneForm& alpha);

void write_connection(const std::filesystem::path& stem, const symcalc::Connection& A);

}  // namespace phasewig::io
