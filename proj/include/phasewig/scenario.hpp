/// @file scenario.hpp
/// @brief Scenario configs: a flat sectioned key-value format, parsed
/// strictly with line-numbered diagnostics, printed canonically so that
/// parse/print round-trips are stable.
///
/// Format: `[section]` headers, `key = value` lines, `#` comments.
/// Values are numbers, booleans, or double-quoted strings.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phasewig/grid.hpp"

namespace phasewig::cli {

enum class StateKind { Oscillator, Gaussian, FactorState, File };

enum class Task {
    WignerDirect,
    WignerTegmen,
    WignerCovariant,
    Spectrum,
    EquivalenceSweep,
    Verify,
};

struct Scenario {
    // [grid]
    numgrid::AxisSpec q_axis{-12.0, 12.0, 512, false};
    numgrid::AxisSpec p_axis{-12.0, 12.0, 512, false};
    double hbar = 1.0;

    // [state]
    StateKind state_kind = StateKind::Oscillator;
    int oscillator_n = 0;
    double mass = 1.0;
    double omega = 1.0;
    double q0 = 0.0, p0 = 0.0, sigma = 1.0;
    double factor_a = 0.5;
    std::vector<double> factor_phi;  // real coefficients c0 c1 ...
    std::string state_file;

    // [generating]
    std::string generating;  // resolved expression text

    // [potential]
    std::vector<double> potential_coeffs{0.0, 0.0, 0.5};
    double potential_mass = 1.0;

    // [task]
    Task task = Task::WignerDirect;
    int count = 4;                     // eigenpairs for spectrum / sweep
    std::vector<std::string> f_list;   // sweep generating functions

    // [output]
    std::string output_dir = "out";
    std::vector<std::string> formats{"csv", "binary", "pgm", "ppm", "json"};

    // [verify]
    std::uint64_t seed = 42;
    int verify_grid_n = 512;
    bool broken_connection = false;

    // sections present in the source text (drives canonical printing)
    std::vector<std::string> sections;
};

/// Throws ConfigError with a line number or the missing section/key name.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical form; parse(print(s)) == s up to the printed bytes.
std::string print_scenario(const Scenario& s);

const char* task_name(Task t);

/// Executes the scenario, writing artifacts under the output directory
/// (overridable with the PHASEWIG_OUTDIR environment variable).
/// Returns the process exit status: 0 success, 1 validation failure,
/// 2 numerical-gate failure.
int run_scenario(const std::filesystem::path& scenario_path);
int run_scenario_parsed(const Scenario& s);

/// The JSON schema every summary.json validates against.
const char* summary_schema();

}  // namespace phasewig::cli
