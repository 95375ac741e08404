/// phasewig: scenario runner and verification CLI.
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "phasewig/scenario.hpp"
#include "phasewig/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"phasewig: phase-space quantum mechanics toolkit"};
    app.set_version_flag("--version", std::string(phasewig::kVersion));
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a scenario file");
    std::string scenario_path;
    run->add_option("scenario", scenario_path, "scenario config file")->required();

    auto* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
    std::uint64_t seed = 42;
    int grid_n = 512;
    std::string out_dir = "out";
    bool broken = false;
    verify->add_option("--seed", seed, "random seed recorded in the report");
    verify->add_option("--grid", grid_n, "main grid samples per axis (>= 256)");
    verify->add_option("--out", out_dir, "output directory");
    verify->add_flag("--broken-connection", broken,
                     "swap in the non-integrable connection preset (A_q=p, A_p=q); the "
                     "integrability and commutator checks must then fail");

    auto* schema = app.add_subcommand("print-schema", "print the summary.json schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return phasewig::cli::run_scenario(scenario_path);
        if (verify->parsed()) {
            phasewig::cli::Scenario s;
            s.task = phasewig::cli::Task::Verify;
            s.output_dir = out_dir;
            s.seed = seed;
            s.verify_grid_n = grid_n;
            s.broken_connection = broken;
            s.formats = {"csv", "json"};
            s.sections = {"task", "output", "verify"};
            return phasewig::cli::run_scenario_parsed(s);
        }
        if (schema->parsed()) {
            std::cout << phasewig::cli::summary_schema();
            return 0;
        }
    } catch (const phasewig::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const phasewig::NumericalGateError& e) {
        std::cerr << "numerical gate: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
