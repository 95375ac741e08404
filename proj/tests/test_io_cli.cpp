#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "phasewig/io.hpp"
#include "phasewig/scenario.hpp"
#include "phasewig/states.hpp"

using namespace phasewig;
using json = nlohmann::json;

namespace {

std::filesystem::path temp_dir(const char* tag) {
    auto p = std::filesystem::temp_directory_path() / (std::string("phasewig_test_") + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Minimal structural validator for the shipped schema subset: type,
// required, properties, items, enum(strings).
bool validate(const json& schema, const json& value) {
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        if (t == "object" && !value.is_object()) return false;
        if (t == "array" && !value.is_array()) return false;
        if (t == "string" && !value.is_string()) return false;
        if (t == "number" && !value.is_number()) return false;
        if (t == "integer" && !value.is_number_integer()) return false;
        if (t == "boolean" && !value.is_boolean()) return false;
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& e : schema["enum"]) hit = hit || (e == value);
        if (!hit) return false;
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) return false;
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !validate(sub, value[key])) return false;
    }
    if (schema.contains("items") && value.is_array()) {
        for (const auto& item : value)
            if (!validate(schema["items"], item)) return false;
    }
    return true;
}

const char* kScenarioText = R"([grid]
q_min = -12
q_max = 12
q_n = 256
p_min = -12
p_max = 12
p_n = 256
hbar = 1

[state]
kind = "oscillator"
n = 0
mass = 1
omega = 1

[task]
kind = "wigner-direct"

[output]
directory = "out"
formats = "csv,json"
)";

}  // namespace

TEST_CASE("binary field round-trip is exact") {
    const auto grid = numgrid::make_grid({-4, 4, 32, false}, {-2, 6, 16, true}, 0.5);
    numgrid::Field f(grid, numgrid::FieldShape::OverQP);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int k = 0; k < f.size(); ++k) f[k] = numgrid::cd(U(rng), U(rng));

    const auto dir = temp_dir("bin");
    io::write_field_binary(dir / "f.bin", f);
    const numgrid::Field g = io::read_field_binary(dir / "f.bin");
    CHECK(g.grid() == grid);
    CHECK(g.shape() == f.shape());
    for (int k = 0; k < f.size(); ++k) CHECK(g[k] == f[k]);

    std::ofstream(dir / "junk.bin") << "not a field";
    CHECK_THROWS_AS(io::read_field_binary(dir / "junk.bin"), ConfigError);
}

TEST_CASE("csv output is deterministic and carries coordinates") {
    const auto grid = numgrid::make_grid({0, 1, 8, false}, {0, 1, 8, false}, 1.0);
    numgrid::RealField f(grid, numgrid::FieldShape::OverQ);
    for (int k = 0; k < 8; ++k) f[k] = 0.25 * k;
    const auto dir = temp_dir("csv");
    io::write_field_csv(dir / "f.csv", f);
    io::write_field_csv(dir / "g.csv", f);
    const std::string a = slurp(dir / "f.csv");
    CHECK(a == slurp(dir / "g.csv"));
    CHECK(a.find("0.125,0.25\n") != std::string::npos);  // q_1 = 0.125, value 0.25
}

TEST_CASE("pgm/ppm mapping: white at zero, red positive, blue negative") {
    const auto grid = numgrid::make_grid({-1, 1, 8, false}, {-1, 1, 8, false}, 1.0);
    numgrid::RealField f(grid, numgrid::FieldShape::OverQP);
    f.at(0, 0) = -2.0;
    f.at(7, 7) = 2.0;
    const auto dir = temp_dir("img");

    const auto gs = io::write_pgm(dir / "f.pgm", f);
    CHECK(gs.lo == -2.0);
    CHECK(gs.hi == 2.0);
    const std::string pgm = slurp(dir / "f.pgm");
    CHECK(pgm.substr(0, 9) == "P5\n8 8\n25");
    const std::size_t phead = pgm.find("255\n") + 4;
    // top row is max p: pixel (row 0, col 7) is f.at(7,7) = +2 -> 255
    CHECK(static_cast<unsigned char>(pgm[phead + 7]) == 255);
    // bottom row col 0 is f.at(0,0) = -2 -> 0
    CHECK(static_cast<unsigned char>(pgm[phead + 7 * 8 + 0]) == 0);

    const auto ds = io::write_ppm_diverging(dir / "f.ppm", f);
    CHECK(ds.hi == 2.0);
    const std::string ppm = slurp(dir / "f.ppm");
    const std::size_t head = ppm.find("255\n") + 4;
    // zero maps to white
    auto px = [&](int row, int col) {
        const std::size_t o = head + 3 * (row * 8 + col);
        return std::array<int, 3>{static_cast<unsigned char>(ppm[o]),
                                  static_cast<unsigned char>(ppm[o + 1]),
                                  static_cast<unsigned char>(ppm[o + 2])};
    };
    CHECK(px(3, 3) == std::array<int, 3>{255, 255, 255});
    CHECK(px(0, 7) == std::array<int, 3>{255, 0, 0});   // +max -> red
    CHECK(px(7, 0) == std::array<int, 3>{0, 0, 255});   // -max -> blue
}

TEST_CASE("scenario parsing, diagnostics, and canonical round-trip") {
    const cli::Scenario s = cli::parse_scenario(kScenarioText);
    CHECK(s.task == cli::Task::WignerDirect);
    CHECK(s.q_axis.n == 256);
    CHECK(s.state_kind == cli::StateKind::Oscillator);

    const std::string printed = cli::print_scenario(s);
    const cli::Scenario s2 = cli::parse_scenario(printed);
    CHECK(cli::print_scenario(s2) == printed);

    const cli::Scenario sp = cli::parse_scenario(
        "[grid]\nq_min = -12\nq_max = 12\nq_n = 256\n"
        "p_min = -12\np_max = 12\np_n = 256\nhbar = 1\n"
        "[state]\nkind = \"oscillator\"\nn = 0\n"
        "[generating]\npreset = \"canonical\"\n"
        "[task]\nkind = \"wigner-covariant\"\n"
        "[output]\ndirectory = \"o\"\n");
    CHECK(sp.generating == "p*q/2");
    CHECK_THROWS_AS(cli::parse_scenario("[grid]\nq_min = -12\nq_max = 12\nq_n = 256\n"
                                        "p_min = -12\np_max = 12\np_n = 256\nhbar = 1\n"
                                        "[state]\nkind = \"oscillator\"\nn = 0\n"
                                        "[generating]\npreset = \"mystery\"\n"
                                        "[task]\nkind = \"wigner-covariant\"\n"
                                        "[output]\ndirectory = \"o\"\n"),
                    ConfigError);

    CHECK_THROWS_WITH_AS(cli::parse_scenario("[task]\nkind = \"wigner-direct\"\n"
                                             "[output]\ndirectory = \"o\"\n"),
                         "missing [grid] section", ConfigError);
    CHECK_THROWS_AS(cli::parse_scenario("[task]\nkind = \"dance\"\n[output]\ndirectory=\"o\"\n"),
                    ConfigError);
    CHECK_THROWS_AS(cli::parse_scenario("kind = \"x\"\n"), ConfigError);
    CHECK_THROWS_AS(cli::parse_scenario("[task]\nkind\n"), ConfigError);
}

TEST_CASE("scenario run writes a schema-valid summary and field files") {
    const auto dir = temp_dir("run");
    cli::Scenario s = cli::parse_scenario(kScenarioText);
    s.output_dir = dir.string();
    REQUIRE(cli::run_scenario_parsed(s) == 0);

    REQUIRE(std::filesystem::exists(dir / "summary.json"));
    REQUIRE(std::filesystem::exists(dir / "W.csv"));
    CHECK_FALSE(std::filesystem::exists(dir / "W.pgm"));  // not requested

    const json summary = json::parse(slurp(dir / "summary.json"));
    const json schema = json::parse(cli::summary_schema());
    CHECK(validate(schema, summary));
    CHECK(summary["task"] == "wigner-direct");
    CHECK(std::abs(summary["diagnostics"]["normalization"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("state files round-trip through the file state kind") {
    const auto dir = temp_dir("file_state");
    const auto grid = numgrid::make_grid({-12, 12, 256, false}, {-12, 12, 256, false}, 1.0);
    const auto psi = states::oscillator_eigenstate(2, {1.0, 1.0}, grid);
    io::write_field_binary(dir / "psi.bin", psi.samples());

    cli::Scenario s = cli::parse_scenario(kScenarioText);
    s.state_kind = cli::StateKind::File;
    s.state_file = (dir / "psi.bin").string();
    s.output_dir = (dir / "out").string();
    REQUIRE(cli::run_scenario_parsed(s) == 0);

    const json summary = json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(std::abs(summary["diagnostics"]["normalization"].get<double>() - 1.0) < 1e-6);
    // n=2 state has a negative Wigner region
    CHECK(summary["diagnostics"]["negativity"]["min_value"].get<double>() < -0.05);
}

TEST_CASE("states, one-forms, and connections serialize with sidecars") {
    const auto dir = temp_dir("sidecar");
    const auto grid = numgrid::make_grid({-12, 12, 256, false}, {-12, 12, 256, false}, 1.0);

    const auto psi = states::oscillator_eigenstate(1, {1.0, 1.0}, grid);
    io::write_state(dir / "psi", psi, "oscillator n=1");
    const json sc = json::parse(slurp(dir / "psi.json"));
    CHECK(sc["kind"] == "wavefunction");
    CHECK(sc["provenance"] == "oscillator n=1");
    CHECK(sc["hbar"] == 1.0);
    const auto back = io::read_field_binary(dir / "psi.bin");
    for (int k = 0; k < back.size(); ++k) CHECK(back[k] == psi[k]);

    const auto f = symcalc::GeneratingFunction::canonical();
    io::write_phase_state(dir / "Psi", states::lift_state(psi, f, grid), "lift of n=1");
    const json ps = json::parse(slurp(dir / "Psi.json"));
    CHECK(ps["generating"] == "p*q/2");

    io::write_oneform(dir / "theta", symcalc::canonical_theta(grid));
    const json th = json::parse(slurp(dir / "theta.json"));
    CHECK(th["kind"] == "oneform");
    CHECK(th["component_q"] == "(-p)");
    CHECK(std::filesystem::exists(dir / "theta_q.bin"));
    CHECK(std::filesystem::exists(dir / "theta_p.bin"));

    io::write_connection(dir / "A0", symcalc::connection_from_generating(f, grid));
    const json cj = json::parse(slurp(dir / "A0.json"));
    CHECK(cj["kind"] == "connection");
    CHECK(cj["generating"] == "p*q/2");
    const auto aq = io::read_field_binary(dir / "A0_q.bin");
    double err = 0.0;
    for (int j = 0; j < grid.q.n; ++j)
        for (int i = 0; i < grid.p.n; ++i)
            err = std::max(err, std::abs(aq.at(j, i) - numgrid::cd(0.5 * grid.p.coord(i), 0)));
    CHECK(err < 1e-14);
}

TEST_CASE("every shipped scenario file parses") {
    const std::filesystem::path dir =
        std::filesystem::path(PHASEWIG_SOURCE_DIR) / "scenarios";
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".cfg") continue;
        ++count;
        CHECK_NOTHROW((void)cli::load_scenario(entry.path()));
    }
    CHECK(count >= 6);
}

TEST_CASE("shipped schema file matches the embedded schema") {
    const std::filesystem::path file =
        std::filesystem::path(PHASEWIG_SOURCE_DIR) / "docs" / "summary.schema.json";
    CHECK(slurp(file) == std::string(cli::summary_schema()));
}

TEST_CASE("exit codes: validation failures vs numerical gates") {
    const auto dir = temp_dir("exit_codes");

    // missing grid section -> 1
    {
        std::ofstream out(dir / "bad.cfg");
        out << "[task]\nkind = \"wigner-direct\"\n[output]\ndirectory = \""
            << (dir / "o1").string() << "\"\n";
    }
    CHECK(cli::run_scenario(dir / "bad.cfg") == 1);

    // a state file that does not decay at the boundary -> numerical gate, 2
    const auto grid = numgrid::make_grid({-12, 12, 256, false}, {-12, 12, 256, false}, 1.0);
    numgrid::Field flat(grid, numgrid::FieldShape::OverQ);
    for (int k = 0; k < flat.size(); ++k) flat[k] = numgrid::cd(1.0, 0.0);
    io::write_field_binary(dir / "flat.bin", flat);
    {
        std::ofstream out(dir / "leak.cfg");
        out << "[grid]\nq_min = -12\nq_max = 12\nq_n = 256\n"
               "p_min = -12\np_max = 12\np_n = 256\nhbar = 1\n"
               "[state]\nkind = \"file\"\nfile = \""
            << (dir / "flat.bin").string() << "\"\n[task]\nkind = \"wigner-direct\"\n"
            << "[output]\ndirectory = \"" << (dir / "o2").string() << "\"\n";
    }
    CHECK(cli::run_scenario(dir / "leak.cfg") == 2);
}

TEST_CASE("environment variable overrides the output directory") {
    const auto dir = temp_dir("envdir");
    cli::Scenario s = cli::parse_scenario(kScenarioText);
    s.output_dir = (dir / "ignored").string();
    setenv("PHASEWIG_OUTDIR", (dir / "env").c_str(), 1);
    REQUIRE(cli::run_scenario_parsed(s) == 0);
    unsetenv("PHASEWIG_OUTDIR");
    CHECK(std::filesystem::exists(dir / "env" / "summary.json"));
    CHECK_FALSE(std::filesystem::exists(dir / "ignored"));
}
