#include "phasewig/scenario.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "phasewig/io.hpp"
#include "phasewig/schrod.hpp"
#include "phasewig/verify.hpp"
#include "phasewig/version.hpp"
#include "phasewig/wigner.hpp"

namespace phasewig::cli {

using json = nlohmann::ordered_json;
using numgrid::PhaseGrid;

namespace {

// ---------------------------------------------------------------- parsing

struct KV {
    std::string key;
    std::string value;  // raw token (quotes stripped for strings)
    bool quoted = false;
    int line = 0;
};

struct RawConfig {
    std::vector<std::pair<std::string, std::vector<KV>>> sections;

    const std::vector<KV>* find(const std::string& name) const {
        for (const auto& [sec, kvs] : sections)
            if (sec == name) return &kvs;
        return nullptr;
    }
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

RawConfig tokenize(const std::string& text) {
    RawConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<KV>* current = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside quotes
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (line[i] == '#' && !in_quote) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            cfg.sections.emplace_back(name, std::vector<KV>{});
            current = &cfg.sections.back().second;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        if (!current)
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        KV kv;
        kv.key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        kv.line = lineno;
        if (kv.key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated string");
            kv.value = value.substr(1, value.size() - 2);
            kv.quoted = true;
        } else {
            kv.value = value;
        }
        current->push_back(std::move(kv));
    }
    return cfg;
}

class SectionReader {
public:
    SectionReader(const RawConfig& cfg, const std::string& name, bool required)
        : name_(name), kvs_(cfg.find(name)) {
        if (!kvs_ && required) throw ConfigError("missing [" + name + "] section");
    }

    bool present() const { return kvs_ != nullptr; }

    const KV* find(const std::string& key) const {
        if (!kvs_) return nullptr;
        for (const auto& kv : *kvs_)
            if (kv.key == key) return &kv;
        return nullptr;
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
        const KV* kv = find(key);
        if (!kv) {
            if (fallback) return *fallback;
            throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
        }
        try {
            std::size_t pos = 0;
            const double v = std::stod(kv->value, &pos);
            if (pos != kv->value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(kv->line) + ": [" + name_ + "] " + key +
                              " is not a number");
        }
    }

    int integer(const std::string& key, std::optional<int> fallback = std::nullopt) const {
        const double v =
            number(key, fallback ? std::optional<double>(*fallback) : std::nullopt);
        return static_cast<int>(v);
    }

    bool boolean(const std::string& key, bool fallback) const {
        const KV* kv = find(key);
        if (!kv) return fallback;
        if (kv->value == "true") return true;
        if (kv->value == "false") return false;
        throw ConfigError("line " + std::to_string(kv->line) + ": [" + name_ + "] " + key +
                          " must be true or false");
    }

    std::string text(const std::string& key,
                     std::optional<std::string> fallback = std::nullopt) const {
        const KV* kv = find(key);
        if (!kv) {
            if (fallback) return *fallback;
            throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
        }
        return kv->value;
    }

private:
    std::string name_;
    const std::vector<KV>* kvs_;
};

std::vector<double> parse_number_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": '" + tok + "' is not a number");
        }
    }
    if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            cur = trim(cur);
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Task parse_task(const std::string& s) {
    if (s == "wigner-direct") return Task::WignerDirect;
    if (s == "wigner-tegmen") return Task::WignerTegmen;
    if (s == "wigner-covariant") return Task::WignerCovariant;
    if (s == "spectrum") return Task::Spectrum;
    if (s == "equivalence-sweep") return Task::EquivalenceSweep;
    if (s == "verify") return Task::Verify;
    throw ConfigError("[task] unknown kind '" + s + "'");
}

StateKind parse_state_kind(const std::string& s) {
    if (s == "oscillator") return StateKind::Oscillator;
    if (s == "gaussian") return StateKind::Gaussian;
    if (s == "factor") return StateKind::FactorState;
    if (s == "file") return StateKind::File;
    throw ConfigError("[state] unknown kind '" + s + "'");
}

const char* state_kind_name(StateKind k) {
    switch (k) {
        case StateKind::Oscillator: return "oscillator";
        case StateKind::Gaussian: return "gaussian";
        case StateKind::FactorState: return "factor";
        case StateKind::File: return "file";
    }
    return "?";
}

}  // namespace

const char* task_name(Task t) {
    switch (t) {
        case Task::WignerDirect: return "wigner-direct";
        case Task::WignerTegmen: return "wigner-tegmen";
        case Task::WignerCovariant: return "wigner-covariant";
        case Task::Spectrum: return "spectrum";
        case Task::EquivalenceSweep: return "equivalence-sweep";
        case Task::Verify: return "verify";
    }
    return "?";
}

Scenario parse_scenario(const std::string& text) {
    const RawConfig cfg = tokenize(text);
    Scenario s;

    SectionReader task(cfg, "task", true);
    s.task = parse_task(task.text("kind"));
    s.count = task.integer("count", 4);
    if (const KV* fl = task.find("f_list")) s.f_list = split(fl->value, ';');

    const bool needs_grid = s.task != Task::Verify;
    SectionReader grid(cfg, "grid", needs_grid);
    if (grid.present()) {
        s.q_axis = {grid.number("q_min"), grid.number("q_max"), grid.integer("q_n"), false};
        s.p_axis = {grid.number("p_min"), grid.number("p_max"), grid.integer("p_n"), false};
        s.hbar = grid.number("hbar", 1.0);
    }

    const bool needs_state = s.task == Task::WignerDirect || s.task == Task::WignerTegmen ||
                             s.task == Task::WignerCovariant;
    SectionReader state(cfg, "state", needs_state);
    if (state.present()) {
        s.state_kind = parse_state_kind(state.text("kind"));
        switch (s.state_kind) {
            case StateKind::Oscillator:
                s.oscillator_n = state.integer("n");
                s.mass = state.number("mass", 1.0);
                s.omega = state.number("omega", 1.0);
                break;
            case StateKind::Gaussian:
                s.q0 = state.number("q0");
                s.p0 = state.number("p0");
                s.sigma = state.number("sigma");
                break;
            case StateKind::FactorState:
                s.factor_a = state.number("a");
                s.factor_phi = parse_number_list(state.text("phi"), "[state] phi");
                break;
            case StateKind::File:
                s.state_file = state.text("file");
                break;
        }
    }

    SectionReader gen(cfg, "generating", s.task == Task::WignerCovariant);
    if (gen.present()) {
        if (const KV* preset = gen.find("preset")) {
            if (preset->value == "canonical") s.generating = "p*q/2";
            else if (preset->value == "zero") s.generating = "0";
            else
                throw ConfigError("line " + std::to_string(preset->line) +
                                  ": [generating] unknown preset '" + preset->value + "'");
        } else {
            s.generating = gen.text("expression");
        }
    }

    SectionReader pot(cfg, "potential",
                      s.task == Task::Spectrum || s.task == Task::EquivalenceSweep);
    if (pot.present()) {
        s.potential_coeffs = parse_number_list(pot.text("coeffs"), "[potential] coeffs");
        s.potential_mass = pot.number("mass", 1.0);
    }

    SectionReader out(cfg, "output", true);
    s.output_dir = out.text("directory");
    s.formats = split(out.text("formats", "csv,binary,pgm,ppm,json"), ',');

    SectionReader ver(cfg, "verify", false);
    if (ver.present()) {
        s.seed = static_cast<std::uint64_t>(ver.number("seed", 42.0));
        s.verify_grid_n = ver.integer("grid_n", 512);
        s.broken_connection = ver.boolean("broken_connection", false);
    }

    for (const auto& [name, kvs] : cfg.sections) {
        (void)kvs;
        s.sections.push_back(name);
    }
    if (s.task == Task::EquivalenceSweep && s.f_list.empty())
        throw ConfigError("[task] equivalence-sweep needs f_list");
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

std::string print_scenario(const Scenario& s) {
    std::string o;
    auto has = [&](const char* name) {
        for (const auto& sec : s.sections)
            if (sec == name) return true;
        return false;
    };
    auto num = [&](double v) { return io::format_double(v); };

    if (has("grid")) {
        o += "[grid]\n";
        o += "q_min = " + num(s.q_axis.min) + "\nq_max = " + num(s.q_axis.max) +
             "\nq_n = " + std::to_string(s.q_axis.n) + "\n";
        o += "p_min = " + num(s.p_axis.min) + "\np_max = " + num(s.p_axis.max) +
             "\np_n = " + std::to_string(s.p_axis.n) + "\n";
        o += "hbar = " + num(s.hbar) + "\n\n";
    }
    if (has("state")) {
        o += "[state]\n";
        o += std::string("kind = \"") + state_kind_name(s.state_kind) + "\"\n";
        switch (s.state_kind) {
            case StateKind::Oscillator:
                o += "n = " + std::to_string(s.oscillator_n) + "\nmass = " + num(s.mass) +
                     "\nomega = " + num(s.omega) + "\n";
                break;
            case StateKind::Gaussian:
                o += "q0 = " + num(s.q0) + "\np0 = " + num(s.p0) + "\nsigma = " + num(s.sigma) +
                     "\n";
                break;
            case StateKind::FactorState: {
                o += "a = " + num(s.factor_a) + "\nphi = \"";
                for (std::size_t k = 0; k < s.factor_phi.size(); ++k)
                    o += (k ? " " : "") + num(s.factor_phi[k]);
                o += "\"\n";
                break;
            }
            case StateKind::File:
                o += "file = \"" + s.state_file + "\"\n";
                break;
        }
        o += "\n";
    }
    if (has("generating")) {
        o += "[generating]\nexpression = \"" + s.generating + "\"\n\n";
    }
    if (has("potential")) {
        o += "[potential]\ncoeffs = \"";
        for (std::size_t k = 0; k < s.potential_coeffs.size(); ++k)
            o += (k ? " " : "") + num(s.potential_coeffs[k]);
        o += "\"\nmass = " + num(s.potential_mass) + "\n\n";
    }
    o += "[task]\nkind = \"" + std::string(task_name(s.task)) + "\"\n";
    o += "count = " + std::to_string(s.count) + "\n";
    if (!s.f_list.empty()) {
        o += "f_list = \"";
        for (std::size_t k = 0; k < s.f_list.size(); ++k) o += (k ? "; " : "") + s.f_list[k];
        o += "\"\n";
    }
    o += "\n[output]\ndirectory = \"" + s.output_dir + "\"\nformats = \"";
    for (std::size_t k = 0; k < s.formats.size(); ++k) o += (k ? "," : "") + s.formats[k];
    o += "\"\n";
    if (has("verify")) {
        o += "\n[verify]\nseed = " + std::to_string(s.seed) +
             "\ngrid_n = " + std::to_string(s.verify_grid_n) +
             "\nbroken_connection = " + (s.broken_connection ? "true" : "false") + "\n";
    }
    return o;
}

// ------------------------------------------------------------------ running

namespace {

bool wants(const Scenario& s, const char* fmt) {
    for (const auto& f : s.formats)
        if (f == fmt) return true;
    return false;
}

std::filesystem::path resolve_outdir(const Scenario& s) {
    if (const char* env = std::getenv("PHASEWIG_OUTDIR"); env && *env)
        return std::filesystem::path(env);
    return std::filesystem::path(s.output_dir);
}

json grid_json(const PhaseGrid& g) {
    return json{{"q_min", g.q.min}, {"q_max", g.q.max}, {"q_n", g.q.n},
                {"p_min", g.p.min}, {"p_max", g.p.max}, {"p_n", g.p.n},
                {"hbar", g.hbar}};
}

states::Wavefunction build_state(const Scenario& s, const PhaseGrid& grid) {
    switch (s.state_kind) {
        case StateKind::Oscillator:
            return states::oscillator_eigenstate(s.oscillator_n, {s.mass, s.omega}, grid);
        case StateKind::Gaussian:
            return states::gaussian_packet(s.q0, s.p0, s.sigma, grid);
        case StateKind::FactorState: {
            poly::CPoly phi(s.factor_phi.size());
            for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = poly::cd(s.factor_phi[k], 0);
            return states::wavefunction_from_factor_state({s.factor_a, phi}, grid);
        }
        case StateKind::File: {
            numgrid::Field f = io::read_field_binary(s.state_file);
            if (!(f.grid() == grid) || f.shape() != numgrid::FieldShape::OverQ)
                throw ConfigError("state file grid/shape does not match the scenario grid");
            const double leak =
                numgrid::boundary_leakage_1d(f.values(), grid.q.periodic);
            if (leak > states::kStateLeakTolerance)
                throw BoundaryLeakageError("state file leaks at the boundary");
            double nrm = 0.0;
            for (int k = 0; k < f.size(); ++k) nrm += std::norm(f[k]);
            nrm = std::sqrt(nrm * grid.q.spacing());
            if (!(nrm > 0.0)) throw ConfigError("state file is identically zero");
            for (int k = 0; k < f.size(); ++k) f[k] /= nrm;
            return states::Wavefunction(std::move(f), leak);
        }
    }
    throw ConfigError("unreachable state kind");
}

std::string state_provenance(const Scenario& s) {
    std::ostringstream os;
    os << state_kind_name(s.state_kind);
    switch (s.state_kind) {
        case StateKind::Oscillator:
            os << " n=" << s.oscillator_n << " mass=" << s.mass << " omega=" << s.omega;
            break;
        case StateKind::Gaussian:
            os << " q0=" << s.q0 << " p0=" << s.p0 << " sigma=" << s.sigma;
            break;
        case StateKind::FactorState:
            os << " a=" << s.factor_a << " degree=" << (s.factor_phi.size() - 1);
            break;
        case StateKind::File:
            os << " " << s.state_file;
            break;
    }
    return os.str();
}

states::GaussianFactorState build_factor_state(const Scenario& s, const PhaseGrid& grid) {
    switch (s.state_kind) {
        case StateKind::Oscillator:
            return states::oscillator_factor_state(s.oscillator_n, {s.mass, s.omega}, grid.hbar);
        case StateKind::FactorState: {
            poly::CPoly phi(s.factor_phi.size());
            for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = poly::cd(s.factor_phi[k], 0);
            // normalize against the quadrature norm of the sampled state
            states::GaussianFactorState fs{s.factor_a, phi};
            double acc = 0.0;
            for (int j = 0; j < grid.q.n; ++j) {
                const double q = grid.q.coord(j);
                acc += std::norm(std::exp(-fs.a * q * q) * poly::eval(fs.phi, poly::cd(q, 0)));
            }
            fs.phi = poly::scale(fs.phi, poly::cd(1.0 / std::sqrt(acc * grid.q.spacing()), 0));
            return fs;
        }
        case StateKind::Gaussian:
            if (s.q0 == 0.0 && s.p0 == 0.0) {
                const double a = 1.0 / (4.0 * s.sigma * s.sigma);
                const double amp = std::pow(2.0 * std::numbers::pi * s.sigma * s.sigma, -0.25);
                return states::GaussianFactorState{a, {poly::cd(amp, 0)}};
            }
            throw ConfigError(
                "wigner-tegmen needs a Gaussian-times-polynomial state: use an oscillator or "
                "factor state, or a centered zero-momentum gaussian");
        case StateKind::File:
            throw ConfigError("wigner-tegmen cannot run on a sampled file state");
    }
    throw ConfigError("unreachable state kind");
}

void write_wigner_outputs(const Scenario& s, const std::filesystem::path& dir,
                          const wigner::WignerField& w, json& outputs) {
    if (wants(s, "csv")) {
        io::write_field_csv(dir / "W.csv", w.values);
        outputs["csv"] = "W.csv";
    }
    if (wants(s, "binary")) {
        io::write_field_binary(dir / "W.bin", w.values.to_complex());
        outputs["binary"] = "W.bin";
    }
    if (wants(s, "pgm")) {
        const auto scale = io::write_pgm(dir / "W.pgm", w.values);
        outputs["pgm"] = json{{"file", "W.pgm"}, {"min", scale.lo}, {"max", scale.hi}};
    }
    if (wants(s, "ppm")) {
        const auto scale = io::write_ppm_diverging(dir / "W.ppm", w.values);
        outputs["ppm"] = json{{"file", "W.ppm"}, {"min", scale.lo}, {"max", scale.hi}};
    }
}

json wigner_diagnostics(const wigner::WignerField& w) {
    const auto rep = wigner::negativity_report(w);
    const auto [pos, mom] = wigner::marginals(w);
    return json{
        {"normalization", numgrid::integrate_all(w.values)},
        {"discarded_imag_max", w.discarded_imag_max},
        {"boundary_leak", w.boundary_leak},
        {"negativity",
         json{{"min_value", rep.min_value},
              {"iq", rep.iq},
              {"ip", rep.ip},
              {"negative_mass_fraction", rep.negative_mass_fraction}}},
        {"position_marginal_mass", numgrid::integrate_samples(pos.values(), w.grid().q.spacing())},
        {"momentum_marginal_mass", numgrid::integrate_samples(mom.values(), w.grid().p.spacing())},
    };
}

int run_verify_task(const Scenario& s, const std::filesystem::path& dir, json& summary) {
    verify::Options opts;
    opts.seed = s.seed;
    opts.grid_n = s.verify_grid_n;
    opts.broken_connection = s.broken_connection;
    const verify::Report rep = verify::run_suite(opts);

    json checks = json::array();
    for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": value=" << c.value
                  << (c.greater_is_pass ? " >= " : " <= ") << c.threshold << "\n";
        checks.push_back(json{{"name", c.name},
                              {"value", c.value},
                              {"threshold", c.threshold},
                              {"direction", c.greater_is_pass ? "ge" : "le"},
                              {"pass", c.pass}});
    }
    std::cout << (rep.all_pass ? "verify: ALL CHECKS PASSED" : "verify: FAILURES PRESENT")
              << " (" << rep.checks.size() << " checks, seed " << opts.seed << ", grid "
              << opts.grid_n << ")\n";

    summary["seed"] = opts.seed;
    summary["verify_grid_n"] = opts.grid_n;
    summary["broken_connection"] = opts.broken_connection;
    summary["checks"] = std::move(checks);
    summary["all_pass"] = rep.all_pass;

    if (wants(s, "csv")) {
        std::string csvtext = "name,value,threshold,direction,pass\n";
        for (const auto& c : rep.checks) {
            csvtext += c.name + "," + io::format_double(c.value) + "," +
                       io::format_double(c.threshold) + "," + (c.greater_is_pass ? "ge" : "le") +
                       "," + (c.pass ? "1" : "0") + "\n";
        }
        io::atomic_write(dir / "verify.csv", csvtext);
        summary["outputs"]["csv"] = "verify.csv";
    }
    return rep.all_pass ? 0 : 2;
}

}  // namespace

int run_scenario_parsed(const Scenario& s) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::filesystem::path dir = resolve_outdir(s);
    std::filesystem::create_directories(dir);

    json summary;
    summary["phasewig_version"] = kVersion;
    summary["task"] = task_name(s.task);
    summary["outputs"] = json::object();
    int status = 0;

    switch (s.task) {
        case Task::WignerDirect:
        case Task::WignerTegmen:
        case Task::WignerCovariant: {
            const PhaseGrid grid = numgrid::make_grid(s.q_axis, s.p_axis, s.hbar);
            summary["grid"] = grid_json(grid);
            summary["state"] = state_provenance(s);

            std::optional<double> vs_direct;
            wigner::WignerField w = [&] {
                if (s.task == Task::WignerTegmen)
                    return wigner::wigner_tegmen(build_factor_state(s, grid), grid);
                const states::Wavefunction psi = build_state(s, grid);
                if (s.task == Task::WignerDirect) return wigner::wigner_direct(psi, grid);
                const auto f = symcalc::GeneratingFunction::parse(s.generating);
                summary["generating"] = s.generating;
                wigner::WignerField cov = wigner::covariant_wigner(psi, f, grid);
                // exploratory diagnostic: distance to the direct route (equality
                // is only expected for f = p*q)
                const wigner::WignerField direct = wigner::wigner_direct(psi, grid);
                double diff = 0.0;
                for (int k = 0; k < cov.values.size(); ++k)
                    diff = std::max(diff, std::abs(cov.values[k] - direct.values[k]));
                vs_direct = diff;
                return cov;
            }();

            summary["diagnostics"] = wigner_diagnostics(w);
            if (vs_direct) summary["diagnostics"]["direct_route_max_diff"] = *vs_direct;
            write_wigner_outputs(s, dir, w, summary["outputs"]);
            break;
        }
        case Task::Spectrum: {
            const PhaseGrid grid = numgrid::make_grid(s.q_axis, s.p_axis, s.hbar);
            summary["grid"] = grid_json(grid);
            const schrod::PolynomialPotential V{s.potential_coeffs};
            const auto pairs = schrod::solve_config(V, s.potential_mass, grid, s.count);

            std::string csvtext = "n,energy,residual,boundary_leak\n";
            json energies = json::array();
            for (std::size_t n = 0; n < pairs.size(); ++n) {
                csvtext += std::to_string(n) + "," + io::format_double(pairs[n].energy) + "," +
                           io::format_double(pairs[n].residual) + "," +
                           io::format_double(pairs[n].state.boundary_leak()) + "\n";
                energies.push_back(pairs[n].energy);
                if (wants(s, "binary")) {
                    const std::string stem = "state_" + std::to_string(n);
                    std::ostringstream prov;
                    prov << "eigenstate n=" << n << " energy=" << pairs[n].energy;
                    io::write_state(dir / stem, pairs[n].state, prov.str());
                    summary["outputs"][stem] = stem + ".bin";
                }
            }
            if (wants(s, "csv")) {
                io::atomic_write(dir / "spectrum.csv", csvtext);
                summary["outputs"]["csv"] = "spectrum.csv";
            }
            summary["diagnostics"] = json{{"energies", energies}};
            break;
        }
        case Task::EquivalenceSweep: {
            const PhaseGrid grid = numgrid::make_grid(s.q_axis, s.p_axis, s.hbar);
            summary["grid"] = grid_json(grid);
            const schrod::PolynomialPotential V{s.potential_coeffs};
            std::vector<symcalc::GeneratingFunction> fs;
            for (const auto& text : s.f_list)
                fs.push_back(symcalc::GeneratingFunction::parse(text));
            const auto rep = schrod::equivalence_sweep(V, s.potential_mass, grid, fs, s.count);

            std::string csvtext =
                "f,level,energy,phase_residual,integrability_residual,commutator_residual,"
                "error\n";
            for (const auto& c : rep.cells) {
                csvtext += "\"" + c.f_text + "\"," + std::to_string(c.level) + "," +
                           io::format_double(c.energy) + "," + io::format_double(c.phase_res) +
                           "," + io::format_double(c.integrability_res) + "," +
                           io::format_double(c.commutator_res) + ",\"" + c.error + "\"\n";
            }
            if (wants(s, "csv")) {
                io::atomic_write(dir / "sweep.csv", csvtext);
                summary["outputs"]["csv"] = "sweep.csv";
            }
            summary["diagnostics"] = json{{"max_phase_residual", rep.max_phase_res},
                                          {"max_integrability_residual", rep.max_integrability_res},
                                          {"max_commutator_residual", rep.max_commutator_res},
                                          {"cells", rep.cells.size()}};
            break;
        }
        case Task::Verify: {
            status = run_verify_task(s, dir, summary);
            break;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    summary["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    io::atomic_write(dir / "summary.json", summary.dump(2) + "\n");
    return status;
}

int run_scenario(const std::filesystem::path& scenario_path) {
    try {
        const Scenario s = load_scenario(scenario_path);
        return run_scenario_parsed(s);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalGateError& e) {
        std::cerr << "numerical gate: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

const char* summary_schema() {
    return R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "phasewig summary",
  "type": "object",
  "required": ["phasewig_version", "task", "outputs", "wall_time_ms"],
  "properties": {
    "phasewig_version": {"type": "string"},
    "task": {"type": "string",
             "enum": ["wigner-direct", "wigner-tegmen", "wigner-covariant",
                      "spectrum", "equivalence-sweep", "verify"]},
    "grid": {
      "type": "object",
      "required": ["q_min", "q_max", "q_n", "p_min", "p_max", "p_n", "hbar"],
      "properties": {
        "q_min": {"type": "number"}, "q_max": {"type": "number"},
        "q_n": {"type": "integer"},
        "p_min": {"type": "number"}, "p_max": {"type": "number"},
        "p_n": {"type": "integer"},
        "hbar": {"type": "number"}
      }
    },
    "state": {"type": "string"},
    "generating": {"type": "string"},
    "diagnostics": {"type": "object"},
    "outputs": {"type": "object"},
    "seed": {"type": "integer"},
    "verify_grid_n": {"type": "integer"},
    "broken_connection": {"type": "boolean"},
    "checks": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "value", "threshold", "direction", "pass"],
        "properties": {
          "name": {"type": "string"},
          "value": {"type": "number"},
          "threshold": {"type": "number"},
          "direction": {"type": "string", "enum": ["le", "ge"]},
          "pass": {"type": "boolean"}
        }
      }
    },
    "all_pass": {"type": "boolean"},
    "wall_time_ms": {"type": "number"}
  }
}
)";
}

}  // namespace phasewig::cli
