// hosc: exact and periodic-orbit densities of states of the 2D harmonic
// oscillator. Emits CSV/JSON tables; see README for the command reference.

#include "hosc/checks.hpp"
#include "hosc/dynamics.hpp"
#include "hosc/figures.hpp"
#include "hosc/oscillator.hpp"
#include "hosc/series.hpp"
#include "hosc/trace.hpp"
#include "hosc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace hosc;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verification_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

// ---------------------------------------------------------------------------
// table emission

struct Table {
    json meta = json::object();
    std::vector<std::string> columns;
    json data = json::object(); // column name -> array

    void add_column(const std::string& name) {
        columns.push_back(name);
        data[name] = json::array();
    }
    void push(const std::string& name, json value) { data[name].push_back(std::move(value)); }
};

std::string csv_cell(const json& value) {
    if (value.is_null()) return "";
    if (value.is_number_float()) return format_double(value.get<double>());
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (text.find(',') != std::string::npos || text.find('"') != std::string::npos) {
        std::string quoted = "\"";
        for (char c : text) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    }
    return text;
}

void flatten_meta(const json& meta, const std::string& prefix, std::ostream& out) {
    for (const auto& [key, value] : meta.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            flatten_meta(value, name, out);
        } else if (value.is_number_float()) {
            out << "# " << name << "=" << format_double(value.get<double>()) << "\n";
        } else {
            out << "# " << name << "=" << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
        }
    }
}

void write_csv(const Table& table, std::ostream& out) {
    flatten_meta(table.meta, "", out);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    const std::size_t rows =
        table.columns.empty() ? 0 : table.data.at(table.columns.front()).size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << csv_cell(table.data.at(table.columns[c]).at(r));
        }
        out << "\n";
    }
}

void write_json(const Table& table, std::ostream& out) {
    json root = json::object();
    root["meta"] = table.meta;
    root["columns"] = table.columns;
    root["data"] = table.data;
    out << root.dump(2) << "\n";
}

void emit(const Table& table, const std::string& format, const std::string& path) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        out = &file;
    }
    if (format == "csv") {
        write_csv(table, *out);
    } else {
        write_json(table, *out);
    }
}

// ---------------------------------------------------------------------------
// shared oscillator/grid/smoothing options

struct OscillatorOptions {
    double m = 1.0;
    double hbar = 1.0;
    std::string ratio;  // "k1:k2"
    double omega = 1.0; // common frequency with --ratio, or isotropic
    double omega1 = 0.0, omega2 = 0.0;
    bool omega1_set = false, omega2_set = false;
    bool incommensurate_flag = false;
};

void add_oscillator_options(CLI::App* cmd, OscillatorOptions& opt) {
    cmd->add_option("--m", opt.m, "particle mass")->capture_default_str();
    cmd->add_option("--hbar", opt.hbar, "Planck constant over 2 pi")->capture_default_str();
    cmd->add_option("--ratio", opt.ratio, "commensurate ratio k1:k2 (with --omega)");
    cmd->add_option("--omega", opt.omega, "common frequency k1 w1 = k2 w2 (default 1)");
    cmd->add_option("--omega1", opt.omega1, "first mode frequency")
        ->each([&opt](const std::string&) { opt.omega1_set = true; });
    cmd->add_option("--omega2", opt.omega2, "second mode frequency")
        ->each([&opt](const std::string&) { opt.omega2_set = true; });
    cmd->add_flag("--incommensurate", opt.incommensurate_flag,
                  "declare the omega1:omega2 ratio irrational (skips the rational sniff)");
}

std::pair<int, int> parse_ratio(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("--ratio expects the form k1:k2");
    try {
        const int k1 = std::stoi(text.substr(0, colon));
        const int k2 = std::stoi(text.substr(colon + 1));
        return {k1, k2};
    } catch (const std::exception&) {
        throw UsageError("--ratio expects positive integers k1:k2");
    }
}

OscillatorConfig resolve_config(const OscillatorOptions& opt) {
    if (!opt.ratio.empty()) {
        if (opt.omega1_set || opt.omega2_set) {
            throw UsageError("give either --ratio with --omega, or --omega1/--omega2");
        }
        const auto [k1, k2] = parse_ratio(opt.ratio);
        return OscillatorConfig::commensurate(k1, k2, opt.omega, opt.m, opt.hbar);
    }
    if (opt.omega1_set != opt.omega2_set) {
        throw UsageError("--omega1 and --omega2 must be given together");
    }
    if (!opt.omega1_set) {
        // bare --omega means the isotropic oscillator
        return OscillatorConfig::isotropic(opt.omega, opt.m, opt.hbar);
    }
    if (opt.omega1 == opt.omega2) {
        return OscillatorConfig::isotropic(opt.omega1, opt.m, opt.hbar);
    }
    if (!opt.incommensurate_flag) {
        const auto sniffed = classify_ratio(opt.omega1, opt.omega2, 1e-12, 64);
        if (sniffed.regime == Regime::Commensurate) {
            throw UsageError("frequencies form the rational ratio "
                             + std::to_string(sniffed.k2) + ":" + std::to_string(sniffed.k1)
                             + " (omega2:omega1 scale); declare it with --ratio "
                             + std::to_string(sniffed.k1) + ":" + std::to_string(sniffed.k2)
                             + " or pass --incommensurate to override");
        }
    }
    return OscillatorConfig::incommensurate(opt.omega1, opt.omega2, opt.m, opt.hbar);
}

json config_meta(const OscillatorConfig& config) {
    json meta = json::object();
    meta["m"] = config.m;
    meta["hbar"] = config.hbar;
    meta["omega1"] = config.omega1;
    meta["omega2"] = config.omega2;
    switch (config.regime()) {
    case Regime::Isotropic:
        meta["regime"] = "isotropic";
        meta["omega"] = config.omega();
        break;
    case Regime::Commensurate:
        meta["regime"] = "commensurate";
        meta["k1"] = config.k1();
        meta["k2"] = config.k2();
        meta["omega"] = config.omega();
        break;
    case Regime::Incommensurate:
        meta["regime"] = "incommensurate";
        break;
    }
    return meta;
}

struct GridOptions {
    std::string spec; // "start:stop:count"
};

std::vector<double> resolve_grid(const GridOptions& opt, const OscillatorConfig& config,
                                 bool require_positive) {
    double start = 0.05 * config.hbar_omega_ref();
    double stop = 10.0 * config.hbar_omega_ref();
    std::size_t count = 2000;
    if (!opt.spec.empty()) {
        const auto first = opt.spec.find(':');
        const auto second = opt.spec.find(':', first == std::string::npos ? first : first + 1);
        if (first == std::string::npos || second == std::string::npos) {
            throw UsageError("--grid expects start:stop:count");
        }
        try {
            start = std::stod(opt.spec.substr(0, first));
            stop = std::stod(opt.spec.substr(first + 1, second - first - 1));
            count = static_cast<std::size_t>(std::stoull(opt.spec.substr(second + 1)));
        } catch (const std::exception&) {
            throw UsageError("--grid expects numeric start:stop:count");
        }
    }
    if (count < 2) throw UsageError("grid needs at least 2 points");
    if (!(start < stop)) throw UsageError("grid start must be below stop");
    if (require_positive && start <= 0.0) {
        throw UsageError("grid start must be positive: the trace formulas hold for E > 0");
    }
    return make_grid(start, stop, count);
}

struct SmoothingOptions {
    double sigma = -1.0; // negative: default 0.02 hbar omega_ref
    double damping_eps = 1e-12;
    double divisor_floor = 1e-8;
};

void add_smoothing_options(CLI::App* cmd, SmoothingOptions& opt) {
    cmd->add_option("--sigma", opt.sigma, "Gaussian smoothing width (default 0.02 hbar omega_ref)");
    cmd->add_option("--eps", opt.damping_eps, "series truncation threshold")->capture_default_str();
    cmd->add_option("--divisor-floor", opt.divisor_floor,
                    "smallest tolerated stability divisor")
        ->capture_default_str();
}

SmoothingSpec resolve_smoothing(const SmoothingOptions& opt, const OscillatorConfig& config) {
    SmoothingSpec smoothing;
    smoothing.width = opt.sigma > 0.0 ? opt.sigma : 0.02 * config.hbar_omega_ref();
    smoothing.damping_eps = opt.damping_eps;
    smoothing.divisor_floor = opt.divisor_floor;
    return smoothing;
}

json smoothing_meta(const SmoothingSpec& smoothing) {
    json meta = json::object();
    meta["width"] = smoothing.width;
    meta["damping_eps"] = smoothing.damping_eps;
    meta["divisor_floor"] = smoothing.divisor_floor;
    return meta;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_spectrum(const OscillatorConfig& config, double e_max, const std::string& format,
                 const std::string& out) {
    Table table;
    table.meta["command"] = "spectrum";
    table.meta["oscillator"] = config_meta(config);
    table.meta["emax"] = e_max;
    table.add_column("energy");
    table.add_column("degeneracy");
    table.add_column("lambda1");
    table.add_column("lambda2");
    table.add_column("members");

    for (const Level& level : exact_levels(config, e_max)) {
        table.push("energy", level.energy);
        table.push("degeneracy", level.degeneracy);
        if (level.irrep) {
            table.push("lambda1", (*level.irrep)[0]);
            table.push("lambda2", (*level.irrep)[1]);
        } else {
            table.push("lambda1", nullptr);
            table.push("lambda2", nullptr);
        }
        if (format == "csv") {
            std::string text;
            for (const auto& nu : level.members) {
                if (!text.empty()) text += ";";
                text += "(" + std::to_string(nu[0]) + "," + std::to_string(nu[1]) + ")";
            }
            table.push("members", text);
        } else {
            json members = json::array();
            for (const auto& nu : level.members) members.push_back({nu[0], nu[1]});
            table.push("members", members);
        }
    }
    emit(table, format, out);
    return exit_ok;
}

int cmd_dos(const OscillatorConfig& config, const std::vector<double>& grid,
            const SmoothingSpec& smoothing, const std::string& mode,
            const std::string& terms_filter, const std::string& format, const std::string& out) {
    TermSelection selection;
    if (!terms_filter.empty()) {
        selection = TermSelection{false, false, false};
        std::string item;
        std::stringstream stream(terms_filter);
        while (std::getline(stream, item, ',')) {
            if (item == "classical") selection.classical = true;
            else if (item == "family") selection.family = true;
            else if (item == "isolated") selection.isolated = true;
            else throw UsageError("unknown term '" + item + "' (classical, family, isolated)");
        }
    }
    const bool want_exact = mode == "exact" || mode == "both";
    const bool want_sc = mode == "semiclassical" || mode == "both";
    if (!want_exact && !want_sc) {
        throw UsageError("--mode must be exact, semiclassical or both");
    }

    Table table;
    table.meta["command"] = "dos";
    table.meta["oscillator"] = config_meta(config);
    table.meta["smoothing"] = smoothing_meta(smoothing);
    table.meta["mode"] = mode;
    table.meta["grid"] = {{"start", grid.front()}, {"stop", grid.back()}, {"count", grid.size()}};

    table.add_column("E");
    for (double e : grid) table.push("E", e);

    DosSeries exact;
    if (want_exact) {
        const auto levels = exact_levels(config, grid.back() + 15.0 * smoothing.width);
        exact = smoothed_exact_dos(levels, grid, smoothing.width);
        table.add_column("exact_smoothed");
        for (double v : exact.values) table.push("exact_smoothed", v);
    }

    DosSeries total;
    if (want_sc) {
        table.add_column("classical");
        for (double e : grid) {
            table.push("classical", selection.classical ? classical_dos(config, e) : 0.0);
        }
        const bool has_family = config.regime() != Regime::Incommensurate;
        const bool has_isolated = config.regime() != Regime::Isotropic;
        if (has_family && selection.family) {
            table.add_column("family");
            for (double e : grid) {
                table.push("family", e > 0.0
                                         ? (config.regime() == Regime::Isotropic
                                                ? delta_rho_isotropic(config, e, smoothing)
                                                : delta_rho_family(config, e, smoothing))
                                         : 0.0);
            }
        }
        if (has_isolated && selection.isolated) {
            table.add_column("isolated");
            for (double e : grid) {
                table.push("isolated", e > 0.0
                                           ? (config.regime() == Regime::Commensurate
                                                  ? delta_rho_isolated(config, e, smoothing)
                                                  : delta_rho_incommensurate(config, e, smoothing))
                                           : 0.0);
            }
        }
        total = total_dos(config, grid, smoothing, selection);
        table.meta["provenance"] = total.provenance;
        table.add_column("total_sc");
        for (double v : total.values) table.push("total_sc", v);
    }

    if (want_exact && want_sc) {
        double scale = 0.0;
        for (double v : exact.values) scale = std::max(scale, std::abs(v));
        for (double v : total.values) scale = std::max(scale, std::abs(v));
        table.add_column("rel_discrepancy");
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double rel =
                scale > 0.0 ? std::abs(exact.values[i] - total.values[i]) / scale : 0.0;
            worst = std::max(worst, rel);
            table.push("rel_discrepancy", rel);
        }
        table.meta["max_rel_discrepancy"] = worst;
    }
    emit(table, format, out);
    return exit_ok;
}

int cmd_reduced_dos(const OscillatorConfig& config, int lambda1, int lambda2,
                    const std::vector<double>& grid, const SmoothingSpec& smoothing,
                    const std::string& format, const std::string& out) {
    if (config.regime() == Regime::Incommensurate) {
        throw UsageError("reduced-dos needs a commensurate config (--ratio k1:k2)");
    }
    if (lambda1 < 0 || lambda1 >= config.k1() || lambda2 < 0 || lambda2 >= config.k2()) {
        throw UsageError("irrep (" + std::to_string(lambda1) + "," + std::to_string(lambda2)
                         + ") out of range for k = (" + std::to_string(config.k1()) + ","
                         + std::to_string(config.k2()) + ")");
    }
    const Irrep irrep{lambda1, lambda2};
    const int order = config.k1() * config.k2();

    Table table;
    table.meta["command"] = "reduced-dos";
    table.meta["oscillator"] = config_meta(config);
    table.meta["smoothing"] = smoothing_meta(smoothing);
    table.meta["lambda1"] = lambda1;
    table.meta["lambda2"] = lambda2;
    table.add_column("E");
    table.add_column("reduced_sc");
    table.add_column("exact_reduced_smoothed");

    const auto levels =
        reduced_exact_levels(config, irrep, grid.back() + 15.0 * smoothing.width);
    const auto exact = smoothed_exact_dos(levels, grid, smoothing.width);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = grid[i];
        table.push("E", e);
        const double sc = e > 0.0 ? classical_dos(config, e) / order
                                        + delta_rho_reduced(config, irrep, e, smoothing)
                                  : 0.0;
        table.push("reduced_sc", sc);
        table.push("exact_reduced_smoothed", exact.values[i]);
    }
    emit(table, format, out);
    return exit_ok;
}

int cmd_figure3(const OscillatorConfig& config, const std::vector<double>& grid,
                const SmoothingSpec& smoothing, double tolerance, const std::string& format,
                const std::string& prefix) {
    const auto panels = figure3_panels(config, grid, smoothing, tolerance);
    const std::string extension = format == "csv" ? ".csv" : ".json";

    auto base_meta = [&](const char* panel) {
        json meta = json::object();
        meta["command"] = "figure3";
        meta["panel"] = panel;
        meta["oscillator"] = config_meta(config);
        meta["smoothing"] = smoothing_meta(smoothing);
        return meta;
    };

    Table a;
    a.meta = base_meta("a");
    a.add_column("E");
    for (double e : grid) a.push("E", e);
    for (const auto& [irrep, series] : panels.reduced) {
        const std::string name =
            "irrep_" + std::to_string(irrep.lambda1) + "_" + std::to_string(irrep.lambda2);
        a.add_column(name);
        for (double v : series.values) a.push(name, v);
    }
    a.add_column("family_plus_classical");
    for (double v : panels.family_plus_classical.values) a.push("family_plus_classical", v);
    emit(a, format, prefix + "_a" + extension);

    Table b;
    b.meta = base_meta("b");
    b.add_column("E");
    b.add_column("isolated1");
    b.add_column("isolated2");
    b.add_column("isolated_sum");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        b.push("E", grid[i]);
        b.push("isolated1", panels.isolated_mode1.values[i]);
        b.push("isolated2", panels.isolated_mode2.values[i]);
        b.push("isolated_sum", panels.isolated_sum.values[i]);
    }
    emit(b, format, prefix + "_b" + extension);

    Table c;
    c.meta = base_meta("c");
    c.meta["comparison"] = {{"max_rel_error", panels.report.max_rel_error},
                            {"worst_energy", panels.report.worst_energy},
                            {"tolerance", panels.report.tolerance},
                            {"pass", panels.report.pass}};
    c.add_column("E");
    c.add_column("total_sc");
    c.add_column("exact_smoothed");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        c.push("E", grid[i]);
        c.push("total_sc", panels.total.values[i]);
        c.push("exact_smoothed", panels.exact.values[i]);
    }
    emit(c, format, prefix + "_c" + extension);

    if (!panels.report.pass) {
        std::cerr << "figure3: total density deviates from the exact spectrum by "
                  << panels.report.max_rel_error << " of peak scale (tolerance "
                  << tolerance << ")\n";
        return exit_verification_failure;
    }
    std::cerr << "figure3: wrote " << prefix << "_{a,b,c}" << extension
              << " (max_rel_error " << panels.report.max_rel_error << ")\n";
    return exit_ok;
}

int cmd_trajectory(const OscillatorConfig& config, const PhaseState& init, double t_max,
                   std::size_t samples, bool segments, const std::string& format,
                   const std::string& out) {
    if (!(t_max > 0.0)) throw UsageError("--tmax must be positive");
    if (samples < 2) throw UsageError("--samples must be at least 2");
    if (segments && config.regime() == Regime::Incommensurate) {
        throw UsageError("--segments needs a commensurate config");
    }

    Table table;
    table.meta["command"] = "trajectory";
    table.meta["oscillator"] = config_meta(config);
    table.meta["tmax"] = t_max;
    table.add_column("t");
    table.add_column("q1");
    table.add_column("p1");
    table.add_column("q2");
    table.add_column("p2");

    std::vector<Segment> cells;
    if (segments) {
        cells = segment_decomposition(config, init); // throws at zero mode energy
        table.meta["segments_per_period"] = static_cast<long long>(cells.size());
        table.add_column("theta1");
        table.add_column("theta2");
        table.add_column("cell_lambda1");
        table.add_column("cell_lambda2");
    }

    const auto t_grid = make_grid(0.0, t_max, samples);
    const auto states = trajectory_analytic(config, init, t_grid);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        table.push("t", t_grid[i]);
        table.push("q1", states[i].q1);
        table.push("p1", states[i].p1);
        table.push("q2", states[i].q2);
        table.push("p2", states[i].p2);
        if (segments) {
            const auto aa = action_angles(config, states[i]);
            table.push("theta1", aa.theta1);
            table.push("theta2", aa.theta2);
            const double slice = 2.0 * std::numbers::pi / config.omega();
            const auto index =
                static_cast<std::size_t>(std::floor(t_grid[i] / slice)) % cells.size();
            table.push("cell_lambda1", cells[index].cell1);
            table.push("cell_lambda2", cells[index].cell2);
        }
    }
    emit(table, format, out);
    return exit_ok;
}

int cmd_bloch(const OscillatorConfig& config, const PhaseState& init, const std::string& format,
              const std::string& out) {
    if (config.regime() != Regime::Isotropic) {
        throw UsageError("bloch needs an isotropic config (--omega)");
    }
    const double energy = total_energy(config, init);
    if (energy <= 0.0) throw UsageError("Bloch point undefined at zero energy");
    const JVector j = conserved_J(init, config.m, config.omega());
    const auto r = bloch_point(init, config.m, config.omega());

    Table table;
    table.meta["command"] = "bloch";
    table.meta["oscillator"] = config_meta(config);
    for (const char* name : {"energy", "j1", "j2", "j3", "x", "y", "z"}) table.add_column(name);
    table.push("energy", energy);
    table.push("j1", j.j1);
    table.push("j2", j.j2);
    table.push("j3", j.j3);
    table.push("x", r[0]);
    table.push("y", r[1]);
    table.push("z", r[2]);
    emit(table, format, out);
    return exit_ok;
}

int cmd_verify(const std::string& suite, double tolerance, const std::string& out) {
    std::vector<checks::CheckResult> results;
    if (suite == "identities" || suite == "all") {
        const auto identity = checks::identity_checks();
        results.insert(results.end(), identity.begin(), identity.end());
    }
    if (suite == "dos" || suite == "all") {
        const auto dos = checks::dos_checks(tolerance);
        results.insert(results.end(), dos.begin(), dos.end());
    }
    if (results.empty()) throw UsageError("--suite must be identities, dos or all");

    bool all_pass = true;
    json report = json::object();
    report["suite"] = suite;
    report["tolerance"] = tolerance;
    report["checks"] = json::array();
    for (const auto& check : results) {
        json entry = json::object();
        entry["name"] = check.name;
        entry["pass"] = check.pass;
        entry["measured"] = check.measured;
        entry["tolerance"] = check.tolerance;
        if (!check.detail.empty()) entry["detail"] = check.detail;
        report["checks"].push_back(entry);
        all_pass = all_pass && check.pass;
        std::cerr << (check.pass ? "PASS " : "FAIL ") << check.name << " (measured "
                  << check.measured << ", tolerance " << check.tolerance << ")\n";
    }
    report["pass"] = all_pass;

    std::ofstream file;
    std::ostream* stream = &std::cout;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error("cannot open output file: " + out);
        stream = &file;
    }
    *stream << report.dump(2) << "\n";
    return all_pass ? exit_ok : exit_verification_failure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and semiclassical densities of states of the 2D harmonic oscillator"};
    app.require_subcommand(1);

    // spectrum ------------------------------------------------------------
    auto* spectrum = app.add_subcommand("spectrum", "exact energy levels with degeneracies");
    OscillatorOptions spectrum_osc;
    add_oscillator_options(spectrum, spectrum_osc);
    double emax = 10.0;
    spectrum->add_option("--emax", emax, "enumerate levels up to this energy")->required();
    std::string spectrum_format = "csv", spectrum_out;
    spectrum->add_option("--format", spectrum_format)->check(CLI::IsMember({"csv", "json"}));
    spectrum->add_option("--out", spectrum_out, "output path (default stdout)");

    // dos -----------------------------------------------------------------
    auto* dos = app.add_subcommand("dos", "density of states, exact and/or semiclassical");
    OscillatorOptions dos_osc;
    add_oscillator_options(dos, dos_osc);
    GridOptions dos_grid;
    dos->add_option("--grid", dos_grid.spec, "energy grid start:stop:count");
    SmoothingOptions dos_smooth;
    add_smoothing_options(dos, dos_smooth);
    std::string dos_mode = "both", dos_terms, dos_format = "csv", dos_out;
    dos->add_option("--mode", dos_mode)->check(CLI::IsMember({"exact", "semiclassical", "both"}));
    dos->add_option("--terms", dos_terms, "comma list of classical,family,isolated");
    dos->add_option("--format", dos_format)->check(CLI::IsMember({"csv", "json"}));
    dos->add_option("--out", dos_out);

    // reduced-dos ---------------------------------------------------------
    auto* reduced = app.add_subcommand("reduced-dos", "symmetry-reduced density of one irrep");
    OscillatorOptions reduced_osc;
    add_oscillator_options(reduced, reduced_osc);
    GridOptions reduced_grid;
    reduced->add_option("--grid", reduced_grid.spec, "energy grid start:stop:count");
    SmoothingOptions reduced_smooth;
    add_smoothing_options(reduced, reduced_smooth);
    int lambda1 = 0, lambda2 = 0;
    reduced->add_option("--lambda1", lambda1, "irrep label for mode 1")->required();
    reduced->add_option("--lambda2", lambda2, "irrep label for mode 2")->required();
    std::string reduced_format = "csv", reduced_out;
    reduced->add_option("--format", reduced_format)->check(CLI::IsMember({"csv", "json"}));
    reduced->add_option("--out", reduced_out);

    // figure3 ---------------------------------------------------------------
    auto* figure3 = app.add_subcommand(
        "figure3", "three-panel decomposition of the commensurate density of states");
    OscillatorOptions figure3_osc;
    figure3_osc.ratio = "3:2";
    add_oscillator_options(figure3, figure3_osc);
    GridOptions figure3_grid;
    figure3->add_option("--grid", figure3_grid.spec, "energy grid start:stop:count");
    SmoothingOptions figure3_smooth;
    add_smoothing_options(figure3, figure3_smooth);
    double figure3_tol = 1e-5;
    figure3->add_option("--tol", figure3_tol, "panel-c comparison tolerance")
        ->capture_default_str();
    std::string figure3_format = "csv", figure3_prefix = "figure3";
    figure3->add_option("--format", figure3_format)->check(CLI::IsMember({"csv", "json"}));
    figure3->add_option("--out", figure3_prefix, "output file prefix")->capture_default_str();

    // trajectory ------------------------------------------------------------
    auto* trajectory = app.add_subcommand("trajectory", "analytic trajectory samples");
    OscillatorOptions trajectory_osc;
    add_oscillator_options(trajectory, trajectory_osc);
    PhaseState trajectory_init;
    trajectory->add_option("--q1", trajectory_init.q1)->capture_default_str();
    trajectory->add_option("--p1", trajectory_init.p1)->capture_default_str();
    trajectory->add_option("--q2", trajectory_init.q2)->capture_default_str();
    trajectory->add_option("--p2", trajectory_init.p2)->capture_default_str();
    double tmax = 10.0;
    std::size_t samples = 1000;
    bool segments = false;
    trajectory->add_option("--tmax", tmax)->capture_default_str();
    trajectory->add_option("--samples", samples)->capture_default_str();
    trajectory->add_flag("--segments", segments, "label samples with elementary-cell indices");
    std::string trajectory_format = "csv", trajectory_out;
    trajectory->add_option("--format", trajectory_format)
        ->check(CLI::IsMember({"csv", "json"}));
    trajectory->add_option("--out", trajectory_out);

    // bloch -------------------------------------------------------------------
    auto* bloch = app.add_subcommand("bloch", "Bloch-sphere point of an isotropic orbit");
    OscillatorOptions bloch_osc;
    add_oscillator_options(bloch, bloch_osc);
    PhaseState bloch_init;
    bloch->add_option("--q1", bloch_init.q1)->capture_default_str();
    bloch->add_option("--p1", bloch_init.p1)->capture_default_str();
    bloch->add_option("--q2", bloch_init.q2)->capture_default_str();
    bloch->add_option("--p2", bloch_init.p2)->capture_default_str();
    std::string bloch_format = "csv", bloch_out;
    bloch->add_option("--format", bloch_format)->check(CLI::IsMember({"csv", "json"}));
    bloch->add_option("--out", bloch_out);

    // verify --------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run the identity/DOS verification suites");
    std::string suite = "all";
    double verify_tol = 1e-5;
    std::string verify_out;
    verify->add_option("--suite", suite)->check(CLI::IsMember({"identities", "dos", "all"}));
    verify->add_option("--tol", verify_tol, "tolerance for the smoothed-DOS comparisons")
        ->capture_default_str();
    verify->add_option("--out", verify_out, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return exit_usage;
    }

    try {
        if (spectrum->parsed()) {
            return cmd_spectrum(resolve_config(spectrum_osc), emax, spectrum_format, spectrum_out);
        }
        if (dos->parsed()) {
            const auto config = resolve_config(dos_osc);
            const auto grid = resolve_grid(dos_grid, config, true);
            return cmd_dos(config, grid, resolve_smoothing(dos_smooth, config), dos_mode,
                           dos_terms, dos_format, dos_out);
        }
        if (reduced->parsed()) {
            const auto config = resolve_config(reduced_osc);
            const auto grid = resolve_grid(reduced_grid, config, true);
            return cmd_reduced_dos(config, lambda1, lambda2, grid,
                                   resolve_smoothing(reduced_smooth, config), reduced_format,
                                   reduced_out);
        }
        if (figure3->parsed()) {
            const auto config = resolve_config(figure3_osc);
            if (config.regime() == Regime::Incommensurate) {
                throw UsageError("figure3 needs a commensurate config");
            }
            GridOptions grid_spec = figure3_grid;
            if (grid_spec.spec.empty()) {
                grid_spec.spec = "0.02:" + format_double(5.0 * config.hbar_omega_ref()) + ":2000";
            }
            const auto grid = resolve_grid(grid_spec, config, true);
            return cmd_figure3(config, grid, resolve_smoothing(figure3_smooth, config),
                               figure3_tol, figure3_format, figure3_prefix);
        }
        if (trajectory->parsed()) {
            return cmd_trajectory(resolve_config(trajectory_osc), trajectory_init, tmax, samples,
                                  segments, trajectory_format, trajectory_out);
        }
        if (bloch->parsed()) {
            return cmd_bloch(resolve_config(bloch_osc), bloch_init, bloch_format, bloch_out);
        }
        if (verify->parsed()) {
            return cmd_verify(suite, verify_tol, verify_out);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const SmallDivisorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verification_failure;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verification_failure;
    }
    return exit_usage;
}
