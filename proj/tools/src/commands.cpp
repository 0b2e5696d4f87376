#include "ptk/app/commands.hpp"

#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <json.hpp>

#include "ptk/constants.hpp"
#include "ptk/errors.hpp"
#include "ptk/transport.hpp"

#ifndef PTK_VERSION
#define PTK_VERSION "0.0.0"
#endif

namespace ptk::app {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) out << text;
    else write_file(path, text);
}

std::string params_line(const SystemParams& p) {
    return fmt::format("params: omega_c_GHz={} omega_q_GHz={} g_MHz={} kappa1_kHz={} kappa2_kHz={}",
                       format_value(p.omega_c / two_pi / 1e9), format_value(p.omega_q / two_pi / 1e9),
                       format_value(p.g / two_pi / 1e6), format_value(p.kappa1 / two_pi / 1e3),
                       format_value(p.kappa2 / two_pi / 1e3));
}

std::vector<double> sweep_grid(const SystemParams& p, const SweepSection& s) {
    if (!s.detuning_min) return default_grid(p, s.points);
    auto grid = linear_grid(*s.detuning_min, *s.detuning_max, s.points);
    for (auto& v : grid) v += p.omega_c;
    return grid;
}

}  // namespace

unsigned threads_from_env() {
    const char* env = std::getenv("PTK_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) throw ValidationError("PTK_THREADS", "expected an integer in [1, 1024]");
    return static_cast<unsigned>(n);
}

Resolved resolve(const RunConfig& cfg) {
    if (cfg.params) {
        cfg.params->validate();
        return {*cfg.params, std::nullopt};
    }
    if (!cfg.device) throw ConfigError("configuration has neither [device] nor [params]");
    const auto& d = *cfg.device;
    TransmonSpec ts = d.transmon;
    if (d.transmon_target && !(ts.ej > 0)) ts.ej = solve_ej(ts.charging_energy(), *d.transmon_target, ts.charge_cutoff);
    auto ex = extract_params(d.cavity, d.coax, ts, d.dipole);
    auto& rep = ex.report;
    if (d.reference_omega) rep.set_reference("omega_c", *d.reference_omega / two_pi / 1e9);
    if (d.reference_kappa) {
        rep.set_reference("kappa1", *d.reference_kappa / two_pi / 1e3);
        rep.set_reference("kappa2", *d.reference_kappa / two_pi / 1e3);
    }
    if (d.reference_g) rep.set_reference("g", *d.reference_g / two_pi / 1e6);
    return {ex.params, rep};
}

RunConfig with_overrides(RunConfig cfg, const CommandOptions& opt) {
    if (opt.grid) {
        if (*opt.grid < 2 || *opt.grid > 10000000) throw ValidationError("--grid", "expected an integer in [2, 1e7]");
        cfg.sweep.points = *opt.grid;
    }
    if (opt.mode) cfg.sweep.mode = *opt.mode;
    if (!opt.out.empty()) cfg.output.csv = opt.out;
    if (!opt.svg.empty()) cfg.output.svg = opt.svg;
    return cfg;
}

CsvTable sweep_table(const RunConfig& cfg, unsigned threads) {
    const SystemParams p = resolve(cfg).params;
    const bool good = good_cavity(p);
    const double unit = good ? 1e6 : 1e3;
    const auto grid = sweep_grid(p, cfg.sweep);

    CsvTable t;
    t.meta.push_back(std::string("ptk ") + PTK_VERSION);
    t.meta.push_back("config_hash: " + fnv1a_hex(canonical(cfg)));
    t.meta.push_back(std::string("mode: ") + (cfg.sweep.mode == SweepMode::single ? "single" : "g2"));
    t.meta.push_back(params_line(p));
    const std::string det = good ? "detuning_MHz" : "detuning_kHz";

    if (cfg.sweep.mode == SweepMode::single) {
        t.columns = {"freq_GHz", det, "abs_r_sq", "abs_t_sq", "arg_r", "arg_t"};
        const auto res = sweep_single(p, grid, threads);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& s = res[i];
            t.rows.push_back({grid[i] / two_pi / 1e9, (grid[i] - p.omega_c) / two_pi / unit, std::norm(s.r1),
                              std::norm(s.t21), std::arg(s.r1), std::arg(s.t21)});
        }
        return t;
    }

    t.meta.push_back("tau_ns: " + format_value(cfg.sweep.tau * 1e9));
    t.columns = {"freq_GHz", det, "g2_11", "g2_22", "g2_21", "div_11", "div_22", "div_21"};
    const double tau = cfg.sweep.tau;
    const auto r11 = sweep_g2(p, grid, {1, 1}, tau, threads);
    const auto r22 = sweep_g2(p, grid, {2, 2}, tau, threads);
    const auto r21 = sweep_g2(p, grid, {2, 1}, tau, threads);
    auto val = [](const CorrelationResult& r) { return r.diverged ? std::nan("") : r.g2.front(); };
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({grid[i] / two_pi / 1e9, (grid[i] - p.omega_c) / two_pi / unit, val(r11[i]), val(r22[i]),
                          val(r21[i]), r11[i].diverged ? 1.0 : 0.0, r22[i].diverged ? 1.0 : 0.0,
                          r21[i].diverged ? 1.0 : 0.0});
    return t;
}

PlotSpec plot_from_table(const CsvTable& table, bool log_scale) {
    if (table.columns.size() < 3) throw IoError("csv needs at least three columns to plot");
    PlotSpec spec;
    const int xcol = 1;
    spec.x_label = table.columns[xcol] == "detuning_kHz" ? "detuning (kHz)" : "detuning (MHz)";
    std::vector<std::string> ys;
    if (table.column("g2_22") >= 0) {
        ys = {"g2_11", "g2_22", "g2_21"};
        spec.title = "second-order correlation g2(0)";
        spec.y_label = "g2";
        spec.log_y = log_scale;
    } else if (table.column("abs_t_sq") >= 0) {
        ys = {"abs_r_sq", "abs_t_sq"};
        spec.title = "single-photon reflection and transmission";
        spec.y_label = "probability";
        spec.y_min = 0.0;
        spec.y_max = 1.05;
    } else {
        for (std::size_t i = 2; i < table.columns.size(); ++i) ys.push_back(table.columns[i]);
        spec.log_y = log_scale;
    }
    for (const auto& name : ys) {
        const int c = table.column(name);
        if (c < 0) throw IoError("csv lacks column " + name);
        Series s{name, {}, {}};
        for (const auto& row : table.rows) {
            s.x.push_back(row[xcol]);
            s.y.push_back(row[c]);
        }
        spec.series.push_back(std::move(s));
    }
    return spec;
}

std::string params_report(const Resolved& r, const std::string& format) {
    std::vector<ProvenanceEntry> entries;
    std::vector<std::string> warnings;
    if (r.report) {
        entries = r.report->entries;
        warnings = r.report->warnings;
    } else {
        const auto& p = r.params;
        entries = {{"omega_c", p.omega_c / two_pi / 1e9, "GHz", "config", std::nullopt},
                   {"omega_q", p.omega_q / two_pi / 1e9, "GHz", "config", std::nullopt},
                   {"g", p.g / two_pi / 1e6, "MHz", "config", std::nullopt},
                   {"kappa1", p.kappa1 / two_pi / 1e3, "kHz", "config", std::nullopt},
                   {"kappa2", p.kappa2 / two_pi / 1e3, "kHz", "config", std::nullopt}};
    }
    auto ratio = [](const ProvenanceEntry& e) { return std::abs(e.value) / *e.reference; };

    if (format == "jsonl") {
        std::string out;
        for (const auto& e : entries) {
            nlohmann::json j{{"name", e.name}, {"value", e.value}, {"unit", e.unit}, {"source", e.source}};
            if (e.reference) {
                j["reference"] = *e.reference;
                j["ratio"] = ratio(e);
            }
            out += j.dump() + "\n";
        }
        for (const auto& w : warnings) out += nlohmann::json{{"warning", w}}.dump() + "\n";
        return out;
    }
    if (format != "csv") throw ValidationError("--format", "expected csv or jsonl");
    std::string out = std::string("# ptk ") + PTK_VERSION + "\n";
    for (const auto& w : warnings) out += "# warning: " + w + "\n";
    out += "name,value,unit,source,reference,ratio\n";
    for (const auto& e : entries)
        out += fmt::format("{},{},{},{},{},{}\n", e.name, format_value(e.value), csv_field(e.unit), csv_field(e.source),
                           e.reference ? format_value(*e.reference) : "", e.reference ? format_value(ratio(e)) : "");
    return out;
}

std::string verify_report(const std::vector<OracleReport>& rows) {
    std::string out = std::string("# ptk ") + PTK_VERSION + "\n";
    out += "check,status,analytic,oracle,rel_error,tolerance,note\n";
    for (const auto& r : rows) {
        const char* status = r.skipped ? "skip" : (r.pass ? "pass" : "fail");
        out += fmt::format("{},{},{},{},{},{},{}\n", csv_field(r.check_name), status, format_value(r.analytic_value),
                           format_value(r.oracle_value), format_value(r.rel_error), format_value(r.tolerance),
                           csv_field(r.note));
    }
    return out;
}

int cmd_params(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    emit(opt.out, params_report(resolve(cfg), opt.format), out);
    return exit_ok;
}

int cmd_sweep(const RunConfig& in, const CommandOptions& opt, std::ostream& out) {
    const RunConfig cfg = with_overrides(in, opt);
    const CsvTable table = sweep_table(cfg, opt.threads);
    emit(cfg.output.csv, write_csv(table), out);
    if (!cfg.output.svg.empty()) {
        auto spec = plot_from_table(table, cfg.output.log_scale);
        spec.title += " (" + cfg.label + ")";
        write_file(cfg.output.svg, render_svg(spec));
    }
    return exit_ok;
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const SystemParams p = resolve(cfg).params;
    const auto rows = run_verification(p, opt.threads);
    emit(opt.out, verify_report(rows), out);
    std::ostream& summary = opt.out.empty() ? log : out;
    int passed = 0, failed = 0, skipped = 0;
    double total = 0.0;
    for (const auto& r : rows) {
        total += r.runtime;
        if (r.skipped) ++skipped;
        else if (r.pass) ++passed;
        else ++failed;
        summary << fmt::format("{:<34} {:<4} rel_error={:.3e} tol={:.1e} {:.3f}s\n", r.check_name,
                               r.skipped ? "skip" : (r.pass ? "ok" : "FAIL"), r.rel_error, r.tolerance, r.runtime);
    }
    summary << fmt::format("{} passed, {} failed, {} skipped, {:.2f}s in checks\n", passed, failed, skipped, total);
    return failed == 0 ? exit_ok : exit_verify;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path, bool log_scale) {
    const CsvTable table = read_csv(read_file(csv_path));
    write_file(svg_path, render_svg(plot_from_table(table, log_scale)));
    return exit_ok;
}

}  // namespace ptk::app
