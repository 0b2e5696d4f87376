#include <CLI11.hpp>
#include <fmt/format.h>

#include "ptk/app/commands.hpp"
#include "ptk/errors.hpp"

namespace ptk::app {

namespace {

RunConfig load(const std::string& config_path, const std::string& regime, bool device_preset) {
    if (!config_path.empty() && !regime.empty()) throw ConfigError("give --config or --regime, not both");
    if (config_path.empty() && regime.empty()) throw ConfigError("one of --config or --regime is required");
    if (!regime.empty()) return preset_config(regime, device_preset);
    RunConfig cfg = parse_config(read_file(config_path));
    cfg.label = config_path;
    return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-photon transport through a port-coupled cavity with a transmon"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("ptk ") + PTK_VERSION);

    std::string config, regime, svg, format = "csv", mode, csv_in;
    CommandOptions opt;
    std::size_t grid = 0;
    bool linear = false;

    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--config", config, "INI configuration file");
        sub->add_option("--regime", regime, "built-in parameter preset")->check(CLI::IsMember({"good", "bad"}));
    };

    auto* params = app.add_subcommand("params", "extracted or configured parameters with provenance");
    add_source(params);
    params->add_option("--out", opt.out, "output file (default stdout)");
    params->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

    auto* sweep = app.add_subcommand("sweep", "frequency sweep to CSV and optional SVG");
    add_source(sweep);
    sweep->add_option("--out", opt.out, "CSV file (default stdout)");
    sweep->add_option("--svg", opt.svg, "SVG plot file");
    sweep->add_option("--grid", grid, "number of grid points");
    sweep->add_option("--mode", mode, "single or g2")->check(CLI::IsMember({"single", "g2"}));

    auto* verify = app.add_subcommand("verify", "run the oracle suite; exit 3 on any failure");
    add_source(verify);
    verify->add_option("--out", opt.out, "report CSV (default stdout)");

    auto* plot = app.add_subcommand("plot", "SVG plot from an existing sweep CSV");
    plot->add_option("csv", csv_in, "sweep CSV")->required();
    plot->add_option("--svg,--out", svg, "SVG file")->required();
    plot->add_flag("--linear", linear, "linear y axis for g2 tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        opt.threads = threads_from_env();
        opt.format = format;
        if (grid) opt.grid = grid;
        if (!mode.empty()) opt.mode = mode == "g2" ? SweepMode::g2 : SweepMode::single;
        if (*params) return cmd_params(load(config, regime, true), opt, out);
        if (*sweep) return cmd_sweep(load(config, regime, false), opt, out);
        if (*verify) return cmd_verify(load(config, regime, false), opt, out, err);
        if (*plot) return cmd_plot(csv_in, svg, !linear);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return exit_config;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_config;
}

}  // namespace ptk::app
