#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ptk/app/config.hpp"
#include "ptk/app/csv.hpp"
#include "ptk/app/svg.hpp"
#include "ptk/extract.hpp"
#include "ptk/oracle.hpp"

namespace ptk::app {

enum ExitCode { exit_ok = 0, exit_config = 1, exit_domain = 2, exit_verify = 3 };

struct CommandOptions {
    std::string out;  // empty: stdout
    std::string svg;
    std::optional<std::size_t> grid;
    std::optional<SweepMode> mode;
    std::string format = "csv";  // params only: csv or jsonl
    unsigned threads = 0;
};

struct Resolved {
    SystemParams params;
    std::optional<ExtractionReport> report;
};

// SystemParams from either section; runs the extraction for a device.
Resolved resolve(const RunConfig& cfg);

// Applies --grid/--mode overrides on top of the file values.
RunConfig with_overrides(RunConfig cfg, const CommandOptions& opt);

CsvTable sweep_table(const RunConfig& cfg, unsigned threads);
PlotSpec plot_from_table(const CsvTable& table, bool log_scale);

std::string params_report(const Resolved& r, const std::string& format);
std::string verify_report(const std::vector<OracleReport>& rows);

int cmd_params(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log);
int cmd_plot(const std::string& csv_path, const std::string& svg_path, bool log_scale);

// Whole command line; maps exceptions to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// PTK_THREADS, or 0 when unset
unsigned threads_from_env();

}  // namespace ptk::app
