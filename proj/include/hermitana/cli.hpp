// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_CLI_HPP
#define HERMITANA_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hermitana::cli {

struct RunConfig {
    std::string command;

    std::string model = "example3";
    std::map<std::string, double> model_params;

    // path / loop
    std::string generator; // "circle_<label>" or "waypoints"; empty = model default
    std::map<std::string, double> fixed;
    int winding = 1;
    int steps = 1024;
    std::vector<std::vector<double>> waypoints;
    bool closed = true;

    // command options
    std::string frame = "hermitian";
    int band = 0;
    double tol = 1e-6;
    double h = -1.0;
    int grid_n = 20;
    int mu = 1;
    int nu = 0;
    int points = 50;
    std::uint64_t seed = 12345;
    double T = 10.0;
    double dt = 1e-3;
    bool naive = false;
    bool compare = false;
    std::vector<double> grid_min; // optional per-axis range overrides
    std::vector<double> grid_max;

    std::string output;      // report JSON path; empty = stdout
    std::string csv;         // per-step CSV path; empty = none
    std::string config_file; // JSON file whose fields override the flags

    void validate() const; // throws ConfigInvalid
};

/// Parses argv into a RunConfig (CLI11 under the hood) and applies the
/// --config JSON overrides. Throws ConfigInvalid on bad input; help/usage
/// requests are signalled via HelpRequested.
struct HelpRequested {
    std::string text;
    int exit_code = 0;
};

RunConfig parse_args(int argc, const char* const* argv);

/// Applies the fields present in the JSON text on top of `config`.
void apply_config_json(RunConfig& config, const std::string& json_text);

/// Dispatches the configured command, writes the JSON report (and CSV
/// when requested) and returns the process exit code: 0 success, 2 for
/// verdict-level findings (obstruction detected, nontrivial holonomy),
/// 1 for errors and for a failed reproduce-paper run.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace hermitana::cli

#endif
