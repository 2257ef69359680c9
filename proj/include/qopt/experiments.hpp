#pragma once

// Experiment runner behind the command-line tool: named experiments over
// the optics / entanglement / correlation modules, configured from flags
// and an optional key=value config file (flags win), writing CSV / JSON /
// SVG outputs plus a machine-readable summary.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qopt {
namespace cli {

inline const char* kOutputDirEnvVar = "QOPTSIM_OUT";

struct GridSpec {
    double start = 0.0;
    double stop = 6.283185307179586476925286766559005768; // 2 pi
    std::uint64_t points = 360;
};

struct ExperimentConfig {
    std::string experiment;
    double phase_a = 0.0;
    double phase_b = 0.0;
    GridSpec grid;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    std::string output_dir = "results";
    std::vector<std::string> formats{"csv"};
};

const std::vector<std::string>& experiment_registry();

// Raised by parse_cli when --help is requested; carries the help text.
struct HelpRequested {
    std::string text;
};

// Parse `<experiment> [--config FILE] [--phase-a RAD] [--phase-b RAD]
// [--grid START:STOP:POINTS] [--trials N] [--seed N] [--out DIR]
// [--format csv,json,svg]` (args exclude the program name). Flag values
// override config-file values; QOPTSIM_OUT supplies the default output
// directory. Throws UnknownExperimentError, ParseError, or
// ValidationError (listing every violated constraint).
ExperimentConfig parse_cli(const std::vector<std::string>& args);

// Inclusive linspace with cfg-validated points >= 2.
std::vector<double> grid_values(const GridSpec& grid);

struct RunResult {
    std::vector<std::string> files; // paths written, relative to output_dir
    nlohmann::ordered_json summary;
};

// Executes the configured experiment and writes its outputs (always
// summary.json; data files per cfg.formats) under cfg.output_dir, which is
// created if needed. Deterministic: identical configs give byte-identical
// CSV/JSON/SVG outputs. Throws IoError or the dispatched module's errors.
RunResult run_experiment(const ExperimentConfig& cfg);

// Full tool entry point: 0 on success, 2 on configuration errors,
// 3 on runtime errors.
int run_main(int argc, char** argv);

} // namespace cli
} // namespace qopt
