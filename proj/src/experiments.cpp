#include "qopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <utility>

#include "CLI11.hpp"

#include "qopt/entangle.hpp"
#include "qopt/io.hpp"
#include "qopt/nonlocal.hpp"
#include "qopt/optics.hpp"
#include "qopt/stochastic.hpp"

namespace qopt {
namespace cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kPi = 3.141592653589793238462643383279502884;

const std::vector<std::string> kRegistry{"mzi",  "delayed-choice", "measure", "rto",
                                         "scan", "bell",           "table1",  "sample"};

const std::vector<std::string> kFormats{"csv", "json", "svg"};

GridSpec parse_grid(const std::string& text) {
    GridSpec grid;
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw ParseError("--grid expects START:STOP:POINTS, got '" + text + "'");
    }
    const auto parse_double = [&](const std::string& piece) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(piece, &used);
        } catch (const std::exception&) {
            throw ParseError("--grid expects numeric START:STOP:POINTS, got '" + text + "'");
        }
        if (used != piece.size()) {
            throw ParseError("--grid has a malformed number '" + piece + "'");
        }
        return value;
    };
    grid.start = parse_double(text.substr(0, first));
    grid.stop = parse_double(text.substr(first + 1, second - first - 1));
    const std::string points_piece = text.substr(second + 1);
    try {
        std::size_t used = 0;
        const long long points = std::stoll(points_piece, &used);
        if (used != points_piece.size() || points < 0) {
            throw ParseError("--grid points must be a nonnegative integer, got '" +
                             points_piece + "'");
        }
        grid.points = static_cast<std::uint64_t>(points);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("--grid points must be a nonnegative integer, got '" +
                         points_piece + "'");
    }
    return grid;
}

std::vector<std::string> split_formats(const std::string& text) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> violations;
    if (std::find(kRegistry.begin(), kRegistry.end(), cfg.experiment) == kRegistry.end()) {
        throw UnknownExperimentError("unknown experiment '" + cfg.experiment + "'");
    }
    if (cfg.grid.points < 2) {
        violations.push_back("grid points >= 2 (got " + std::to_string(cfg.grid.points) + ")");
    }
    if (!std::isfinite(cfg.grid.start) || !std::isfinite(cfg.grid.stop)) {
        violations.push_back("grid start/stop must be finite");
    }
    if (!std::isfinite(cfg.phase_a) || !std::isfinite(cfg.phase_b)) {
        violations.push_back("phases must be finite");
    }
    if (cfg.formats.empty()) {
        violations.push_back("at least one output format");
    }
    for (const auto& fmt : cfg.formats) {
        if (std::find(kFormats.begin(), kFormats.end(), fmt) == kFormats.end()) {
            violations.push_back("format must be one of csv,json,svg (got '" + fmt + "')");
        }
    }
    if (cfg.output_dir.empty()) {
        violations.push_back("output directory must not be empty");
    }
    if (!violations.empty()) {
        std::string msg = "invalid configuration: ";
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (i > 0) msg += "; ";
            msg += violations[i];
        }
        throw ValidationError(msg);
    }
}

// Collects the data files of one run and remembers which formats are wanted.
class OutputWriter {
  public:
    OutputWriter(const ExperimentConfig& cfg) : cfg_(cfg), dir_(cfg.output_dir) {}

    bool want(const std::string& fmt) const {
        return std::find(cfg_.formats.begin(), cfg_.formats.end(), fmt) !=
               cfg_.formats.end();
    }

    void write(const std::string& name, const std::string& content) {
        io::write_text_file((dir_ / name).string(), content);
        files_.push_back(name);
    }

    const std::vector<std::string>& files() const { return files_; }

  private:
    const ExperimentConfig& cfg_;
    fs::path dir_;
    std::vector<std::string> files_;
};

ordered_json config_echo(const ExperimentConfig& cfg) {
    ordered_json j;
    j["experiment"] = cfg.experiment;
    j["phase_a"] = cfg.phase_a;
    j["phase_b"] = cfg.phase_b;
    j["grid"] = {{"start", cfg.grid.start}, {"stop", cfg.grid.stop}, {"points", cfg.grid.points}};
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    j["formats"] = cfg.formats;
    return j;
}

ordered_json matrix_json(const Eigen::MatrixXcd& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

ordered_json stats_json(const nonlocal::CorrelationStats& s) {
    ordered_json j;
    j["p11"] = s.p11;
    j["p12"] = s.p12;
    j["p21"] = s.p21;
    j["p22"] = s.p22;
    j["p_corr"] = s.p_corr;
    j["p_anti"] = s.p_anti;
    j["E"] = s.e;
    return j;
}

ordered_json bell_json(const nonlocal::BellResult& r) {
    ordered_json j;
    j["inequality"] = r.inequality;
    j["form"] = r.form;
    j["settings"] = r.settings;
    j["lhs"] = r.lhs;
    j["bound"] = r.bound;
    j["margin"] = r.margin;
    j["abs_margin"] = r.abs_margin;
    j["violated"] = r.violated;
    return j;
}

ordered_json run_mzi(const ExperimentConfig& cfg, OutputWriter& out,
                     std::vector<std::string>&) {
    const std::vector<double> grid = grid_values(cfg.grid);
    io::CsvBuilder csv({"dphi_rad", "p_d1", "p_d2"});
    ordered_json rows = ordered_json::array();
    std::vector<double> p_d1;
    p_d1.reserve(grid.size());
    for (double dphi : grid) {
        const auto probs = optics::mzi_probabilities(optics::MziConfig{dphi, 0.0, true});
        csv.add_row({dphi, probs.d1, probs.d2});
        rows.push_back({{"dphi_rad", dphi}, {"p_d1", probs.d1}, {"p_d2", probs.d2}});
        p_d1.push_back(probs.d1);
    }
    if (out.want("csv")) out.write("mzi.csv", csv.str());
    if (out.want("json")) out.write("mzi.json", rows.dump(2) + "\n");
    if (out.want("svg")) {
        out.write("mzi.svg", io::svg_line_chart("Single-photon interference", "dphi [rad]",
                                                "P(D1)", grid, {{"P(D1)", "#1f77b4", p_d1}}));
    }

    const auto no_bs2 = optics::mzi_probabilities(optics::MziConfig{cfg.phase_a, 0.0, false});
    ordered_json metrics;
    metrics["points"] = grid.size();
    metrics["p_d1_min"] = *std::min_element(p_d1.begin(), p_d1.end());
    metrics["p_d1_max"] = *std::max_element(p_d1.begin(), p_d1.end());
    metrics["p_d1_no_bs2"] = no_bs2.d1;
    return metrics;
}

ordered_json run_delayed_choice(const ExperimentConfig& cfg, OutputWriter& out,
                                std::vector<std::string>&) {
    const auto result = optics::delayed_choice(cfg.trials, cfg.phase_a, cfg.seed);
    io::CsvBuilder csv({"branch", "d1", "d2"});
    csv.add_row(std::vector<std::string>{"with_bs2", std::to_string(result.with_bs2.d1),
                                         std::to_string(result.with_bs2.d2)});
    csv.add_row(std::vector<std::string>{"without_bs2",
                                         std::to_string(result.without_bs2.d1),
                                         std::to_string(result.without_bs2.d2)});
    if (out.want("csv")) out.write("delayed_choice.csv", csv.str());

    const auto fraction = [](const optics::DetectorTally& t) {
        return t.total() == 0 ? 0.0
                              : static_cast<double>(t.d1) / static_cast<double>(t.total());
    };
    ordered_json metrics;
    metrics["with_bs2"] = {{"d1", result.with_bs2.d1},
                           {"d2", result.with_bs2.d2},
                           {"fraction_d1", fraction(result.with_bs2)}};
    metrics["without_bs2"] = {{"d1", result.without_bs2.d1},
                              {"d2", result.without_bs2.d2},
                              {"fraction_d1", fraction(result.without_bs2)}};
    if (out.want("json")) out.write("delayed_choice.json", metrics.dump(2) + "\n");
    return metrics;
}

ordered_json run_measure(const ExperimentConfig& cfg, OutputWriter& out,
                         std::vector<std::string>&) {
    const entangle::MeasurementSetup setup{
        {entangle::kSystem1, entangle::kSystem2}, {"ready", "1", "2"}, cfg.phase_b};
    const Ket system = normalize(
        setup.system_basis,
        std::vector<Complex>{1.0, std::polar(1.0, cfg.phase_a)});
    const BipartiteState state = entangle::premeasure(system, setup);

    const DensityOperator reduced_a = partial_trace(state, Side::A);
    const DensityOperator reduced_b = partial_trace(state, Side::B);

    ordered_json metrics;
    metrics["schmidt"] = schmidt(state);
    metrics["is_product"] = entangle::is_product(state);
    metrics["purity_a"] = purity(reduced_a);
    metrics["purity_b"] = purity(reduced_b);
    metrics["cross_term_a"] = entangle::cross_term_weight(state, Side::A);
    metrics["cross_term_b"] = entangle::cross_term_weight(state, Side::B);
    metrics["reduced_a"] = matrix_json(reduced_a.matrix());
    metrics["reduced_b"] = matrix_json(reduced_b.matrix());
    if (out.want("json")) out.write("measure.json", metrics.dump(2) + "\n");
    return metrics;
}

ordered_json run_rto(const ExperimentConfig& cfg, OutputWriter& out,
                     std::vector<std::string>&) {
    const nonlocal::RtoConfig rto{cfg.phase_a, cfg.phase_b};
    const auto stats = nonlocal::joint_probs(rto);
    const auto marg = nonlocal::marginals(rto);

    io::CsvBuilder csv({"phi_a_rad", "phi_b_rad", "p11", "p12", "p21", "p22", "p_corr",
                        "p_anti", "E"});
    csv.add_row({cfg.phase_a, cfg.phase_b, stats.p11, stats.p12, stats.p21, stats.p22,
                 stats.p_corr, stats.p_anti, stats.e});
    if (out.want("csv")) out.write("rto.csv", csv.str());

    ordered_json metrics = stats_json(stats);
    metrics["marginal_a"] = marg.a;
    metrics["marginal_b"] = marg.b;
    if (out.want("json")) out.write("rto.json", metrics.dump(2) + "\n");
    return metrics;
}

ordered_json run_scan(const ExperimentConfig& cfg, OutputWriter& out,
                      std::vector<std::string>&) {
    const std::vector<double> grid = grid_values(cfg.grid);
    io::CsvBuilder csv({"dphi_rad", "p11", "p12", "p21", "p22", "p_corr", "p_anti", "E"});
    ordered_json rows = ordered_json::array();
    std::vector<double> e_values;
    e_values.reserve(grid.size());
    for (double dphi : grid) {
        const auto stats =
            nonlocal::joint_probs(nonlocal::RtoConfig{cfg.phase_a, cfg.phase_a + dphi});
        csv.add_row({dphi, stats.p11, stats.p12, stats.p21, stats.p22, stats.p_corr,
                     stats.p_anti, stats.e});
        ordered_json row = stats_json(stats);
        row["dphi_rad"] = dphi;
        rows.push_back(row);
        e_values.push_back(stats.e);
    }
    if (out.want("csv")) out.write("scan.csv", csv.str());
    if (out.want("json")) out.write("scan.json", rows.dump(2) + "\n");
    if (out.want("svg")) {
        out.write("scan.svg",
                  io::svg_line_chart("Pair correlation vs phase difference", "dphi [rad]",
                                     "degree of correlation", grid,
                                     {{"E", "#d62728", e_values}}));
    }
    ordered_json metrics;
    metrics["points"] = grid.size();
    metrics["e_min"] = *std::min_element(e_values.begin(), e_values.end());
    metrics["e_max"] = *std::max_element(e_values.begin(), e_values.end());
    return metrics;
}

ordered_json run_bell(const ExperimentConfig& cfg, OutputWriter& out,
                      std::vector<std::string>&) {
    const auto chsh_opt = nonlocal::chsh(0.0, kPi / 2.0, kPi / 4.0, 3.0 * kPi / 4.0);
    const auto bell_opt = nonlocal::bell_1964(0.0, kPi / 4.0, kPi / 2.0);

    const std::vector<double> grid = grid_values(cfg.grid);
    const auto scan = nonlocal::bell_scan(grid);
    io::CsvBuilder csv({"dphi_rad", "bell1964_margin", "chsh_margin", "best_margin"});
    std::vector<double> best;
    best.reserve(scan.size());
    for (const auto& row : scan) {
        csv.add_row({row.dphi, row.bell1964_margin, row.chsh_margin, row.best_margin});
        best.push_back(row.best_margin);
    }
    if (out.want("csv")) out.write("bell_scan.csv", csv.str());
    if (out.want("svg")) {
        out.write("bell_scan.svg",
                  io::svg_line_chart("Inequality margin vs phase difference", "dphi [rad]",
                                     "margin", grid, {{"best margin", "#2ca02c", best}}));
    }

    ordered_json metrics;
    metrics["chsh"] = bell_json(chsh_opt);
    metrics["bell1964"] = bell_json(bell_opt);
    metrics["lhv_max"] =
        nonlocal::deterministic_lhv_max(0.0, kPi / 2.0, kPi / 4.0, 3.0 * kPi / 4.0);
    if (out.want("json")) out.write("bell.json", metrics.dump(2) + "\n");
    return metrics;
}

ordered_json run_table1(const ExperimentConfig&, OutputWriter& out,
                        std::vector<std::string>& notes) {
    const auto table = nonlocal::table1();
    io::CsvBuilder csv({"phase_rad", "simple_p1", "marginal_a1", "marginal_b1", "p_corr",
                        "p_anti", "E"});
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        csv.add_row({row.phase, row.simple_p1, row.marginal_a1, row.marginal_b1,
                     row.p_corr, row.p_anti, row.e});
        rows.push_back({{"phase_rad", row.phase},
                        {"simple_p1", row.simple_p1},
                        {"marginal_a1", row.marginal_a1},
                        {"marginal_b1", row.marginal_b1},
                        {"p_corr", row.p_corr},
                        {"p_anti", row.p_anti},
                        {"E", row.e}});
    }
    if (out.want("csv")) out.write("table1.csv", csv.str());
    if (out.want("json")) out.write("table1.json", rows.dump(2) + "\n");
    notes.insert(notes.end(), table.notes.begin(), table.notes.end());

    ordered_json metrics;
    metrics["rows"] = rows;
    return metrics;
}

ordered_json run_sample(const ExperimentConfig& cfg, OutputWriter& out,
                        std::vector<std::string>&) {
    const auto stats = nonlocal::joint_probs(nonlocal::RtoConfig{cfg.phase_a, cfg.phase_b});
    const auto tally = stochastic::sample_joint(stats, cfg.trials, cfg.seed);

    io::CsvBuilder csv({"outcome", "count"});
    csv.add_row(std::vector<std::string>{"A1B1", std::to_string(tally.n11())});
    csv.add_row(std::vector<std::string>{"A1B2", std::to_string(tally.n12())});
    csv.add_row(std::vector<std::string>{"A2B1", std::to_string(tally.n21())});
    csv.add_row(std::vector<std::string>{"A2B2", std::to_string(tally.n22())});
    if (out.want("csv")) out.write("sample.csv", csv.str());

    ordered_json metrics;
    metrics["n"] = tally.total;
    metrics["counts"] = {{"A1B1", tally.n11()},
                         {"A1B2", tally.n12()},
                         {"A2B1", tally.n21()},
                         {"A2B2", tally.n22()}};
    metrics["e_exact"] = stats.e;
    if (tally.total > 0) {
        const auto estimate = stochastic::estimate_correlation(tally);
        metrics["e_hat"] = estimate.value;
        metrics["std_error"] = estimate.std_error;
    } else {
        metrics["e_hat"] = nullptr;
        metrics["std_error"] = nullptr;
    }
    if (out.want("json")) out.write("sample.json", metrics.dump(2) + "\n");
    return metrics;
}

} // namespace

const std::vector<std::string>& experiment_registry() { return kRegistry; }

std::vector<double> grid_values(const GridSpec& grid) {
    std::vector<double> values;
    values.reserve(grid.points);
    const double step = (grid.stop - grid.start) / static_cast<double>(grid.points - 1);
    for (std::uint64_t i = 0; i < grid.points; ++i) {
        values.push_back(grid.start + step * static_cast<double>(i));
    }
    return values;
}

ExperimentConfig parse_cli(const std::vector<std::string>& args) {
    ExperimentConfig cfg;
    const char* env_out = std::getenv(kOutputDirEnvVar);
    if (env_out != nullptr && *env_out != '\0') {
        cfg.output_dir = env_out;
    }

    CLI::App app{"Tabletop quantum-optics experiment runner"};
    app.name("qoptsim");

    std::string grid_text;
    std::string format_text;
    app.add_option("experiment", cfg.experiment,
                   "One of: mzi, delayed-choice, measure, rto, scan, bell, table1, sample")
        ->required();
    app.set_config("--config", "", "Config file with key=value lines; flags override");
    app.add_option("--phase-a", cfg.phase_a, "Phase a / arm-1 phase [rad]");
    app.add_option("--phase-b", cfg.phase_b, "Phase b / correlation phase [rad]");
    app.add_option("--grid", grid_text, "Phase grid as START:STOP:POINTS [rad]");
    app.add_option("--trials", cfg.trials, "Monte Carlo trial count");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--out", cfg.output_dir, "Output directory")->envname(kOutputDirEnvVar);
    app.add_option("--format", format_text, "Comma-separated subset of csv,json,svg");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& err) {
        throw ParseError(err.what());
    }

    if (!grid_text.empty()) {
        cfg.grid = parse_grid(grid_text);
    }
    if (!format_text.empty()) {
        cfg.formats = split_formats(format_text);
    }
    validate_config(cfg);
    return cfg;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + cfg.output_dir +
                      "': " + ec.message());
    }

    OutputWriter out(cfg);
    std::vector<std::string> notes;
    ordered_json metrics;
    if (cfg.experiment == "mzi") {
        metrics = run_mzi(cfg, out, notes);
    } else if (cfg.experiment == "delayed-choice") {
        metrics = run_delayed_choice(cfg, out, notes);
    } else if (cfg.experiment == "measure") {
        metrics = run_measure(cfg, out, notes);
    } else if (cfg.experiment == "rto") {
        metrics = run_rto(cfg, out, notes);
    } else if (cfg.experiment == "scan") {
        metrics = run_scan(cfg, out, notes);
    } else if (cfg.experiment == "bell") {
        metrics = run_bell(cfg, out, notes);
    } else if (cfg.experiment == "table1") {
        metrics = run_table1(cfg, out, notes);
    } else if (cfg.experiment == "sample") {
        metrics = run_sample(cfg, out, notes);
    } else {
        throw UnknownExperimentError("unknown experiment '" + cfg.experiment + "'");
    }

    RunResult result;
    result.summary["schema_version"] = 1;
    result.summary["experiment"] = cfg.experiment;
    result.summary["config"] = config_echo(cfg);
    result.summary["metrics"] = metrics;
    result.summary["notes"] = notes;
    std::vector<std::string> outputs = out.files();
    outputs.push_back("summary.json");
    result.summary["outputs"] = outputs;

    io::write_text_file((fs::path(cfg.output_dir) / "summary.json").string(),
                        result.summary.dump(2) + "\n");
    result.files = outputs;
    return result;
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }

    ExperimentConfig cfg;
    try {
        cfg = parse_cli(args);
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const UnknownExperimentError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    try {
        const RunResult result = run_experiment(cfg);
        std::cout << "wrote " << result.files.size() << " file(s) to " << cfg.output_dir
                  << "\n";
        for (const auto& file : result.files) {
            std::cout << "  " << file << "\n";
        }
        return 0;
    } catch (const std::exception& err) {
        std::cerr << "error running '" << cfg.experiment << "': " << err.what() << "\n";
        return 3;
    }
}

} // namespace cli
} // namespace qopt
