// cmagnet: generate, integrate, analyze, and compare normal magnetic curves
// on the flat model R^{2n+s}.
//
// Exit codes: 0 success, 2 input error (with an error JSON on stderr),
// 3 classification-negative (analyze only).

#include "cmagnet/commands.hpp"
#include "cmagnet/csv.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNotMagnetic = 3;

struct ToleranceFlags {
    std::map<std::string, double> values;

    void attach(CLI::App* cmd) {
        static const char* names[] = {"structure", "unit-tangent", "unit-speed", "geodesic",
                                      "constant",  "slant-drift",  "legendre",   "kappa2-zero",
                                      "frame",     "kappa3",       "lorentz",    "params-unit"};
        for (const char* name : names)
            cmd->add_option_function<double>(
                "--tol-" + std::string(name),
                [this, name](double v) { values[name] = v; },
                "Override the '" + std::string(name) + "' tolerance");
    }

    void apply(cmagnet::Tolerances& tol) const {
        json overrides = json::object();
        for (const auto& [name, value] : values) {
            std::string key = name;
            for (char& c : key)
                if (c == '-') c = '_';
            overrides[key] = value;
        }
        cmagnet::apply_tolerance_overrides(tol, overrides);
    }
};

json read_json_input(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw cmagnet::ConfigError("config: cannot open '" + path + "'");
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw cmagnet::ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
}

cmagnet::RunConfig load_config(const std::string& path, const ToleranceFlags& flags) {
    cmagnet::RunConfig config = cmagnet::parse_run_config(read_json_input(path));
    flags.apply(config.tol);
    return config;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw cmagnet::ConfigError("cannot open output file '" + path + "'");
    out << text;
}

std::string csv_to_string(const cmagnet::SampledCurve<double>& curve) {
    std::ostringstream os;
    cmagnet::write_curve_csv(os, curve);
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Normal magnetic curves of the contact magnetic field F_q on R^{2n+s}"};
    app.require_subcommand(1);

    std::string config_path = "-";
    std::string out_path = "-";
    std::string csv_path;
    std::optional<double> analyze_q;
    ToleranceFlags tol_flags;

    CLI::App* generate = app.add_subcommand(
        "generate", "Evaluate the closed-form curve and write CSV samples");
    generate->add_option("--config", config_path, "Config JSON path, or - for stdin");
    generate->add_option("--out", out_path, "CSV output path, or - for stdout");

    CLI::App* integrate = app.add_subcommand(
        "integrate", "Integrate the Lorentz equation and write CSV samples");
    integrate->add_option("--config", config_path, "Config JSON path, or - for stdin");
    integrate->add_option("--out", out_path, "CSV output path, or - for stdout");

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Classify a curve CSV and write a JSON report");
    analyze->add_option("csv", csv_path, "Curve CSV path, or - for stdin")->required();
    analyze->add_option("--q", analyze_q, "Known charge to verify the Lorentz equation against");
    analyze->add_option("--out", out_path, "Report output path, or - for stdout");

    CLI::App* compare = app.add_subcommand(
        "compare", "Integrate and evaluate the closed form, reporting deviations");
    compare->add_option("--config", config_path, "Config JSON path, or - for stdin");
    compare->add_option("--out", out_path, "Report output path, or - for stdout");

    for (CLI::App* cmd : {generate, integrate, analyze, compare}) tol_flags.attach(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return kExitInputError;
    }

    try {
        if (generate->parsed()) {
            const cmagnet::RunConfig config = load_config(config_path, tol_flags);
            const cmagnet::cli::GenerateOutput out = cmagnet::cli::run_generate(config);
            write_text(out_path, csv_to_string(out.curve));
            // Params echo goes to stdout unless the CSV itself is using it.
            if (out_path != "-")
                std::cout << cmagnet::params_to_json(config.dims, out.params).dump(2) << '\n';
        } else if (integrate->parsed()) {
            const cmagnet::RunConfig config = load_config(config_path, tol_flags);
            write_text(out_path, csv_to_string(cmagnet::cli::run_integrate(config)));
        } else if (analyze->parsed()) {
            cmagnet::Tolerances tol;
            tol_flags.apply(tol);
            cmagnet::SampledCurve<double> curve;
            if (csv_path == "-") {
                curve = cmagnet::read_curve_csv(std::cin);
            } else {
                std::ifstream in(csv_path);
                if (!in) throw cmagnet::CsvError("curve csv: cannot open '" + csv_path + "'");
                curve = cmagnet::read_curve_csv(in);
            }
            const cmagnet::cli::AnalyzeOutput out =
                cmagnet::cli::run_analyze(curve, analyze_q, tol);
            write_text(out_path, out.report.dump(2) + "\n");
            return out.classification.curve_case == cmagnet::CurveCase::NotNormalMagnetic
                       ? kExitNotMagnetic
                       : kExitOk;
        } else if (compare->parsed()) {
            const cmagnet::RunConfig config = load_config(config_path, tol_flags);
            write_text(out_path, cmagnet::cli::run_compare(config).dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
