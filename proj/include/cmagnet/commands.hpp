#pragma once

// Command implementations behind the CLI subcommands. The binary only parses
// arguments and streams; everything observable happens here, so tests can
// drive the exact command semantics in-process.

#include "cmagnet/config.hpp"
#include "cmagnet/frenet.hpp"

#include <json.hpp>

#include <optional>

namespace cmagnet::cli {

struct GenerateOutput {
    SampledCurve<double> curve;
    MagneticCurveParams<double> params;
};

/// Closed-form samples on the configured grid. Initial-condition configs are
/// first converted through params_from_initial_conditions.
GenerateOutput run_generate(const RunConfig& config);

/// RK4 samples on the same grid and CSV schema as run_generate. A params-only
/// config is allowed: the initial conditions are read off the closed form at
/// t = 0.
SampledCurve<double> run_integrate(const RunConfig& config);

struct AnalyzeOutput {
    Classification<double> classification;
    nlohmann::json report;
};

AnalyzeOutput run_analyze(const SampledCurve<double>& curve, std::optional<double> q,
                          const Tolerances& tol);

/// Integrates and evaluates the closed form on one grid and reports the max
/// pointwise distance plus speed/slant drift of the integrated curve.
nlohmann::json run_compare(const RunConfig& config);

nlohmann::json classification_to_json(const Classification<double>& c);

}  // namespace cmagnet::cli
