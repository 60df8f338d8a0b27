#pragma once

// Run configuration: one JSON document per run, giving the structure
// dimensions and either initial conditions (with a charge) or closed-form
// parameters, plus the sampling grid and optional tolerance overrides.

#include "cmagnet/tolerances.hpp"
#include "cmagnet/trajectory.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>

namespace cmagnet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    StructureDims dims{1, 1};
    std::optional<double> q;  // required with initial conditions
    std::optional<VecX<double>> initial_point;
    std::optional<VecX<double>> initial_tangent;
    std::optional<MagneticCurveParams<double>> params;
    std::optional<double> t_end;
    std::optional<double> dt;
    long seed = 0;  // falls back to the CMAGNET_SEED environment variable
    Tolerances tol;

    bool has_initial_conditions() const { return initial_point && initial_tangent; }
};

/// Parses and validates a config document. Exactly one of (initial_point +
/// initial_tangent) or params must be present; arrays must be sized 2n+s;
/// unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json& doc);

nlohmann::json params_to_json(const StructureDims& dims,
                              const MagneticCurveParams<double>& params);

MagneticCurveParams<double> params_from_json(const StructureDims& dims,
                                             const nlohmann::json& doc);

nlohmann::json tolerances_to_json(const Tolerances& tol);

/// Applies overrides from a JSON object of named tolerance values.
void apply_tolerance_overrides(Tolerances& tol, const nlohmann::json& overrides);

}  // namespace cmagnet
