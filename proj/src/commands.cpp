#include "cmagnet/commands.hpp"

#include <cmath>

namespace cmagnet::cli {

namespace {

using nlohmann::json;

void require_grid(const RunConfig& config) {
    if (!config.t_end || !config.dt)
        throw ConfigError("config: 't_end' and 'dt' are required for this command");
}

MagneticCurveParams<double> resolve_params(const RunConfig& config) {
    if (config.params) return *config.params;
    return params_from_initial_conditions(config.dims, *config.q, *config.initial_point,
                                          *config.initial_tangent, config.tol.unit_tangent);
}

json residuals_to_json(const ResidualReport& res) {
    json out = json::object();
    const auto put = [&](const char* key, double value) {
        if (std::isfinite(value)) out[key] = value;
    };
    put("speed_drift", res.speed_drift);
    put("slant_drift", res.slant_drift);
    put("kappa1_drift", res.kappa1_drift);
    put("kappa2_drift", res.kappa2_drift);
    put("kappa3_max", res.kappa3_max);
    put("frame_v2", res.frame_v2);
    put("frame_v3", res.frame_v3);
    put("lorentz", res.lorentz);
    put("horizontal_tangent", res.horizontal_tangent);
    return out;
}

}  // namespace

GenerateOutput run_generate(const RunConfig& config) {
    require_grid(config);
    const MagneticCurveParams<double> params = resolve_params(config);
    const VecX<double> grid = uniform_grid(*config.t_end, *config.dt);
    return {closed_form(config.dims, params, grid, config.tol.params_unit), params};
}

SampledCurve<double> run_integrate(const RunConfig& config) {
    require_grid(config);
    VecX<double> p0, t0;
    if (config.has_initial_conditions()) {
        p0 = *config.initial_point;
        t0 = *config.initial_tangent;
    } else {
        // Initial conditions read off the closed form at t = 0.
        VecX<double> origin(1);
        origin(0) = 0.0;
        const SampledCurve<double> start =
            closed_form(config.dims, *config.params, origin, config.tol.params_unit);
        p0 = start.points.row(0).transpose();
        t0 = start.derivs->row(0).transpose();
    }
    const double q = config.params ? config.params->q : *config.q;
    return integrate(config.dims, q, p0, t0, *config.t_end, *config.dt,
                     config.tol.unit_tangent);
}

AnalyzeOutput run_analyze(const SampledCurve<double>& curve, std::optional<double> q,
                          const Tolerances& tol) {
    AnalyzeOutput out{classify(curve, q, tol), json::object()};
    const Classification<double>& c = out.classification;
    out.report = classification_to_json(c);
    return out;
}

json classification_to_json(const Classification<double>& c) {
    json cos_theta = json::array();
    for (Eigen::Index a = 0; a < c.slant.cos_theta.size(); ++a)
        cos_theta.push_back(c.slant.cos_theta(a));
    json out{{"case", to_string(c.curve_case)},
             {"cos_theta", cos_theta},
             {"kappa1_est", c.kappa1_est},
             {"kappa2_est", c.kappa2_est},
             {"residuals", residuals_to_json(c.residuals)}};
    out["q_inferred"] = c.q_inferred ? json(*c.q_inferred) : json(nullptr);
    return out;
}

json run_compare(const RunConfig& config) {
    require_grid(config);
    if (!config.has_initial_conditions())
        throw ConfigError("config: compare needs initial conditions, not params");

    const SampledCurve<double> numeric = run_integrate(config);
    const MagneticCurveParams<double> params = resolve_params(config);
    const SampledCurve<double> exact =
        closed_form(config.dims, params, numeric.t, config.tol.params_unit);

    const double max_distance =
        (numeric.points - exact.points).rowwise().norm().maxCoeff();
    const double max_speed_drift =
        (numeric.derivs->rowwise().norm().array() - 1.0).abs().maxCoeff();
    const SlantEstimate<double> slant = slant_profile_estimate(numeric);

    return json{{"n", config.dims.n},
                {"s", config.dims.s},
                {"q", *config.q},
                {"t_end", *config.t_end},
                {"dt", *config.dt},
                {"seed", config.seed},
                {"samples", numeric.size()},
                {"max_distance", max_distance},
                {"max_speed_drift", max_speed_drift},
                {"max_slant_drift", slant.max_drift}};
}

}  // namespace cmagnet::cli
