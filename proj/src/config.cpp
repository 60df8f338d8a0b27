#include "cmagnet/config.hpp"

#include <cstdlib>
#include <set>
#include <string>

namespace cmagnet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config: " + message); }

void check_keys(const json& doc, const std::set<std::string>& allowed, const char* where) {
    for (const auto& item : doc.items())
        if (!allowed.count(item.key()))
            fail(std::string(where) + ": unknown key '" + item.key() + "'");
}

double require_number(const json& doc, const char* key) {
    if (!doc.contains(key)) fail(std::string("missing required key '") + key + "'");
    if (!doc[key].is_number()) fail(std::string("'") + key + "' must be a number");
    return doc[key].get<double>();
}

int require_positive_int(const json& doc, const char* key) {
    if (!doc.contains(key)) fail(std::string("missing required key '") + key + "'");
    if (!doc[key].is_number_integer() || doc[key].get<long>() < 1)
        fail(std::string("'") + key + "' must be a positive integer");
    return doc[key].get<int>();
}

VecX<double> read_vector(const json& value, Eigen::Index expected, const std::string& key) {
    if (!value.is_array()) fail("'" + key + "' must be an array of numbers");
    if (Eigen::Index(value.size()) != expected)
        fail("'" + key + "' must have length " + std::to_string(expected) + ", got " +
             std::to_string(value.size()));
    VecX<double> out(expected);
    Eigen::Index i = 0;
    for (const auto& entry : value) {
        if (!entry.is_number()) fail("'" + key + "' must contain only numbers");
        out(i++) = entry.get<double>();
    }
    return out;
}

json vector_to_json(const VecX<double>& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace

MagneticCurveParams<double> params_from_json(const StructureDims& dims, const json& doc) {
    if (!doc.is_object()) fail("'params' must be an object");
    check_keys(doc, {"q", "c", "d", "b", "h", "cos_theta"}, "params");
    for (const char* key : {"q", "c", "d", "b", "h", "cos_theta"})
        if (!doc.contains(key)) fail(std::string("params: missing key '") + key + "'");

    MagneticCurveParams<double> params;
    if (!doc["q"].is_number()) fail("params: 'q' must be a number");
    params.q = doc["q"].get<double>();
    params.c = read_vector(doc["c"], dims.n, "params.c");
    params.d = read_vector(doc["d"], dims.n, "params.d");
    params.b = read_vector(doc["b"], 2 * dims.n, "params.b");
    params.h = read_vector(doc["h"], dims.s, "params.h");
    params.slant.cos_theta = read_vector(doc["cos_theta"], dims.s, "params.cos_theta");
    return params;
}

json params_to_json(const StructureDims& dims, const MagneticCurveParams<double>& params) {
    return json{{"n", dims.n},
                {"s", dims.s},
                {"q", params.q},
                {"c", vector_to_json(params.c)},
                {"d", vector_to_json(params.d)},
                {"b", vector_to_json(params.b)},
                {"h", vector_to_json(params.h)},
                {"cos_theta", vector_to_json(params.slant.cos_theta)}};
}

json tolerances_to_json(const Tolerances& tol) {
    return json{{"structure", tol.structure},     {"unit_tangent", tol.unit_tangent},
                {"unit_speed", tol.unit_speed},   {"geodesic", tol.geodesic},
                {"constant", tol.constant},       {"slant_drift", tol.slant_drift},
                {"legendre", tol.legendre},       {"kappa2_zero", tol.kappa2_zero},
                {"frame", tol.frame},             {"kappa3", tol.kappa3},
                {"lorentz", tol.lorentz},         {"params_unit", tol.params_unit}};
}

void apply_tolerance_overrides(Tolerances& tol, const json& overrides) {
    if (!overrides.is_object()) fail("'tolerances' must be an object");
    const auto set = [&](const char* key, double& field) {
        if (!overrides.contains(key)) return;
        if (!overrides[key].is_number() || !(overrides[key].get<double>() > 0))
            fail(std::string("tolerances: '") + key + "' must be a positive number");
        field = overrides[key].get<double>();
    };
    check_keys(overrides,
               {"structure", "unit_tangent", "unit_speed", "geodesic", "constant", "slant_drift",
                "legendre", "kappa2_zero", "frame", "kappa3", "lorentz", "params_unit"},
               "tolerances");
    set("structure", tol.structure);
    set("unit_tangent", tol.unit_tangent);
    set("unit_speed", tol.unit_speed);
    set("geodesic", tol.geodesic);
    set("constant", tol.constant);
    set("slant_drift", tol.slant_drift);
    set("legendre", tol.legendre);
    set("kappa2_zero", tol.kappa2_zero);
    set("frame", tol.frame);
    set("kappa3", tol.kappa3);
    set("lorentz", tol.lorentz);
    set("params_unit", tol.params_unit);
}

RunConfig parse_run_config(const json& doc) {
    if (!doc.is_object()) fail("document must be a JSON object");
    check_keys(doc,
               {"n", "s", "q", "initial_point", "initial_tangent", "params", "t_end", "dt",
                "seed", "tolerances"},
               "config");

    RunConfig config;
    config.dims = StructureDims(require_positive_int(doc, "n"), require_positive_int(doc, "s"));
    if (doc.contains("tolerances")) apply_tolerance_overrides(config.tol, doc["tolerances"]);

    const bool has_point = doc.contains("initial_point");
    const bool has_tangent = doc.contains("initial_tangent");
    const bool has_params = doc.contains("params");
    if (has_point != has_tangent)
        fail("initial_point and initial_tangent must be given together");
    if (has_params == has_point)
        fail("exactly one of (initial_point, initial_tangent) or params must be present");

    if (has_point) {
        config.initial_point =
            read_vector(doc["initial_point"], config.dims.dim(), "initial_point");
        config.initial_tangent =
            read_vector(doc["initial_tangent"], config.dims.dim(), "initial_tangent");
        config.q = require_number(doc, "q");
        if (*config.q == 0.0) fail("'q' must be nonzero");
    } else {
        try {
            config.params = params_from_json(config.dims, doc["params"]);
            config.params->validate(config.dims, config.tol.params_unit);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (doc.contains("q") && doc["q"].get<double>() != config.params->q)
            fail("top-level 'q' conflicts with params.q");
    }

    if (doc.contains("t_end")) {
        config.t_end = require_number(doc, "t_end");
        if (!(*config.t_end > 0)) fail("'t_end' must be positive");
    }
    if (doc.contains("dt")) {
        config.dt = require_number(doc, "dt");
        if (!(*config.dt > 0)) fail("'dt' must be positive");
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer()) fail("'seed' must be an integer");
        config.seed = doc["seed"].get<long>();
    } else if (const char* env = std::getenv("CMAGNET_SEED")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end == env || *end != '\0') fail("CMAGNET_SEED is not an integer");
        config.seed = value;
    }
    return config;
}

}  // namespace cmagnet
