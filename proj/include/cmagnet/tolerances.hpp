#pragma once

namespace cmagnet {

/// Named tolerance knobs, overridable per run. Defaults: exact algebraic
/// identities get 1e-12 (headroom above double rounding); gates that sit on
/// finite-difference estimates at dt ~ 1e-3 get one decade above the
/// worst-case stencil noise.
struct Tolerances {
    double structure = 1e-12;     // residuals of the structure identities
    double unit_tangent = 1e-9;   // |T0| gate at integration / param fitting
    double unit_speed = 1e-6;     // per-sample |gamma'| gate in frame recovery
    double geodesic = 1e-7;       // kappa1 at/below this counts as geodesic
    double constant = 1e-4;       // relative drift accepted as "constant"
    double slant_drift = 1e-8;    // max deviation of eta^a(T) from its mean
    double legendre = 1e-6;       // |cos theta| at/below this counts as pi/2
    double kappa2_zero = 1e-5;    // kappa2 at/below this counts as a circle
    double frame = 1e-4;          // frame identity residual gate
    double kappa3 = 1e-4;         // kappa3 diagnostic gate
    double lorentz = 1e-4;        // |gamma'' + q phi gamma'| gate when q given
    double params_unit = 1e-8;    // sum c^2 + sum cos^2 = 1 gate
};

}  // namespace cmagnet
