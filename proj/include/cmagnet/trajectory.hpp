#pragma once

// Normal magnetic curves for the contact magnetic field F_q = q Omega.
//
// The Lorentz force of F_q is -q phi, so a unit-speed trajectory solves
// gamma'' = -q phi gamma'. Two independent routes produce such curves: a
// fixed-step RK4 integration of that ODE, and direct evaluation of the
// closed-form parametrization
//     gamma_i     = (c_i/q) sin(q t + d_i) + b_i,
//     gamma_{n+i} = (-c_i/q) cos(q t + d_i) + b_{n+i},
//     gamma_{2n+a} = cos(theta_a) t + h_a.
// params_from_initial_conditions converts (p0, T0) into the closed-form
// constants, so the two routes can be cross-checked against each other.

#include "cmagnet/structure.hpp"

#include <cmath>
#include <optional>

namespace cmagnet {

/// The s constant contact angles theta_a, stored as cos(theta_a).
template <typename Scalar>
struct SlantProfile {
    VecX<Scalar> cos_theta;

    Scalar squared_norm() const { return cos_theta.squaredNorm(); }

    /// Enforces |cos theta_a| <= 1 and the slant inequality
    /// sum cos^2 theta_a <= 1 (equality is the geodesic boundary case).
    void validate(double tol = 1e-8) const {
        if (cos_theta.size() < 1)
            throw std::invalid_argument("SlantProfile: needs at least one angle");
        if ((cos_theta.array().abs() > Scalar(1) + Scalar(tol)).any())
            throw std::invalid_argument("SlantProfile: |cos theta| must be <= 1");
        if (squared_norm() > Scalar(1) + Scalar(tol))
            throw std::invalid_argument(
                "SlantProfile: sum of cos^2 theta exceeds 1 (slant inequality)");
    }
};

/// Closed-form constants of a normal magnetic curve. The amplitudes and
/// contact angles carry the unit-speed normalization
/// sum c_i^2 + sum cos^2 theta_a = 1.
template <typename Scalar>
struct MagneticCurveParams {
    Scalar q = Scalar(1);    // charge, nonzero
    VecX<Scalar> c;          // amplitudes c_i >= 0, size n
    VecX<Scalar> d;          // phases d_i (radians), size n
    VecX<Scalar> b;          // offsets b_1..b_n, b_{n+1}..b_{2n}, size 2n
    VecX<Scalar> h;          // z offsets h_a, size s
    SlantProfile<Scalar> slant;

    void validate(const StructureDims& dims, double tol = 1e-8) const {
        if (q == Scalar(0))
            throw std::invalid_argument("MagneticCurveParams: charge q must be nonzero");
        if (c.size() != dims.n || d.size() != dims.n || b.size() != 2 * dims.n ||
            h.size() != dims.s || slant.cos_theta.size() != dims.s)
            throw std::invalid_argument("MagneticCurveParams: array sizes do not match dims");
        if ((c.array() < Scalar(0)).any())
            throw std::invalid_argument("MagneticCurveParams: amplitudes c_i must be >= 0");
        slant.validate(tol);
        const Scalar speed_sq = c.squaredNorm() + slant.squared_norm();
        if (std::abs(static_cast<double>(speed_sq) - 1.0) > tol)
            throw std::invalid_argument(
                "MagneticCurveParams: sum c_i^2 + sum cos^2 theta_a must equal 1 "
                "(unit-speed normalization)");
    }
};

/// Arc-length samples (t_k, gamma(t_k)) of a curve in R^{2n+s}, one row per
/// sample. Derivative rows, when present, are analytic (closed_form fills
/// orders 1..3, the integrator stores the exact RK4 tangent state).
template <typename Scalar>
struct SampledCurve {
    StructureDims dims{1, 1};
    VecX<Scalar> t;                          // strictly increasing
    MatX<Scalar> points;                     // size() x dims.dim()
    std::optional<MatX<Scalar>> derivs;      // gamma'
    std::optional<MatX<Scalar>> derivs2;     // gamma''
    std::optional<MatX<Scalar>> derivs3;     // gamma'''

    Eigen::Index size() const { return t.size(); }
};

/// Right-hand side of the Lorentz equation: gamma'' = -q phi gamma'.
/// Componentwise: out_i = -q v_{n+i}, out_{n+i} = q v_i, out_z = 0.
template <typename Derived>
VecX<typename Derived::Scalar> lorentz_rhs(const StructureDims& dims,
                                           typename Derived::Scalar q,
                                           const Eigen::MatrixBase<Derived>& tangent) {
    detail::check_dim(dims, tangent.size(), "lorentz_rhs");
    return -q * phi_apply(dims, tangent);
}

namespace detail {

template <typename Scalar>
void check_unit_tangent(const VecX<Scalar>& T0, double tol, const char* where) {
    const double norm = static_cast<double>(T0.norm());
    if (std::abs(norm - 1.0) > tol)
        throw std::invalid_argument(std::string(where) + ": initial tangent must be unit "
                                    "(|T0| = " + std::to_string(norm) +
                                    "); renormalize explicitly at the call site");
}

}  // namespace detail

/// Sample grid 0, dt, 2 dt, ..., t_end. When t_end is not a multiple of dt the
/// final point is appended with a shortened last interval; when t_end/dt lands
/// on an integer to within 1e-9 the grid stays exactly uniform.
template <typename Scalar>
VecX<Scalar> uniform_grid(Scalar t_end, Scalar dt) {
    if (!(dt > Scalar(0)) || !(t_end > Scalar(0)))
        throw std::invalid_argument("uniform_grid: dt and t_end must be positive");
    if (static_cast<double>(dt) > static_cast<double>(t_end) * (1.0 + 1e-12))
        throw std::invalid_argument("uniform_grid: dt must not exceed t_end");

    const double ratio = static_cast<double>(t_end) / static_cast<double>(dt);
    auto n_full = static_cast<Eigen::Index>(std::floor(ratio));
    if (ratio - static_cast<double>(n_full) > 1.0 - 1e-9) ++n_full;

    const bool partial_tail =
        static_cast<double>(t_end) - static_cast<double>(n_full) * static_cast<double>(dt) >
        1e-9 * static_cast<double>(dt);
    VecX<Scalar> t(n_full + 1 + (partial_tail ? 1 : 0));
    for (Eigen::Index k = 0; k <= n_full; ++k) t(k) = static_cast<Scalar>(k) * dt;
    if (partial_tail) t(n_full + 1) = t_end;
    return t;
}

/// Integrates (gamma, T)' = (T, -q phi T) with classical fixed-step RK4 and
/// returns samples on uniform_grid(t_end, dt); `derivs` holds the RK4 tangent
/// state. The initial tangent must already be unit: a non-unit T0 is rejected
/// rather than silently renormalized.
template <typename Scalar>
SampledCurve<Scalar> integrate(const StructureDims& dims, Scalar q, const VecX<Scalar>& p0,
                               const VecX<Scalar>& T0, Scalar t_end, Scalar dt,
                               double unit_tol = 1e-9) {
    detail::check_dim(dims, p0.size(), "integrate");
    detail::check_dim(dims, T0.size(), "integrate");
    detail::check_unit_tangent(T0, unit_tol, "integrate");
    if (q == Scalar(0))
        throw std::invalid_argument("integrate: charge q must be nonzero "
                                    "(phi T0 = 0 already reproduces the geodesic case)");

    SampledCurve<Scalar> curve;
    curve.dims = dims;
    curve.t = uniform_grid(t_end, dt);
    const Eigen::Index n_samples = curve.t.size();
    const int dim = dims.dim();
    const int n = dims.n;
    curve.points.resize(n_samples, dim);
    MatX<Scalar> derivs(n_samples, dim);

    VecX<Scalar> gamma = p0;
    VecX<Scalar> T = T0;
    // Stage buffers; the z-block of -q phi(.) is identically zero, so it is
    // set once and never touched in the loop.
    VecX<Scalar> k1 = VecX<Scalar>::Zero(dim), k2 = k1, k3 = k1, k4 = k1;
    VecX<Scalar> tmp(dim);

    auto lorentz_into = [&](const VecX<Scalar>& tangent, VecX<Scalar>& out) {
        out.head(n) = -q * tangent.segment(n, n);
        out.segment(n, n) = q * tangent.head(n);
    };

    curve.points.row(0) = gamma.transpose();
    derivs.row(0) = T.transpose();
    for (Eigen::Index k = 0; k + 1 < n_samples; ++k) {
        const Scalar h = curve.t(k + 1) - curve.t(k);
        lorentz_into(T, k1);
        tmp = T + (h / Scalar(2)) * k1;
        lorentz_into(tmp, k2);
        tmp = T + (h / Scalar(2)) * k2;
        lorentz_into(tmp, k3);
        tmp = T + h * k3;
        lorentz_into(tmp, k4);
        // gamma' = T: the position stages are T, T + (h/2)k1, T + (h/2)k2, T + h k3.
        gamma += (h / Scalar(6)) * (Scalar(6) * T + h * (k1 + k2 + k3));
        T += (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
        curve.points.row(k + 1) = gamma.transpose();
        derivs.row(k + 1) = T.transpose();
    }
    curve.derivs = std::move(derivs);
    return curve;
}

/// Evaluates the closed-form parametrization on t_grid, storing analytic
/// derivatives up to third order (the frame reconstruction consumes them).
template <typename Scalar>
SampledCurve<Scalar> closed_form(const StructureDims& dims,
                                 const MagneticCurveParams<Scalar>& params,
                                 const VecX<Scalar>& t_grid, double params_tol = 1e-8) {
    params.validate(dims, params_tol);
    if (t_grid.size() < 1)
        throw std::invalid_argument("closed_form: t_grid must be nonempty");
    for (Eigen::Index k = 1; k < t_grid.size(); ++k)
        if (!(t_grid(k) > t_grid(k - 1)))
            throw std::invalid_argument("closed_form: t_grid must be strictly increasing");

    using std::cos;
    using std::sin;
    const int n = dims.n;
    const Scalar q = params.q;

    SampledCurve<Scalar> curve;
    curve.dims = dims;
    curve.t = t_grid;
    const Eigen::Index n_samples = t_grid.size();
    curve.points.resize(n_samples, dims.dim());
    MatX<Scalar> d1(n_samples, dims.dim());
    MatX<Scalar> d2 = MatX<Scalar>::Zero(n_samples, dims.dim());
    MatX<Scalar> d3 = MatX<Scalar>::Zero(n_samples, dims.dim());

    for (Eigen::Index k = 0; k < n_samples; ++k) {
        const Scalar t = t_grid(k);
        for (int i = 0; i < n; ++i) {
            const Scalar f = q * t + params.d(i);
            const Scalar cf = cos(f), sf = sin(f);
            const Scalar ci = params.c(i);
            curve.points(k, i) = ci / q * sf + params.b(i);
            curve.points(k, n + i) = -ci / q * cf + params.b(n + i);
            d1(k, i) = ci * cf;
            d1(k, n + i) = ci * sf;
            d2(k, i) = -q * ci * sf;
            d2(k, n + i) = q * ci * cf;
            d3(k, i) = -q * q * ci * cf;
            d3(k, n + i) = -q * q * ci * sf;
        }
        for (int a = 0; a < dims.s; ++a) {
            curve.points(k, 2 * n + a) = params.slant.cos_theta(a) * t + params.h(a);
            d1(k, 2 * n + a) = params.slant.cos_theta(a);
        }
    }
    curve.derivs = std::move(d1);
    curve.derivs2 = std::move(d2);
    curve.derivs3 = std::move(d3);
    return curve;
}

/// Solves the closed-form constants from initial conditions:
///   c_i = |(T0_i, T0_{n+i})|, d_i = atan2(T0_{n+i}, T0_i)  (0 when c_i = 0),
///   cos theta_a = T0_{2n+a}, b and h shift the curve through p0.
/// Round trip: closed_form(params) at t = 0 reproduces (p0, T0) to 1e-12.
template <typename Scalar>
MagneticCurveParams<Scalar> params_from_initial_conditions(const StructureDims& dims, Scalar q,
                                                           const VecX<Scalar>& p0,
                                                           const VecX<Scalar>& T0,
                                                           double unit_tol = 1e-9) {
    detail::check_dim(dims, p0.size(), "params_from_initial_conditions");
    detail::check_dim(dims, T0.size(), "params_from_initial_conditions");
    detail::check_unit_tangent(T0, unit_tol, "params_from_initial_conditions");
    if (q == Scalar(0))
        throw std::invalid_argument("params_from_initial_conditions: charge q must be nonzero");

    using std::atan2;
    using std::cos;
    using std::hypot;
    using std::sin;
    const int n = dims.n;

    MagneticCurveParams<Scalar> params;
    params.q = q;
    params.c.resize(n);
    params.d.resize(n);
    params.b.resize(2 * n);
    params.h = p0.tail(dims.s);
    params.slant.cos_theta = T0.tail(dims.s);
    for (int i = 0; i < n; ++i) {
        params.c(i) = hypot(T0(i), T0(n + i));
        // Any phase works for a zero amplitude; zero is canonical.
        params.d(i) = params.c(i) > Scalar(0) ? atan2(T0(n + i), T0(i)) : Scalar(0);
        params.b(i) = p0(i) - params.c(i) / q * sin(params.d(i));
        params.b(n + i) = p0(n + i) + params.c(i) / q * cos(params.d(i));
    }
    return params;
}

}  // namespace cmagnet
