#pragma once

// Frenet apparatus reconstruction and normal-magnetic-curve classification.
//
// For a unit-speed curve in the flat model, covariant derivatives along the
// curve are plain t-derivatives, so the frame comes out of gamma', gamma'',
// gamma''': kappa1 = |gamma''|, v2 = gamma''/kappa1, and kappa2 v3 is the
// Frenet remainder v2' + kappa1 T. A normal magnetic curve must be one of
//   (i)   a geodesic integral curve of +-sum cos(theta_a) xi_a,
//   (ii)  a Legendre circle with kappa1 = |q| and v2 = -sgn(q) phi T,
//   (iii) a slant helix with kappa1 = |q| sqrt(1 - S), kappa2 = |q| sqrt(S),
//         S = sum cos^2 theta_a, and kappa3 = 0,
// which is what classify() decides, and what the frame identity checks and
// charge recovery quantify.

#include "cmagnet/structure.hpp"
#include "cmagnet/tolerances.hpp"
#include "cmagnet/trajectory.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace cmagnet {

namespace detail {

template <typename Scalar>
bool is_uniform_grid(const VecX<Scalar>& t, double rel_tol = 1e-6) {
    if (t.size() < 2) return false;
    const double h =
        static_cast<double>(t(t.size() - 1) - t(0)) / static_cast<double>(t.size() - 1);
    if (!(h > 0)) return false;
    for (Eigen::Index k = 0; k + 1 < t.size(); ++k)
        if (std::abs(static_cast<double>(t(k + 1) - t(k)) - h) > rel_tol * h) return false;
    return true;
}

// Row-wise d^order/dt^order with second-order-accurate stencils: central in
// the interior, one-sided near the boundary. Direct stencils per order (not
// cascaded first derivatives): cascading through rows that already carry
// stencil-switch error jumps would amplify them by 1/h at the ends.
template <typename Scalar>
MatX<Scalar> differentiate_rows(const VecX<Scalar>& t, const MatX<Scalar>& f, int order) {
    const Eigen::Index m = f.rows();
    const Scalar h = (t(m - 1) - t(0)) / static_cast<Scalar>(m - 1);
    MatX<Scalar> out(m, f.cols());
    if (order == 1) {
        const Scalar s = Scalar(2) * h;
        out.row(0) = (Scalar(-3) * f.row(0) + Scalar(4) * f.row(1) - f.row(2)) / s;
        for (Eigen::Index k = 1; k + 1 < m; ++k) out.row(k) = (f.row(k + 1) - f.row(k - 1)) / s;
        out.row(m - 1) =
            (Scalar(3) * f.row(m - 1) - Scalar(4) * f.row(m - 2) + f.row(m - 3)) / s;
    } else if (order == 2) {
        const Scalar s = h * h;
        out.row(0) = (Scalar(2) * f.row(0) - Scalar(5) * f.row(1) + Scalar(4) * f.row(2) -
                      f.row(3)) /
                     s;
        for (Eigen::Index k = 1; k + 1 < m; ++k)
            out.row(k) = (f.row(k - 1) - Scalar(2) * f.row(k) + f.row(k + 1)) / s;
        out.row(m - 1) = (Scalar(2) * f.row(m - 1) - Scalar(5) * f.row(m - 2) +
                          Scalar(4) * f.row(m - 3) - f.row(m - 4)) /
                         s;
    } else {
        const Scalar s = h * h * h;
        out.row(0) = (Scalar(-2.5) * f.row(0) + Scalar(9) * f.row(1) - Scalar(12) * f.row(2) +
                      Scalar(7) * f.row(3) - Scalar(1.5) * f.row(4)) /
                     s;
        out.row(1) = (Scalar(-1.5) * f.row(0) + Scalar(5) * f.row(1) - Scalar(6) * f.row(2) +
                      Scalar(3) * f.row(3) - Scalar(0.5) * f.row(4)) /
                     s;
        for (Eigen::Index k = 2; k + 2 < m; ++k)
            out.row(k) = (f.row(k + 2) - Scalar(2) * f.row(k + 1) + Scalar(2) * f.row(k - 1) -
                          f.row(k - 2)) /
                         (Scalar(2) * s);
        out.row(m - 2) = (Scalar(0.5) * f.row(m - 5) - Scalar(3) * f.row(m - 4) +
                          Scalar(6) * f.row(m - 3) - Scalar(5) * f.row(m - 2) +
                          Scalar(1.5) * f.row(m - 1)) /
                         s;
        out.row(m - 1) = (Scalar(1.5) * f.row(m - 5) - Scalar(7) * f.row(m - 4) +
                          Scalar(12) * f.row(m - 3) - Scalar(9) * f.row(m - 2) +
                          Scalar(2.5) * f.row(m - 1)) /
                         s;
    }
    return out;
}

}  // namespace detail

template <typename Scalar>
struct CurveDerivatives {
    MatX<Scalar> d1, d2, d3;  // rows per sample; d2/d3 empty above max_order
    int max_order = 0;
};

/// Derivative rows of orders 1..max_order. Stored analytic derivatives are
/// used where present; each missing order is produced by a direct
/// second-order stencil applied to the highest stored source, which requires
/// a uniform grid and at least 7 samples.
template <typename Scalar>
CurveDerivatives<Scalar> derivatives_numeric(const SampledCurve<Scalar>& curve,
                                             int max_order = 3) {
    if (max_order < 1 || max_order > 3)
        throw std::invalid_argument("derivatives_numeric: max_order must be in {1,2,3}");
    if (curve.size() < 7)
        throw std::invalid_argument("derivatives_numeric: need at least 7 samples");
    const bool need_fd = !curve.derivs || (max_order >= 2 && !curve.derivs2) ||
                         (max_order >= 3 && !curve.derivs3);
    if (need_fd && !detail::is_uniform_grid(curve.t))
        throw std::invalid_argument("derivatives_numeric: grid must be uniform");

    CurveDerivatives<Scalar> out;
    out.max_order = max_order;
    out.d1 = curve.derivs ? *curve.derivs
                          : detail::differentiate_rows(curve.t, curve.points, 1);
    if (max_order >= 2)
        out.d2 = curve.derivs2 ? *curve.derivs2
                 : curve.derivs ? detail::differentiate_rows(curve.t, *curve.derivs, 1)
                                : detail::differentiate_rows(curve.t, curve.points, 2);
    if (max_order >= 3)
        out.d3 = curve.derivs3  ? *curve.derivs3
                 : curve.derivs2 ? detail::differentiate_rows(curve.t, *curve.derivs2, 1)
                 : curve.derivs  ? detail::differentiate_rows(curve.t, *curve.derivs, 2)
                                 : detail::differentiate_rows(curve.t, curve.points, 3);
    return out;
}

struct FrenetOptions {
    double tol_geodesic = 1e-7;  // kappa1 cutoff: below it the order drops to 1
    double unit_speed = 1e-6;    // per-sample |gamma'| gate
    double kappa2_floor = 1e-5;  // kappa2 cutoff: below it the order stays 2
};

template <typename Scalar>
struct FrenetApparatus {
    int order_r = 1;               // max osculating order across samples
    Eigen::VectorXi sample_order;  // per-sample order in {1,2,3}
    MatX<Scalar> T, v2, v3;        // orthonormal frame rows (zero where undefined)
    VecX<Scalar> kappa1;           // |gamma''|
    VecX<Scalar> kappa2;           // |v2' + kappa1 T| (0 where order < 2)
    VecX<Scalar> kappa3;           // diagnostic |v3' + kappa2 v2|, see below
};

/// Reconstructs frames and curvatures per sample. Curvatures come from the
/// raw derivative rows; the stored frame is Gram-Schmidt re-orthonormalized
/// sample by sample, with v2's sign fixed by gamma'' and no smoothing across
/// samples.
///
/// kappa3 is the only quantity that needs a t-derivative of a frame field;
/// it is evaluated with central differences on v3 over the window [2, m-3]
/// when every sample has order 3 on a uniform grid, and left at zero in the
/// two edge rows on each side, where one-sided differencing of renormalized
/// frame vectors amplifies their boundary-stencil noise above the quantity
/// being measured.
template <typename Scalar>
FrenetApparatus<Scalar> frenet_apparatus(const SampledCurve<Scalar>& curve,
                                         const CurveDerivatives<Scalar>& derivs,
                                         const FrenetOptions& opts = {}) {
    if (derivs.max_order < 3 || derivs.d1.rows() != curve.size())
        throw std::invalid_argument("frenet_apparatus: derivatives up to order 3 required");
    const Eigen::Index m = curve.size();

    FrenetApparatus<Scalar> app;
    app.sample_order.setOnes(m);
    app.T.resize(m, curve.dims.dim());
    app.v2 = MatX<Scalar>::Zero(m, curve.dims.dim());
    app.v3 = MatX<Scalar>::Zero(m, curve.dims.dim());
    app.kappa1.resize(m);
    app.kappa2 = VecX<Scalar>::Zero(m);
    app.kappa3 = VecX<Scalar>::Zero(m);

    for (Eigen::Index k = 0; k < m; ++k) {
        const Scalar speed = derivs.d1.row(k).norm();
        if (std::abs(static_cast<double>(speed) - 1.0) > opts.unit_speed)
            throw std::invalid_argument("frenet_apparatus: curve is not unit-speed (|gamma'| = " +
                                        std::to_string(static_cast<double>(speed)) +
                                        " at sample " + std::to_string(k) + ")");
        app.T.row(k) = derivs.d1.row(k) / speed;

        const Scalar kappa1 = derivs.d2.row(k).norm();
        app.kappa1(k) = kappa1;
        if (static_cast<double>(kappa1) <= opts.tol_geodesic) continue;

        app.sample_order(k) = 2;
        // v2' via the quotient rule on gamma''/|gamma''|, then the Frenet
        // remainder w = v2' + kappa1 T = kappa2 v3.
        const Scalar a_dot_j = derivs.d2.row(k).dot(derivs.d3.row(k));
        const VecX<Scalar> v2_dot = (derivs.d3.row(k) / kappa1 -
                                     derivs.d2.row(k) * (a_dot_j / (kappa1 * kappa1 * kappa1)))
                                        .transpose();
        const VecX<Scalar> w = v2_dot + kappa1 * app.T.row(k).transpose();
        const Scalar kappa2 = w.norm();
        app.kappa2(k) = kappa2;

        VecX<Scalar> v2 = derivs.d2.row(k).transpose() / kappa1;
        v2 -= v2.dot(app.T.row(k).transpose()) * app.T.row(k).transpose();
        v2.normalize();
        app.v2.row(k) = v2.transpose();

        if (static_cast<double>(kappa2) <= opts.kappa2_floor) continue;
        VecX<Scalar> v3 = w;
        v3 -= v3.dot(app.T.row(k).transpose()) * app.T.row(k).transpose();
        v3 -= v3.dot(v2) * v2;
        const Scalar v3_norm = v3.norm();
        if (!(v3_norm > Scalar(0))) continue;
        app.v3.row(k) = v3.transpose() / v3_norm;
        app.sample_order(k) = 3;
    }
    app.order_r = app.sample_order.maxCoeff();

    if ((app.sample_order.array() == 3).all() && m >= 7 && detail::is_uniform_grid(curve.t)) {
        const Scalar h = (curve.t(m - 1) - curve.t(0)) / static_cast<Scalar>(m - 1);
        for (Eigen::Index k = 2; k + 3 < m; ++k) {
            const VecX<Scalar> v3_dot =
                (app.v3.row(k + 1) - app.v3.row(k - 1)).transpose() / (Scalar(2) * h);
            app.kappa3(k) = (v3_dot + app.kappa2(k) * app.v2.row(k).transpose()).norm();
        }
    } else if (app.order_r == 3) {
        app.kappa3.setConstant(std::numeric_limits<Scalar>::quiet_NaN());
    }
    return app;
}

template <typename Scalar>
struct SlantEstimate {
    SlantProfile<Scalar> profile;  // per-alpha mean of eta^a(gamma')
    double max_drift = 0.0;        // max |eta^a(gamma') - mean| over samples and alpha
};

/// Estimates the contact angles from the z-block of gamma'. A curve is
/// theta_a-slant precisely when max_drift stays at tolerance level.
template <typename Scalar>
SlantEstimate<Scalar> slant_profile_estimate(const SampledCurve<Scalar>& curve) {
    const MatX<Scalar> d1 = derivatives_numeric(curve, 1).d1;
    SlantEstimate<Scalar> est;
    est.profile.cos_theta.resize(curve.dims.s);
    for (int a = 0; a < curve.dims.s; ++a) {
        const auto col = d1.col(2 * curve.dims.n + a);
        const Scalar mean = col.mean();
        est.profile.cos_theta(a) = mean;
        est.max_drift =
            std::max(est.max_drift, static_cast<double>((col.array() - mean).abs().maxCoeff()));
    }
    return est;
}

/// Curvatures a normal magnetic curve of charge q with the given contact
/// angles must have: kappa1 = |q| sqrt(1 - S), kappa2 = |q| sqrt(S).
template <typename Scalar>
std::pair<Scalar, Scalar> predicted_curvatures(Scalar q, const SlantProfile<Scalar>& slant) {
    using std::sqrt;
    if (q == Scalar(0))
        throw std::invalid_argument("predicted_curvatures: charge q must be nonzero");
    slant.validate();
    const Scalar sum_sq = slant.squared_norm();
    const Scalar abs_q = std::abs(q);
    return {abs_q * sqrt(std::max(Scalar(0), Scalar(1) - sum_sq)), abs_q * sqrt(sum_sq)};
}

struct FrameIdentityReport {
    double v2_residual = std::numeric_limits<double>::quiet_NaN();
    double v3_residual = std::numeric_limits<double>::quiet_NaN();  // NaN when order < 3
    double kappa3_max = std::numeric_limits<double>::quiet_NaN();
};

/// Residuals of the closed-form frame expressions
///   v2 = -sgn(q) phi T / sqrt(1 - S),
///   v3 = (sum cos(theta_a) xi_a - S T) / (sqrt(S) sqrt(1 - S)),
/// maximized over samples, plus the kappa3 magnitude. Only meaningful for
/// curves in cases (ii)/(iii); the v3 row is skipped for Legendre circles
/// unless require_order3 forces an error there.
template <typename Scalar>
FrameIdentityReport verify_frame_identities(const SampledCurve<Scalar>& curve, Scalar q,
                                            const FrenetApparatus<Scalar>& apparatus,
                                            bool require_order3 = false,
                                            double legendre_tol = 1e-6) {
    using std::sqrt;
    if (q == Scalar(0))
        throw std::invalid_argument("verify_frame_identities: charge q must be nonzero");
    const SlantEstimate<Scalar> slant = slant_profile_estimate(curve);
    const Scalar sum_sq = slant.profile.squared_norm();
    if (static_cast<double>(sum_sq) >= 1.0 - 1e-9)
        throw std::invalid_argument(
            "verify_frame_identities: sum cos^2 theta = 1 is the geodesic case; no frame to "
            "check");
    const bool legendre = static_cast<double>(sum_sq) <=
                          legendre_tol * legendre_tol * static_cast<double>(curve.dims.s);
    if (require_order3 && (legendre || apparatus.order_r < 3))
        throw std::invalid_argument(
            "verify_frame_identities: v3 undefined (kappa2 = 0 on a Legendre circle)");

    const Scalar sgn = q > Scalar(0) ? Scalar(1) : Scalar(-1);
    const Scalar horiz_norm = sqrt(Scalar(1) - sum_sq);
    VecX<Scalar> xi_sum = VecX<Scalar>::Zero(curve.dims.dim());
    xi_sum.tail(curve.dims.s) = slant.profile.cos_theta;

    FrameIdentityReport report;
    report.v2_residual = 0.0;
    const bool check_v3 = !legendre && apparatus.order_r == 3;
    if (check_v3) report.v3_residual = 0.0;
    const Scalar v3_scale = check_v3 ? Scalar(sqrt(sum_sq) * horiz_norm) : Scalar(1);

    Eigen::Index checked = 0;
    for (Eigen::Index k = 0; k < curve.size(); ++k) {
        if (apparatus.sample_order(k) < 2) continue;
        ++checked;
        const VecX<Scalar> phi_T = phi_apply(curve.dims, apparatus.T.row(k).transpose());
        report.v2_residual = std::max(
            report.v2_residual,
            static_cast<double>(
                (apparatus.v2.row(k).transpose() + sgn * phi_T / horiz_norm).norm()));
        if (check_v3 && apparatus.sample_order(k) == 3) {
            const VecX<Scalar> v3_ref =
                (xi_sum - sum_sq * apparatus.T.row(k).transpose()) / v3_scale;
            report.v3_residual =
                std::max(report.v3_residual,
                         static_cast<double>((apparatus.v3.row(k).transpose() - v3_ref).norm()));
        }
    }
    if (checked == 0)
        throw std::invalid_argument(
            "verify_frame_identities: curve has no samples of osculating order >= 2");
    if (apparatus.order_r < 3)
        report.kappa3_max = 0.0;
    else if (apparatus.kappa3.allFinite())
        report.kappa3_max = static_cast<double>(apparatus.kappa3.maxCoeff());
    return report;
}

enum class CurveCase {
    GeodesicIntegralCurve,
    LegendreCircle,
    SlantHelix,
    NotNormalMagnetic,
};

inline const char* to_string(CurveCase c) {
    switch (c) {
        case CurveCase::GeodesicIntegralCurve: return "geodesic_integral_curve";
        case CurveCase::LegendreCircle: return "legendre_circle";
        case CurveCase::SlantHelix: return "slant_helix";
        case CurveCase::NotNormalMagnetic: return "not_normal_magnetic";
    }
    return "unknown";
}

/// Max-deviation diagnostics backing a classification; NaN marks a check that
/// did not apply to the decided case.
struct ResidualReport {
    double speed_drift = std::numeric_limits<double>::quiet_NaN();
    double slant_drift = std::numeric_limits<double>::quiet_NaN();
    double kappa1_drift = std::numeric_limits<double>::quiet_NaN();
    double kappa2_drift = std::numeric_limits<double>::quiet_NaN();
    double kappa2_max = std::numeric_limits<double>::quiet_NaN();
    double kappa3_max = std::numeric_limits<double>::quiet_NaN();
    double frame_v2 = std::numeric_limits<double>::quiet_NaN();
    double frame_v3 = std::numeric_limits<double>::quiet_NaN();
    double lorentz = std::numeric_limits<double>::quiet_NaN();
    double horizontal_tangent = std::numeric_limits<double>::quiet_NaN();
};

template <typename Scalar>
struct Classification {
    CurveCase curve_case = CurveCase::NotNormalMagnetic;
    SlantProfile<Scalar> slant;
    Scalar kappa1_est = Scalar(0);
    Scalar kappa2_est = Scalar(0);
    std::optional<Scalar> q_inferred;  // absent for case (i) and negatives
    ResidualReport residuals;
};

namespace detail {

template <typename Scalar>
double relative_drift(const VecX<Scalar>& values) {
    const double lo = static_cast<double>(values.minCoeff());
    const double hi = static_cast<double>(values.maxCoeff());
    return (hi - lo) / std::max(std::abs(hi), 1e-300);
}

}  // namespace detail

/// Decides the trichotomy for a unit-speed sampled curve. Curvature values
/// alone are not enough (a non-phi-invariant helix can match them), so the
/// positive branches also require the frame identities, and the Lorentz
/// residual when a charge is supplied. The inferred charge's sign comes from
/// v2 = -sgn(q) phi T / |phi T|.
template <typename Scalar>
Classification<Scalar> classify(const SampledCurve<Scalar>& curve,
                                std::optional<Scalar> q = std::nullopt,
                                const Tolerances& tol = {}) {
    const CurveDerivatives<Scalar> derivs = derivatives_numeric(curve, 3);
    FrenetOptions opts;
    opts.tol_geodesic = tol.geodesic;
    opts.unit_speed = tol.unit_speed;
    opts.kappa2_floor = tol.kappa2_zero;
    const FrenetApparatus<Scalar> app = frenet_apparatus(curve, derivs, opts);
    const SlantEstimate<Scalar> slant = slant_profile_estimate(curve);

    Classification<Scalar> result;
    result.slant = slant.profile;
    result.kappa1_est = app.kappa1.mean();
    result.kappa2_est = app.kappa2.mean();

    ResidualReport& res = result.residuals;
    res.speed_drift =
        static_cast<double>((derivs.d1.rowwise().norm().array() - Scalar(1)).abs().maxCoeff());
    res.slant_drift = slant.max_drift;
    res.kappa1_drift = detail::relative_drift(app.kappa1);
    res.horizontal_tangent =
        static_cast<double>(derivs.d1.leftCols(2 * curve.dims.n).array().abs().maxCoeff());

    const Scalar sum_sq = slant.profile.squared_norm();
    bool lorentz_ok = true;
    if (q) {
        double lorentz_res = 0.0;
        for (Eigen::Index k = 0; k < curve.size(); ++k) {
            const VecX<Scalar> residual =
                derivs.d2.row(k).transpose() +
                *q * phi_apply(curve.dims, derivs.d1.row(k).transpose());
            lorentz_res = std::max(lorentz_res, static_cast<double>(residual.norm()));
        }
        res.lorentz = lorentz_res;
        lorentz_ok = lorentz_res <= tol.lorentz;
    }

    const bool slant_ok = slant.max_drift <= tol.slant_drift;

    // Case (i): vanishing curvature, tangent pinned to the characteristic
    // distribution with sum cos^2 theta = 1.
    if (static_cast<double>(app.kappa1.maxCoeff()) <= tol.geodesic) {
        if (slant_ok && res.horizontal_tangent <= tol.legendre &&
            std::abs(static_cast<double>(sum_sq) - 1.0) <= tol.params_unit && lorentz_ok) {
            result.curve_case = CurveCase::GeodesicIntegralCurve;
        }
        return result;
    }

    if (!slant_ok || res.kappa1_drift > tol.constant) return result;

    // sgn(q) from v2 = -sgn(q) phi T / |phi T|.
    Scalar v2_dot_phi_t = Scalar(0);
    for (Eigen::Index k = 0; k < curve.size(); ++k)
        v2_dot_phi_t +=
            app.v2.row(k).dot(phi_apply(curve.dims, app.T.row(k).transpose()).transpose());
    const Scalar sign = v2_dot_phi_t < Scalar(0) ? Scalar(1) : Scalar(-1);

    const bool all_legendre =
        (slant.profile.cos_theta.array().abs() <= Scalar(tol.legendre)).all();
    if (all_legendre) {
        // Case (ii): Legendre circle, kappa1 = |q|, order 2.
        res.kappa2_max = static_cast<double>(app.kappa2.maxCoeff());
        const FrameIdentityReport frame =
            verify_frame_identities(curve, sign, app, false, tol.legendre);
        res.frame_v2 = frame.v2_residual;
        if (res.kappa2_max <= tol.kappa2_zero && frame.v2_residual <= tol.frame && lorentz_ok) {
            result.curve_case = CurveCase::LegendreCircle;
            result.q_inferred = sign * result.kappa1_est;
        }
        return result;
    }

    // Case (iii): slant helix with 0 < sum cos^2 theta < 1, constant kappa1,
    // kappa2, vanishing kappa3, and the phi-frame identities.
    if (static_cast<double>(sum_sq) >= 1.0 - 1e-6) return result;
    if (static_cast<double>(app.kappa2.minCoeff()) <= tol.kappa2_zero ||
        app.order_r != 3 || !(app.sample_order.array() == 3).all())
        return result;
    res.kappa2_drift = detail::relative_drift(app.kappa2);
    if (res.kappa2_drift > tol.constant || !app.kappa3.allFinite()) return result;
    res.kappa3_max = static_cast<double>(app.kappa3.maxCoeff());
    const FrameIdentityReport frame =
        verify_frame_identities(curve, sign, app, false, tol.legendre);
    res.frame_v2 = frame.v2_residual;
    res.frame_v3 = frame.v3_residual;
    if (res.kappa3_max <= tol.kappa3 && frame.v2_residual <= tol.frame &&
        frame.v3_residual <= tol.frame && lorentz_ok) {
        using std::sqrt;
        result.curve_case = CurveCase::SlantHelix;
        result.q_inferred = sign * sqrt(result.kappa1_est * result.kappa1_est +
                                        result.kappa2_est * result.kappa2_est);
    }
    return result;
}

template <typename Scalar>
struct ChargeCandidates {
    Scalar q_magnitude;          // admissible charges are +-q_magnitude
    Scalar required_slant_norm;  // sum cos^2 theta the curve must satisfy
};

/// From constant (kappa1, kappa2) of a phi-helix: the only charges that can
/// generate it are +-sqrt(kappa1^2 + kappa2^2), and its contact angles must
/// satisfy sum cos^2 theta = kappa2^2 / (kappa1^2 + kappa2^2).
template <typename Scalar>
ChargeCandidates<Scalar> charge_candidates_for_helix(Scalar kappa1, Scalar kappa2) {
    using std::hypot;
    if (!(kappa1 > Scalar(0)))
        throw std::invalid_argument(
            "charge_candidates_for_helix: kappa1 must be positive (kappa1 = 0 is the geodesic "
            "integral-curve case)");
    if (kappa2 < Scalar(0))
        throw std::invalid_argument("charge_candidates_for_helix: kappa2 must be nonnegative");
    ChargeCandidates<Scalar> out;
    out.q_magnitude = hypot(kappa1, kappa2);
    out.required_slant_norm = (kappa2 * kappa2) / (kappa1 * kappa1 + kappa2 * kappa2);
    return out;
}

}  // namespace cmagnet
