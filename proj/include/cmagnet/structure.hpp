#pragma once

// Flat framed phi-structure (phi, xi_alpha, eta^alpha, g) on R^{2n+s}.
//
// Coordinates are stored in the fixed order (x_1..x_n, y_1..y_n, z_1..z_s).
// The model is flat, so one coordinate vector type serves both as point and
// tangent vector and the connection is the plain coordinate derivative.
// All operations are pure; nothing here keeps state.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace cmagnet {

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Ambient dimensions: n phi-rotated plane pairs plus s characteristic
/// directions, giving R^{2n+s}.
struct StructureDims {
    int n;
    int s;

    StructureDims(int n_, int s_) : n(n_), s(s_) {
        if (n_ < 1 || s_ < 1)
            throw std::invalid_argument("StructureDims: n and s must be >= 1");
    }

    int dim() const { return 2 * n + s; }

    friend bool operator==(const StructureDims& a, const StructureDims& b) {
        return a.n == b.n && a.s == b.s;
    }
};

namespace detail {

inline void check_dim(const StructureDims& dims, Eigen::Index size, const char* where) {
    if (size != dims.dim())
        throw std::invalid_argument(std::string(where) + ": vector has length " +
                                    std::to_string(size) + ", expected " +
                                    std::to_string(dims.dim()));
}

inline void check_same_size(Eigen::Index a, Eigen::Index b, const char* where) {
    if (a != b)
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace detail

/// phi(sum a_i X_i + sum b_i Y_i + sum c_a xi_a) = sum b_i X_i - sum a_i Y_i:
/// the x-block receives the y-block, the y-block the negated x-block, and the
/// z-block is annihilated.
template <typename Derived>
VecX<typename Derived::Scalar> phi_apply(const StructureDims& dims,
                                         const Eigen::MatrixBase<Derived>& v) {
    using Scalar = typename Derived::Scalar;
    detail::check_dim(dims, v.size(), "phi_apply");
    VecX<Scalar> out(dims.dim());
    out.head(dims.n) = v.segment(dims.n, dims.n);
    out.segment(dims.n, dims.n) = -v.head(dims.n);
    out.tail(dims.s).setZero();
    return out;
}

/// eta^alpha(v) = g(v, xi_alpha), i.e. coordinate z_alpha. alpha is 1-based.
template <typename Derived>
typename Derived::Scalar eta(const StructureDims& dims, int alpha,
                             const Eigen::MatrixBase<Derived>& v) {
    detail::check_dim(dims, v.size(), "eta");
    if (alpha < 1 || alpha > dims.s)
        throw std::invalid_argument("eta: alpha out of range [1, s]");
    return v(2 * dims.n + alpha - 1);
}

/// The usual flat metric: Euclidean dot product of coordinate vectors.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar metric(const Eigen::MatrixBase<DerivedA>& u,
                                 const Eigen::MatrixBase<DerivedB>& v) {
    detail::check_same_size(u.size(), v.size(), "metric");
    return u.dot(v);
}

/// Fundamental 2-form Omega(u, v) = g(u, phi v); antisymmetric, and constant
/// over R^{2n+s} (no base point enters), so d Omega = 0 holds structurally.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar fundamental_two_form(const StructureDims& dims,
                                               const Eigen::MatrixBase<DerivedA>& u,
                                               const Eigen::MatrixBase<DerivedB>& v) {
    detail::check_same_size(u.size(), v.size(), "fundamental_two_form");
    return metric(u, phi_apply(dims, v));
}

/// Characteristic vector xi_alpha as a coordinate vector (alpha 1-based).
template <typename Scalar = double>
VecX<Scalar> xi(const StructureDims& dims, int alpha) {
    if (alpha < 1 || alpha > dims.s)
        throw std::invalid_argument("xi: alpha out of range [1, s]");
    VecX<Scalar> v = VecX<Scalar>::Zero(dims.dim());
    v(2 * dims.n + alpha - 1) = Scalar(1);
    return v;
}

/// Residual summary of the defining algebraic identities over a random sample.
struct IdentityReport {
    double max_residual_phi_sq = 0.0;   // phi^2 v + v - sum eta^a(v) xi_a
    double max_residual_metric = 0.0;   // g(phi u, phi v) - g(u,v) + sum eta(u) eta(v)
    double max_residual_eta_phi = 0.0;  // eta^a(phi v)
    int samples = 0;
    bool pass = false;
};

namespace detail {

// Deterministic uniform double in [-1, 1) built from raw generator bits;
// avoids std::uniform_real_distribution, whose output is
// implementation-defined.
inline double symmetric_unit(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

template <typename Scalar>
VecX<Scalar> random_vector(std::mt19937_64& rng, int dim) {
    VecX<Scalar> v(dim);
    for (int i = 0; i < dim; ++i) v(i) = static_cast<Scalar>(symmetric_unit(rng));
    return v;
}

}  // namespace detail

/// Checks phi^2 = -I + sum eta^a (.) xi_a, metric compatibility
/// g(phi u, phi v) = g(u, v) - sum eta^a(u) eta^a(v), and eta^a(phi v) = 0 on
/// `samples` seeded pseudo-random vector pairs. `phi` is injectable so tests
/// can feed a corrupted structure tensor through the same residual machinery.
template <typename Scalar = double, typename PhiFn>
IdentityReport verify_structure(const StructureDims& dims, int samples, double tol,
                                std::uint64_t seed, PhiFn&& phi) {
    if (samples < 1) throw std::invalid_argument("verify_structure: samples must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("verify_structure: tol must be positive");

    std::mt19937_64 rng(seed);
    IdentityReport report;
    report.samples = samples;

    for (int k = 0; k < samples; ++k) {
        const VecX<Scalar> u = detail::random_vector<Scalar>(rng, dims.dim());
        const VecX<Scalar> v = detail::random_vector<Scalar>(rng, dims.dim());
        const VecX<Scalar> phi_u = phi(dims, u);
        const VecX<Scalar> phi_v = phi(dims, v);

        VecX<Scalar> phi_sq = phi(dims, phi_v) + v;
        Scalar eta_uv = Scalar(0);
        for (int a = 1; a <= dims.s; ++a) {
            phi_sq -= eta(dims, a, v) * xi<Scalar>(dims, a);
            eta_uv += eta(dims, a, u) * eta(dims, a, v);
            report.max_residual_eta_phi =
                std::max({report.max_residual_eta_phi,
                          static_cast<double>(std::abs(eta(dims, a, phi_v))),
                          static_cast<double>(std::abs(eta(dims, a, phi_u)))});
        }
        report.max_residual_phi_sq = std::max(
            report.max_residual_phi_sq,
            static_cast<double>(phi_sq.template lpNorm<Eigen::Infinity>()));
        report.max_residual_metric = std::max(
            report.max_residual_metric,
            static_cast<double>(std::abs(metric(phi_u, phi_v) - metric(u, v) + eta_uv)));
    }

    report.pass = report.max_residual_phi_sq <= tol && report.max_residual_metric <= tol &&
                  report.max_residual_eta_phi <= tol;
    return report;
}

template <typename Scalar = double>
IdentityReport verify_structure(const StructureDims& dims, int samples, double tol,
                                std::uint64_t seed) {
    return verify_structure<Scalar>(dims, samples, tol, seed,
                                    [](const StructureDims& d, const VecX<Scalar>& v) {
                                        return phi_apply(d, v);
                                    });
}

}  // namespace cmagnet
