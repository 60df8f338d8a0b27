#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmagnet/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace cmagnet;

namespace {

VecX<double> vec(std::initializer_list<double> values) {
    VecX<double> v(Eigen::Index(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

// Random unit tangent with the prescribed z-block (contact angles).
VecX<double> random_unit_tangent(std::mt19937_64& rng, const StructureDims& dims,
                                 const VecX<double>& cos_theta) {
    VecX<double> t(dims.dim());
    for (int i = 0; i < 2 * dims.n; ++i) t(i) = detail::symmetric_unit(rng);
    const double horiz = std::sqrt(std::max(0.0, 1.0 - cos_theta.squaredNorm()));
    t.head(2 * dims.n) *= horiz / t.head(2 * dims.n).norm();
    t.tail(dims.s) = cos_theta;
    return t;
}

VecX<double> random_point(std::mt19937_64& rng, int dim) {
    VecX<double> p(dim);
    for (int i = 0; i < dim; ++i) p(i) = 2.0 * detail::symmetric_unit(rng);
    return p;
}

}  // namespace

TEST_CASE("lorentz_rhs is -q phi") {
    const StructureDims dims(1, 1);
    // Hand oracle: -q phi X_1 = -(0,-1,0) = (0,1,0) at q = 1.
    CHECK(lorentz_rhs(dims, 1.0, vec({1, 0, 0})).isApprox(vec({0, 1, 0})));
    CHECK(lorentz_rhs(dims, 3.5, vec({0, 0, 1})).norm() == 0.0);  // phi xi = 0
    CHECK(lorentz_rhs(dims, 0.0, vec({1, 0, 0})).norm() == 0.0);
    CHECK_THROWS_AS(lorentz_rhs(dims, 1.0, vec({1, 0})), std::invalid_argument);
}

TEST_CASE("integration of a characteristic tangent gives a straight line") {
    const StructureDims dims(1, 1);
    const SampledCurve<double> curve =
        integrate(dims, 1.0, vec({0, 0, 0}), vec({0, 0, 1}), 5.0, 1e-3);
    REQUIRE(curve.derivs.has_value());
    for (Eigen::Index k = 0; k < curve.size(); ++k) {
        CHECK(std::abs(curve.points(k, 0)) <= 1e-15);
        CHECK(std::abs(curve.points(k, 1)) <= 1e-15);
        CHECK(curve.points(k, 2) == doctest::Approx(curve.t(k)).epsilon(1e-13));
    }
}

TEST_CASE("q = 2 Legendre trajectory closes a circle of radius 1/2 at t = pi") {
    // Closed-form oracle from params_from_initial_conditions + closed_form:
    // gamma_1 = (1/2) sin 2t, gamma_2 = (1/2)(1 - cos 2t).
    const StructureDims dims(1, 1);
    const SampledCurve<double> curve =
        integrate(dims, 2.0, vec({0, 0, 0}), vec({1, 0, 0}), std::numbers::pi, 1e-3);
    const VecX<double> last = curve.points.row(curve.size() - 1).transpose();
    CHECK(last.norm() <= 1e-6);
    // Radius about the center (0, 1/2, 0) stays 1/2.
    for (Eigen::Index k = 0; k < curve.size(); ++k) {
        const double dx = curve.points(k, 0);
        const double dy = curve.points(k, 1) - 0.5;
        CHECK(std::hypot(dx, dy) == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("the z-component of the tangent is conserved exactly by the integrator") {
    const StructureDims dims(1, 1);
    const SampledCurve<double> curve = integrate(
        dims, 1.0, vec({0, 0, 0}), vec({std::sqrt(3.0) / 2.0, 0, 0.5}), 10.0, 1e-3);
    REQUIRE(curve.derivs.has_value());
    CHECK(((curve.derivs->col(2).array() - 0.5).abs() <= 1e-9).all());
}

TEST_CASE("integrator rejects bad inputs") {
    const StructureDims dims(1, 1);
    const VecX<double> p0 = vec({0, 0, 0});
    CHECK_THROWS_AS(integrate(dims, 1.0, p0, vec({1, 0, 1e-4}), 1.0, 1e-3),
                    std::invalid_argument);  // non-unit tangent, not renormalized
    CHECK_THROWS_AS(integrate(dims, 0.0, p0, vec({1, 0, 0}), 1.0, 1e-3),
                    std::invalid_argument);  // q = 0
    CHECK_THROWS_AS(integrate(dims, 1.0, p0, vec({1, 0, 0}), 1.0, -1e-3),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(dims, 1.0, p0, vec({1, 0, 0}), 1.0, 2.0),
                    std::invalid_argument);  // dt > t_end
}

TEST_CASE("closed form evaluates the parametric equations") {
    const StructureDims dims(1, 1);
    MagneticCurveParams<double> params;
    params.q = 2.0;
    params.c = vec({1});
    params.d = vec({0});
    params.b = vec({0, 0.5});
    params.h = vec({0});
    params.slant.cos_theta = vec({0});

    const SampledCurve<double> curve = closed_form(dims, params, uniform_grid(1.0, 1e-2));
    REQUIRE(curve.derivs.has_value());
    // Substituting t = 0: point (0,0,0), derivative (1,0,0).
    CHECK(curve.points.row(0).norm() <= 1e-16);
    CHECK(curve.derivs->row(0).transpose().isApprox(vec({1, 0, 0})));
    // z-derivatives are constantly cos theta.
    CHECK((curve.derivs->col(2).array() == 0.0).all());
    // Unit speed at every grid point (numeric oracle for the c^2 + cos^2 sum).
    for (Eigen::Index k = 0; k < curve.size(); ++k)
        CHECK(curve.derivs->row(k).squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed form validates parameter invariants") {
    const StructureDims dims(1, 1);
    MagneticCurveParams<double> params;
    params.q = 2.0;
    params.c = vec({1});
    params.d = vec({0});
    params.b = vec({0, 0.5});
    params.h = vec({0});
    params.slant.cos_theta = vec({0.5});  // c^2 + cos^2 = 1.25
    CHECK_THROWS_AS(closed_form(dims, params, uniform_grid(1.0, 0.1)), std::invalid_argument);

    params.slant.cos_theta = vec({0});
    params.q = 0.0;
    CHECK_THROWS_AS(closed_form(dims, params, uniform_grid(1.0, 0.1)), std::invalid_argument);

    params.q = 2.0;
    VecX<double> empty(0);
    CHECK_THROWS_AS(closed_form(dims, params, empty), std::invalid_argument);

    SlantProfile<double> bad;
    bad.cos_theta = vec({0.9, 0.9});
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // slant inequality
}

TEST_CASE("params from initial conditions: frozen example") {
    // Solve c cos d = 1, c sin d = 0, then b_2 = 0 + (1/2) cos 0.
    const StructureDims dims(1, 1);
    const MagneticCurveParams<double> params =
        params_from_initial_conditions(dims, 2.0, vec({0, 0, 0}), vec({1, 0, 0}));
    CHECK(params.c(0) == 1.0);
    CHECK(params.d(0) == 0.0);
    CHECK(params.b(0) == 0.0);
    CHECK(params.b(1) == 0.5);
    CHECK(params.h(0) == 0.0);
    CHECK(params.slant.cos_theta(0) == 0.0);
}

TEST_CASE("characteristic initial tangent degenerates to zero amplitudes") {
    const StructureDims dims(2, 1);
    const MagneticCurveParams<double> params = params_from_initial_conditions(
        dims, 1.0, VecX<double>::Zero(5), vec({0, 0, 0, 0, 1}));
    CHECK(params.c.norm() == 0.0);
    CHECK(params.d.norm() == 0.0);
    // The closed form then degenerates to a line along xi.
    const SampledCurve<double> line = closed_form(dims, params, uniform_grid(2.0, 0.25));
    CHECK(line.points.leftCols(4).norm() == 0.0);
    CHECK(line.points.col(4).isApprox(line.t));
}

TEST_CASE("round trip: closed form reproduces the initial conditions at t = 0") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const StructureDims dims(1 + int(rng() % 3), 1 + int(rng() % 3));
        VecX<double> cos_theta(dims.s);
        for (int a = 0; a < dims.s; ++a) cos_theta(a) = 0.5 * detail::symmetric_unit(rng);
        if (cos_theta.squaredNorm() > 0.9) cos_theta *= 0.9 / cos_theta.norm();
        const VecX<double> t0 = random_unit_tangent(rng, dims, cos_theta);
        const VecX<double> p0 = random_point(rng, dims.dim());
        const double q = (rng() % 2 ? 1.0 : -1.0) * (0.5 + 2.0 * (rng() % 100) / 100.0);

        const MagneticCurveParams<double> params =
            params_from_initial_conditions(dims, q, p0, t0);
        VecX<double> origin(1);
        origin(0) = 0.0;
        const SampledCurve<double> at0 = closed_form(dims, params, origin);
        CHECK((at0.points.row(0).transpose() - p0).norm() <= 1e-12);
        CHECK((at0.derivs->row(0).transpose() - t0).norm() <= 1e-12);
    }
}

TEST_CASE("integrator and closed form agree to RK4 accuracy") {
    std::mt19937_64 rng(99);
    const StructureDims dims(2, 2);
    const VecX<double> cos_theta = vec({0.25, -0.35});
    const VecX<double> t0 = random_unit_tangent(rng, dims, cos_theta);
    const VecX<double> p0 = random_point(rng, dims.dim());
    const double q = 1.7;

    const SampledCurve<double> numeric = integrate(dims, q, p0, t0, 10.0, 1e-3);
    const MagneticCurveParams<double> params = params_from_initial_conditions(dims, q, p0, t0);
    const SampledCurve<double> exact = closed_form(dims, params, numeric.t);
    CHECK((numeric.points - exact.points).rowwise().norm().maxCoeff() <= 1e-6);
}

TEST_CASE("speed and slant are conserved along integrated trajectories") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const StructureDims dims(1 + int(rng() % 2), 1 + int(rng() % 2));
        VecX<double> cos_theta(dims.s);
        for (int a = 0; a < dims.s; ++a) cos_theta(a) = 0.4 * detail::symmetric_unit(rng);
        const VecX<double> t0 = random_unit_tangent(rng, dims, cos_theta);
        const SampledCurve<double> curve =
            integrate(dims, 1.5, random_point(rng, dims.dim()), t0, 10.0, 1e-3);

        CHECK((curve.derivs->rowwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-8);
        for (int a = 0; a < dims.s; ++a)
            CHECK((curve.derivs->col(2 * dims.n + a).array() - cos_theta(a)).abs().maxCoeff() <=
                  1e-8);
    }
}

TEST_CASE("slant equality boundary forces zero amplitudes") {
    // sum cos^2 = 1 leaves no horizontal speed: the curve is an integral
    // curve of sum cos(theta_a) xi_a.
    const StructureDims dims(1, 2);
    const VecX<double> t0 = vec({0, 0, 0.6, 0.8});
    const MagneticCurveParams<double> params =
        params_from_initial_conditions(dims, 1.0, VecX<double>::Zero(4), t0);
    CHECK(params.c.norm() == 0.0);
    CHECK(params.slant.squared_norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("uniform grid lands on t_end") {
    const VecX<double> grid = uniform_grid(10.0, 1e-3);
    CHECK(grid.size() == 10001);
    CHECK(grid(grid.size() - 1) == doctest::Approx(10.0).epsilon(1e-12));

    const VecX<double> partial = uniform_grid(1.0005, 1e-3);
    CHECK(partial.size() == 1002);
    CHECK(partial(partial.size() - 1) == 1.0005);

    CHECK_THROWS_AS(uniform_grid(1.0, 0.0), std::invalid_argument);
}
