#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmagnet/structure.hpp"

#include <random>

using namespace cmagnet;

namespace {

VecX<double> vec(std::initializer_list<double> values) {
    VecX<double> v(Eigen::Index(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

VecX<double> random_vec(std::mt19937_64& rng, int dim) {
    VecX<double> v(dim);
    for (int i = 0; i < dim; ++i) v(i) = detail::symmetric_unit(rng);
    return v;
}

}  // namespace

TEST_CASE("phi rotates the x/y planes and kills the z-block") {
    const StructureDims dims(1, 1);
    // phi X_1 = -Y_1
    CHECK(phi_apply(dims, vec({1, 0, 0})).isApprox(vec({0, -1, 0})));
    // phi Y_1 = X_1
    CHECK(phi_apply(dims, vec({0, 1, 0})).isApprox(vec({1, 0, 0})));
    // phi xi_1 = 0
    CHECK(phi_apply(dims, vec({0, 0, 1})).norm() == 0.0);
}

TEST_CASE("phi squared is -identity plus the eta projection") {
    const StructureDims dims(1, 2);
    const VecX<double> v = vec({1, 0, 1, 1});
    // Hand evaluation: phi v = (0,-1,0,0), phi^2 v = (-1,0,0,0)
    //                = -v + eta^1(v) xi_1 + eta^2(v) xi_2.
    const VecX<double> twice = phi_apply(dims, phi_apply(dims, v));
    CHECK(twice.isApprox(vec({-1, 0, 0, 0})));
}

TEST_CASE("eta reads the z coordinates") {
    const StructureDims dims(1, 2);
    CHECK(eta(dims, 2, xi(dims, 2)) == 1.0);            // eta^a(xi_b) = delta
    CHECK(eta(dims, 1, xi(dims, 2)) == 0.0);
    CHECK(eta(dims, 1, vec({1, 0, 0, 0})) == 0.0);      // orthogonal block

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 32; ++trial) {
        const VecX<double> w = random_vec(rng, dims.dim());
        for (int a = 1; a <= dims.s; ++a) CHECK(eta(dims, a, phi_apply(dims, w)) == 0.0);
    }

    CHECK_THROWS_AS(eta(dims, 0, vec({1, 0, 0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(eta(dims, 3, vec({1, 0, 0, 0})), std::invalid_argument);
}

TEST_CASE("metric is the Euclidean dot product") {
    const StructureDims dims(1, 1);
    CHECK(metric(xi(dims, 1), xi(dims, 1)) == 1.0);
    CHECK(metric(vec({1, 0, 0}), vec({1, 0, 0})) == 1.0);   // g(X_1, X_1)
    CHECK(metric(vec({1, 0, 0}), vec({0, 1, 0})) == 0.0);   // g(X_1, Y_1)
    CHECK(metric(vec({1, 2, 3}), vec({4, 5, 6})) == 32.0);
    CHECK_THROWS_AS(metric(vec({1, 2, 3}), vec({1, 2})), std::invalid_argument);
}

TEST_CASE("fundamental two-form") {
    const StructureDims dims(1, 1);
    // Hand oracle: Omega(X_1, Y_1) = g(X_1, phi Y_1) = g(X_1, X_1) = 1.
    CHECK(fundamental_two_form(dims, vec({1, 0, 0}), vec({0, 1, 0})) == 1.0);

    std::mt19937_64 rng(11);
    const StructureDims big(2, 3);
    for (int trial = 0; trial < 64; ++trial) {
        const VecX<double> u = random_vec(rng, big.dim());
        const VecX<double> v = random_vec(rng, big.dim());
        // Antisymmetry, Omega(v, v) = 0, and xi in the kernel.
        CHECK(fundamental_two_form(big, u, v) ==
              doctest::Approx(-fundamental_two_form(big, v, u)).epsilon(1e-14));
        CHECK(std::abs(fundamental_two_form(big, v, v)) <= 1e-15);
        for (int a = 1; a <= big.s; ++a)
            CHECK(fundamental_two_form(big, xi(big, a), u) == 0.0);
    }
}

TEST_CASE("structure identities hold at machine precision on random samples") {
    const IdentityReport report = verify_structure(StructureDims(2, 3), 1000, 1e-12, 42);
    CHECK(report.pass);
    CHECK(report.samples == 1000);
    CHECK(report.max_residual_phi_sq <= 1e-12);
    CHECK(report.max_residual_metric <= 1e-12);
    CHECK(report.max_residual_eta_phi <= 1e-12);

    CHECK(verify_structure(StructureDims(1, 1), 1, 1e-12, 0).pass);
}

TEST_CASE("verify_structure is deterministic in the seed") {
    const IdentityReport a = verify_structure(StructureDims(3, 2), 200, 1e-12, 123);
    const IdentityReport b = verify_structure(StructureDims(3, 2), 200, 1e-12, 123);
    CHECK(a.max_residual_phi_sq == b.max_residual_phi_sq);
    CHECK(a.max_residual_metric == b.max_residual_metric);
}

TEST_CASE("a corrupted phi fails verification") {
    // Mutation: the y-block keeps its sign instead of being negated. Hand
    // oracle on X_1 = (1,0,0): corrupted phi^2 X_1 = +X_1, but the identity
    // demands -X_1, so the residual is 2.
    const auto corrupted = [](const StructureDims& d, const VecX<double>& v) {
        VecX<double> out(d.dim());
        out.head(d.n) = v.segment(d.n, d.n);
        out.segment(d.n, d.n) = v.head(d.n);  // wrong sign
        out.tail(d.s).setZero();
        return out;
    };
    const StructureDims dims(1, 1);
    const VecX<double> x1 = vec({1, 0, 0});
    CHECK(corrupted(dims, corrupted(dims, x1)).isApprox(x1));

    const IdentityReport report = verify_structure<double>(dims, 50, 1e-12, 9, corrupted);
    CHECK_FALSE(report.pass);
    CHECK(report.max_residual_phi_sq > 1e-3);
}

TEST_CASE("identities are scalar-generic") {
    const IdentityReport report = verify_structure<long double>(StructureDims(2, 2), 100, 1e-15, 5);
    CHECK(report.pass);
}

TEST_CASE("dimension checks") {
    const StructureDims dims(2, 1);
    CHECK(dims.dim() == 5);
    CHECK_THROWS_AS(StructureDims(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(StructureDims(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(phi_apply(dims, vec({1, 0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(verify_structure(dims, 0, 1e-12, 1), std::invalid_argument);
    CHECK_THROWS_AS(verify_structure(dims, 10, -1.0, 1), std::invalid_argument);
}
