// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hermitana/errors.hpp"
#include "hermitana/linalg.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

using namespace hermitana;
using namespace hermitana::test;

TEST_CASE("hermitian_sqrt of the identity")
{
    const auto s = hermitian_sqrt(identity2());
    CHECK((s.sqrt - identity2()).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK((s.inv_sqrt - identity2()).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("hermitian_sqrt of I + (sqrt3/2) sx")
{
    // closed forms: sqrt = (sqrt3/2) I + (1/2) sx, inverse = sqrt3 I - sx
    const ComplexMatrix eta = identity2() + (std::sqrt(3.0) / 2.0) * pauli_x();
    const auto s = hermitian_sqrt(eta);
    const ComplexMatrix expect_sqrt = (std::sqrt(3.0) / 2.0) * identity2() + 0.5 * pauli_x();
    const ComplexMatrix expect_inv = std::sqrt(3.0) * identity2() - pauli_x();
    CHECK((s.sqrt - expect_sqrt).norm() < 1e-12);
    CHECK((s.inv_sqrt - expect_inv).norm() < 1e-12);
    // direct multiplication: (sqrt3 I - sx) sqrt = I
    CHECK((expect_inv * s.sqrt - identity2()).norm() < 1e-12);
}

TEST_CASE("hermitian_sqrt matches the hyperbolic closed form for I + v sy")
{
    const double v = 0.5;
    const ComplexMatrix eta = identity2() + v * pauli_y();
    const auto s = hermitian_sqrt(eta);
    const double a = 0.5 * std::atanh(v);
    const ComplexMatrix closed =
        std::pow(1.0 - v * v, 0.25) *
        (std::cosh(a) * identity2() + std::sinh(a) * pauli_y());
    CHECK((s.sqrt - closed).norm() < 1e-13);
}

TEST_CASE("hermitian_sqrt properties on random positive matrices")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const ComplexMatrix m = random_hpd(rng, n);
        const auto s = hermitian_sqrt(m);
        CHECK((s.sqrt * s.sqrt - m).norm() <= 1e-10 * m.norm());
        CHECK((s.sqrt * s.inv_sqrt - ComplexMatrix::Identity(n, n)).norm() <= 1e-10 * m.norm());
        CHECK((s.sqrt - s.sqrt.adjoint()).norm() < 1e-14);
    }
}

TEST_CASE("hermitian_sqrt rejections")
{
    CHECK_THROWS_AS(hermitian_sqrt(Complex(0, 1) * pauli_y()), NotHermitian);
    CHECK_THROWS_AS(hermitian_sqrt(identity2() + 1.2 * pauli_x()), NotPositiveDefinite);
    ComplexMatrix nearly_singular(2, 2);
    nearly_singular << 1.0, 0.0, 0.0, 1e-15;
    CHECK_THROWS_AS(hermitian_sqrt(nearly_singular), NotPositiveDefinite);
}

TEST_CASE("matrix exponential basics")
{
    CHECK((matrix_exponential(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() <
          1e-15);
    // e^{-i pi sz} = -I
    const ComplexMatrix w = matrix_exponential(Complex(0, -pi) * pauli_z());
    CHECK((w + identity2()).norm() < 1e-13);
    // e^{-i (pi/2) sz} = diag(-i, i)
    const ComplexMatrix half = matrix_exponential(Complex(0, -pi / 2) * pauli_z());
    ComplexMatrix expected(2, 2);
    expected << Complex(0, -1), 0, 0, Complex(0, 1);
    CHECK((half - expected).norm() < 1e-13);
}

TEST_CASE("matrix exponential inverse property")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        ComplexMatrix a = random_matrix(rng, n);
        a *= 5.0 / std::max(1.0, a.norm());
        const ComplexMatrix left = matrix_exponential(a) * matrix_exponential((-a).eval());
        CHECK((left - ComplexMatrix::Identity(n, n)).norm() < 1e-10);
    }
}

TEST_CASE("matrix exponential against the Hermitian eigendecomposition oracle")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        ComplexMatrix a = random_hermitian(rng, n);
        a *= 10.0 / std::max(1.0, a.norm());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
        const ComplexMatrix oracle = es.eigenvectors() *
                                     es.eigenvalues().array().exp().matrix().asDiagonal() *
                                     es.eigenvectors().adjoint();
        CHECK((matrix_exponential(a) - oracle).norm() <= 1e-12 * oracle.norm());
    }
}

TEST_CASE("Pade route agrees with the 2x2 Pauli closed form")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix a = random_matrix(rng, 2);
        a *= 3.0 / std::max(1.0, a.norm());
        const ComplexMatrix pade = matrix_exponential(a);
        const ComplexMatrix pauli = matrix_exponential_2x2(a);
        CHECK((pade - pauli).norm() <= 1e-12 * pauli.norm());
    }
}

TEST_CASE("matrix exponential overflow handling")
{
    CHECK_THROWS_AS(matrix_exponential(2000.0 * identity2()), Overflow);
    ComplexMatrix bad = identity2();
    bad(0, 1) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(matrix_exponential(bad), Overflow);
}

TEST_CASE("commutator identities")
{
    CHECK((commutator(pauli_x(), pauli_y()) - Complex(0, 2) * pauli_z()).norm() == 0.0);
    const ComplexMatrix a = pauli_x() + 0.3 * pauli_z();
    CHECK(commutator(a, a).norm() == 0.0);
    CHECK(commutator(pauli_x(), identity2()).norm() == 0.0);
    CHECK_THROWS_AS(commutator(identity2(), ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("commutator antisymmetry and Jacobi identity on random triples")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const ComplexMatrix a = random_matrix(rng, n);
        const ComplexMatrix b = random_matrix(rng, n);
        const ComplexMatrix c = random_matrix(rng, n);
        CHECK((commutator(a, b) + commutator(b, a)).norm() < 1e-13);
        const ComplexMatrix jacobi = commutator(a, commutator(b, c)) +
                                     commutator(b, commutator(c, a)) +
                                     commutator(c, commutator(a, b));
        CHECK(jacobi.norm() < 1e-12);
    }
}

TEST_CASE("principal log inverts the exponential near the identity")
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix a = random_matrix(rng, 2);
        a = (a - a.adjoint().eval()) / 2.0; // anti-Hermitian
        a *= 0.4 / std::max(0.1, a.norm());
        CHECK((principal_log(matrix_exponential(a)) - a).norm() < 1e-10);
    }
}

TEST_CASE("validate_metric reports")
{
    const MetricValidation good = validate_metric(identity2() + (std::sqrt(3.0) / 2) * pauli_x());
    CHECK(good.ok);
    CHECK(good.min_eigenvalue == doctest::Approx(1.0 - std::sqrt(3.0) / 2).epsilon(1e-12));

    const MetricValidation indefinite = validate_metric(identity2() + 1.2 * pauli_x());
    CHECK_FALSE(indefinite.ok);
    CHECK(indefinite.min_eigenvalue == doctest::Approx(-0.2).epsilon(1e-12));

    const MetricValidation skew = validate_metric(Complex(0, 1) * pauli_y());
    CHECK_FALSE(skew.ok);
    CHECK(skew.hermiticity_residual > 0.1);
}
