// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hermitana/berry.hpp"
#include "hermitana/geometry.hpp"
#include "hermitana/linalg.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace hermitana;
using namespace hermitana::test;

namespace {

const double r_quantized = 2.0 * std::sqrt(2.0) / 3.0;

// closed-form E = +1 eigenstate family of example3 in a fixed smooth gauge:
// Psi(phi) = (e^{i phi/2}/sqrt2) (sqrt3 - e^{-i phi}, sqrt3 - e^{i phi})^T
ComplexVector example3_state(double phi)
{
    const Complex i(0, 1);
    ComplexVector v(2);
    v << std::sqrt(3.0) - std::exp(-i * phi), std::sqrt(3.0) - std::exp(i * phi);
    return (std::exp(i * phi / 2.0) / std::sqrt(2.0)) * v;
}

ComplexVector example3_state_derivative(double phi)
{
    const Complex i(0, 1);
    ComplexVector dv(2);
    dv << i * std::exp(-i * phi), -i * std::exp(i * phi);
    return (i / 2.0) * example3_state(phi) + (std::exp(i * phi / 2.0) / std::sqrt(2.0)) * dv;
}

} // namespace

TEST_CASE("connection formula in the example3 closed-form gauge gives -1/2")
{
    const auto model = example3();
    for (double phi : {0.0, 0.9, 2.5, 4.4}) {
        const ParameterPoint p = point2(1.5, phi);
        const ComplexMatrix eta = model->metric(p);
        const ComplexMatrix deta = *model->analytic_metric_partial(p, 1);
        const ComplexVector psi = example3_state(phi);
        CHECK(std::abs(psi.dot(eta * psi) - Complex(1.0)) < 1e-12); // eta-normalized
        const ConnectionValue a =
            qh_connection_value(psi, example3_state_derivative(phi), eta, deta);
        CHECK(a.value == doctest::Approx(-0.5).epsilon(1e-10));
        CHECK(a.imag_residual <= 1e-10);
    }
}

TEST_CASE("mapped-state connection of example2 is (1 - cos alpha)/2")
{
    // psi_-(theta) = (sin(a/2) e^{-i theta}, -cos(a/2)): the Hermitian
    // image eigenstate; i<psi|d psi> = (1 - cos a)/2
    for (double alpha : {pi / 2.0, 1.234}) {
        for (double theta : {0.3, 2.0}) {
            const Complex i(0, 1);
            ComplexVector psi(2), dpsi(2);
            psi << std::sin(alpha / 2) * std::exp(-i * theta), -std::cos(alpha / 2);
            dpsi << -i * std::sin(alpha / 2) * std::exp(-i * theta), 0.0;
            const ConnectionValue a =
                qh_connection_value(psi, dpsi, identity2(), ComplexMatrix::Zero(2, 2));
            CHECK(a.value == doctest::Approx((1.0 - std::cos(alpha)) / 2.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("quasi connection equals the Hermitian one at the proper radius")
{
    const double alpha = pi / 2.0;
    const auto model = example2(alpha);
    const Complex i(0, 1);
    auto quasi_state = [&](double theta) {
        ComplexVector psi(2);
        psi << std::sin(alpha / 2) * std::exp(-i * theta), -std::cos(alpha / 2);
        const ParameterPoint p = point2(r_quantized, theta);
        const ComplexMatrix rot = matrix_exponential((i * theta) * pauli_z());
        return (hermitian_sqrt(model->metric(p)).inv_sqrt * rot * psi).eval();
    };
    for (double theta : {0.0, 1.1, 3.9}) {
        const ParameterPoint p = point2(r_quantized, theta);
        const ComplexVector psi = quasi_state(theta);
        const ComplexVector dpsi = central_diff_vec(quasi_state, theta, 1e-6);
        const ConnectionValue a = qh_connection_value(
            psi, dpsi, model->metric(p), *model->analytic_metric_partial(p, 1));
        CHECK(a.value == doctest::Approx((1.0 - std::cos(alpha)) / 2.0).epsilon(1e-6));
    }
}

TEST_CASE("qh_connection reduces to i<psi|d psi> for a trivial metric")
{
    const auto model = hermitian_bloch_model();
    const ParameterPoint p = point2(1.2, 1.0);
    const auto a = qh_connection(*model, p, 0);
    REQUIRE(a.size() == 2);
    for (const auto& v : a)
        CHECK(v.imag_residual <= 1e-8);
    // lower band of n.sigma in this gauge: A_phi = (1 - cos(theta))/2 ... the
    // eigensystem's own gauge differs by a smooth phase, so check the
    // reality invariant plus the gauge-invariant curvature instead
    const BerryCurvatures bc = berry_curvatures(*model, p, 0, 0, 1);
    CHECK(bc.F == doctest::Approx(bc.F_tilde).epsilon(1e-8));
    CHECK(std::abs(bc.delta) <= 1e-9);
    // Bloch sphere: F_{phi theta} = sin(theta)/2 for the lower band
    CHECK(std::abs(bc.F) == doctest::Approx(std::sin(p(1)) / 2.0).epsilon(1e-5));
}

TEST_CASE("qh_connection reality invariant on built-ins")
{
    const auto m2 = example2(1.0);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ur(0.1, 0.85);
    std::uniform_real_distribution<double> uth(0.0, 2 * pi);
    for (int trial = 0; trial < 10; ++trial) {
        const ParameterPoint p = point2(ur(rng), uth(rng));
        for (int band = 0; band < 2; ++band)
            for (const auto& v : qh_connection(*m2, p, band))
                CHECK(v.imag_residual <= 1e-8);
    }
}

TEST_CASE("Berry phases of example3: -pi in the Hermitian frame, 0 in the quasi frame")
{
    const auto model = example3();
    const PathSpec loop = PathSpec::circle_by_label(*model, "phi", point2(1.5, 0.0), 1, 2048);

    const BerryPhaseResult herm = berry_phase(*model, loop, 1, FrameKind::hermitian);
    CHECK(circular_distance(herm.phase, -pi) <= 1e-4);
    CHECK(herm.convergence <= 1e-4);

    const BerryPhaseResult quasi = berry_phase(*model, loop, 1, FrameKind::quasi);
    CHECK(circular_distance(quasi.phase, 0.0) <= 1e-4);
    CHECK(quasi.convergence <= 1e-4);

    // lower band picks up the opposite Hermitian phase
    const BerryPhaseResult herm0 = berry_phase(*model, loop, 0, FrameKind::hermitian);
    CHECK(circular_distance(herm0.phase, pi) <= 1e-4);
}

TEST_CASE("example2 at the proper radius: both frames give pi (alpha = pi/2)")
{
    const auto model = example2(pi / 2.0);
    const PathSpec loop =
        PathSpec::circle_by_label(*model, "theta", point2(r_quantized, 0.0), 1, 2048);
    const BerryPhaseResult herm = berry_phase(*model, loop, 0, FrameKind::hermitian);
    const BerryPhaseResult quasi = berry_phase(*model, loop, 0, FrameKind::quasi);
    CHECK(circular_distance(herm.phase, pi * (1.0 - std::cos(pi / 2.0))) <= 1e-4);
    CHECK(circular_distance(quasi.phase, herm.phase) <= 1e-6);
}

TEST_CASE("berry_phase is loop-orientation odd")
{
    const auto model = example2(pi / 3.0);
    const PathSpec loop = PathSpec::circle_by_label(*model, "theta", point2(0.55, 0.0), 1, 1024);
    const BerryPhaseResult fwd = berry_phase(*model, loop, 0, FrameKind::quasi);
    const BerryPhaseResult bwd = berry_phase(*model, loop.reversed(), 0, FrameKind::quasi);
    CHECK(circular_distance(fwd.phase, -bwd.phase) <= 1e-8);
    CHECK(circular_distance(fwd.phase, 0.0) > 0.05); // nontrivial value
}

TEST_CASE("discrete phase is exactly gauge invariant")
{
    const auto model = example3();
    const PathSpec loop = PathSpec::circle_by_label(*model, "phi", point2(1.5, 0.0), 1, 256);
    const BandPath bp = band_path(*model, loop, 1);
    const double reference = discrete_berry_phase(bp.states, bp.etas, loop.param);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uni(0.0, 2 * pi);
    std::vector<ComplexVector> twisted = bp.states;
    for (auto& v : twisted)
        v *= std::polar(1.0, uni(rng));
    CHECK(circular_distance(discrete_berry_phase(twisted, bp.etas, loop.param), reference) <=
          1e-10);
}

TEST_CASE("local equality of connections along a generic loop")
{
    const auto model = example2(pi / 3.0);
    const PathSpec loop = PathSpec::circle_by_label(*model, "theta", point2(0.55, 0.0), 1, 1024);
    BandPath bp = band_path(*model, loop, 0);
    // twist the tracked gauge by a known smooth phase so both connections
    // are nontrivial (the parallel-transport gauge makes them ~0)
    for (std::size_t k = 0; k < bp.states.size(); ++k)
        bp.states[k] *= std::polar(1.0, 0.3 * std::sin(loop.param[k]));
    const ProperFrame frame = proper_frame(*model, loop, identity2());
    const auto a_quasi = qh_connection_along(bp, loop);
    const auto a_herm = hermitian_connection(frame, bp, loop);
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < a_quasi.size(); ++k)
        worst = std::max(worst, std::abs(a_quasi[k] - a_herm[k]));
    CHECK(worst <= 1e-5);
    CHECK(std::abs(a_quasi[100]) > 1e-3); // the connections are not trivially zero
}

TEST_CASE("band path guards crossings")
{
    const auto crossing = crossing_model(0.0);
    PathSpec path;
    path.generator = "segment";
    path.closed = false;
    const int n = 64;
    for (int k = 0; k <= n; ++k) {
        ParameterPoint p(1);
        p << -0.5 + 1.0 * k / n;
        path.samples.push_back(p);
        path.param.push_back(static_cast<double>(k) / n);
    }
    CHECK_THROWS_AS(band_path(*crossing, path, 0), BandCrossingOnLoop);
}

TEST_CASE("berry_phase validates the loop")
{
    const auto model = example3();
    PathSpec open;
    open.generator = "arc";
    open.closed = false;
    for (int k = 0; k <= 32; ++k) {
        open.samples.push_back(point2(1.5, 3.0 * k / 32));
        open.param.push_back(3.0 * k / 32);
    }
    CHECK_THROWS_AS(berry_phase(*model, open, 0, FrameKind::quasi), PathNotClosed);
}

TEST_CASE("curvature relation F~ = F - 2 Delta at generic example2 points")
{
    const auto model = example2(pi / 3.0);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ur(0.15, 0.8);
    std::uniform_real_distribution<double> uth(0.0, 2 * pi);
    for (int trial = 0; trial < 8; ++trial) {
        const ParameterPoint p = point2(ur(rng), uth(rng));
        for (int band = 0; band < 2; ++band) {
            const BerryCurvatures bc = berry_curvatures(*model, p, band, 1, 0);
            CHECK(bc.relation_residual <= 1e-6);
            CHECK(bc.curl_agreement <= 1e-6);
        }
    }
}

TEST_CASE("example1: the two curvatures coincide (Delta = 0)")
{
    const auto model = example1_varying();
    const BerryCurvatures bc = berry_curvatures(*model, point2(0.45, 0.55), 0, 0, 1);
    CHECK(std::abs(bc.delta) <= 1e-8);
    CHECK(std::abs(bc.F_tilde - bc.F) <= 1e-6);
}

TEST_CASE("band curvatures of a 2x2 system sum to zero over the closed torus")
{
    const auto model = random_metric_family(31415);
    double integral = 0.0;
    const int n = 12;
    const double cell = (2 * pi / n) * (2 * pi / n);
    double max_pointwise = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const ParameterPoint p = point2(2 * pi * (i + 0.5) / n, 2 * pi * (j + 0.5) / n);
            const double f0 = berry_curvatures(*model, p, 0, 0, 1).F;
            const double f1 = berry_curvatures(*model, p, 1, 0, 1).F;
            integral += (f0 + f1) * cell;
            max_pointwise = std::max(max_pointwise, std::abs(f0 + f1));
        }
    CHECK(max_pointwise <= 1e-6);
    CHECK(std::abs(integral) <= 1e-6 * (2 * pi) * (2 * pi));
}
