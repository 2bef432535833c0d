// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/berry.hpp"

#include "hermitana/geometry.hpp"
#include "hermitana/linalg.hpp"
#include "hermitana/stencil.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hermitana {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_to_pi(double x)
{
    x = std::remainder(x, 2.0 * pi);
    if (x <= -pi)
        x += 2.0 * pi;
    return x;
}

double circular_distance(double a, double b)
{
    return std::abs(std::remainder(a - b, 2.0 * pi));
}

// Eigenstate of `band` at r, band-matched to ref (by eta-overlap) and
// phase-aligned so <ref| eta_ref |state> is real positive. Returns the
// eta-normalized state.
ComplexVector matched_state(const QuasiHermitianModel& model, const ParameterPoint& r,
                            const ComplexVector& ref, const ComplexMatrix& eta_ref)
{
    const SystemSample sys = eval_point(model, r);
    const BiorthogonalSystem eig = biorthogonal_eigensystem(sys.H, sys.eta);
    int best = 0;
    double best_overlap = -1.0;
    Complex best_ov;
    for (std::size_t m = 0; m < eig.right_vecs.size(); ++m) {
        const Complex ov = ref.dot(eta_ref * eig.right_vecs[m]);
        if (std::abs(ov) > best_overlap) {
            best_overlap = std::abs(ov);
            best = static_cast<int>(m);
            best_ov = ov;
        }
    }
    if (best_overlap < 0.5)
        throw DegenerateBand("matched_state: ambiguous band tracking (max overlap " +
                             std::to_string(best_overlap) + ")");
    return eig.right_vecs[best] * std::polar(1.0, -std::arg(best_ov));
}

void require_band(const QuasiHermitianModel& model, int band)
{
    if (band < 0 || band >= model.dim())
        throw DegenerateBand("band index out of range");
}

void require_gap(const BiorthogonalSystem& eig, int band, double h_norm)
{
    const double scale = std::max(1.0, h_norm);
    for (Eigen::Index m = 0; m < eig.energies.size(); ++m) {
        if (m == band)
            continue;
        if (std::abs(eig.energies(m) - eig.energies(band)) < 1e-8 * scale)
            throw DegenerateBand("band gap below 1e-8 * ||H||");
    }
}

// Derivative of the tracked band state along one axis: 4-point stencil of
// states matched and aligned to the center state.
ComplexVector state_derivative(const QuasiHermitianModel& model, const ParameterPoint& r, int axis,
                               double h, const ComplexVector& center, const ComplexMatrix& eta)
{
    const auto offsets = central4_offsets(h);
    const auto weights = fd_weights(0.0, offsets, 1);
    ComplexVector d = ComplexVector::Zero(model.dim());
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        ParameterPoint p = r;
        p(axis) += offsets[j];
        d += weights[j] * matched_state(model, p, center, eta);
    }
    return d;
}

// Transport U from `from` to `to` along the straight coordinate segment
// (midpoint exponentials, `substeps` steps). Local-frame building block.
ComplexMatrix transport_segment(const QuasiHermitianModel& model, const ParameterPoint& from,
                                const ParameterPoint& to, int substeps, double h)
{
    ComplexMatrix u = ComplexMatrix::Identity(model.dim(), model.dim());
    for (int i = 0; i < substeps; ++i) {
        const ParameterPoint a = from + (to - from) * (static_cast<double>(i) / substeps);
        const ParameterPoint b = from + (to - from) * (static_cast<double>(i + 1) / substeps);
        const ParameterPoint mid = (a + b) / 2.0;
        const ParameterPoint delta = b - a;
        const ConnectionSample g = connection_G(model, mid, h);
        ComplexMatrix arg = ComplexMatrix::Zero(model.dim(), model.dim());
        for (int axis = 0; axis < model.param_count(); ++axis)
            if (delta(axis) != 0.0)
                arg -= g.per_axis[axis] * delta(axis);
        u = u * matrix_exponential(arg);
    }
    return u;
}

// arg of the plaquette link product around the square of side s centered
// on r in the (mu, nu) plane; gauge-invariant by construction.
double plaquette_phase(const QuasiHermitianModel& model, const ParameterPoint& r, int band, int mu,
                       int nu, double s)
{
    std::array<ParameterPoint, 4> corners = {r, r, r, r};
    const double signs_mu[4] = {-0.5, 0.5, 0.5, -0.5};
    const double signs_nu[4] = {-0.5, -0.5, 0.5, 0.5};
    for (int c = 0; c < 4; ++c) {
        corners[c](mu) += signs_mu[c] * s;
        corners[c](nu) += signs_nu[c] * s;
    }

    const SystemSample sys0 = eval_point(model, r);
    const BiorthogonalSystem eig0 = biorthogonal_eigensystem(sys0.H, sys0.eta);
    std::array<ComplexVector, 4> psi;
    psi[0] = matched_state(model, corners[0], eig0.right_vecs[band], sys0.eta);
    for (int c = 1; c < 4; ++c)
        psi[c] = matched_state(model, corners[c], psi[c - 1], model.metric(corners[c - 1]));

    Complex link_product = 1.0;
    for (int c = 0; c < 4; ++c) {
        const int d = (c + 1) % 4;
        const ComplexMatrix eta_mid = model.metric((corners[c] + corners[d]) / 2.0);
        link_product *= psi[c].dot(eta_mid * psi[d]);
    }
    return std::arg(link_product);
}

} // namespace

BandPath band_path(const QuasiHermitianModel& model, const PathSpec& path, int band)
{
    path.validate(model);
    require_band(model, band);

    BandPath bp;
    bp.band = band;
    const std::size_t n = path.samples.size();
    bp.states.reserve(n);
    bp.etas.reserve(n);
    bp.energies.reserve(n);
    try {
        {
            const SystemSample sys = eval_point(model, path.samples[0]);
            const BiorthogonalSystem eig = biorthogonal_eigensystem(sys.H, sys.eta);
            require_gap(eig, band, sys.H.norm());
            bp.states.push_back(eig.right_vecs[band]);
            bp.etas.push_back(sys.eta);
            bp.energies.push_back(eig.energies(band).real());
        }
        for (std::size_t k = 1; k < n; ++k) {
            const ComplexVector psi =
                matched_state(model, path.samples[k], bp.states.back(), bp.etas.back());
            const SystemSample sys = eval_point(model, path.samples[k]);
            bp.states.push_back(psi);
            bp.etas.push_back(sys.eta);
            // energy of the tracked state (eta-expectation of H)
            bp.energies.push_back(psi.dot(sys.eta * (sys.H * psi)).real());
        }
    } catch (const DegenerateSpectrum& e) {
        throw BandCrossingOnLoop(std::string("band_path: ") + e.what());
    } catch (const DegenerateBand& e) {
        throw BandCrossingOnLoop(std::string("band_path: ") + e.what());
    }
    return bp;
}

ConnectionValue qh_connection_value(const ComplexVector& psi, const ComplexVector& dpsi,
                                    const ComplexMatrix& eta, const ComplexMatrix& deta)
{
    const Complex expr =
        Complex(0, 1) * (psi.dot(eta * dpsi) + 0.5 * psi.dot(deta * psi));
    ConnectionValue out;
    out.value = expr.real();
    out.imag_residual = std::abs(expr.imag());
    return out;
}

std::vector<ConnectionValue> qh_connection(const QuasiHermitianModel& model,
                                           const ParameterPoint& r, int band, double h)
{
    require_band(model, band);
    const SystemSample sys = eval_point(model, r);
    const BiorthogonalSystem eig = biorthogonal_eigensystem(sys.H, sys.eta);
    require_gap(eig, band, sys.H.norm());
    const ComplexVector& psi = eig.right_vecs[band];

    std::vector<ConnectionValue> out;
    out.reserve(model.param_count());
    for (int axis = 0; axis < model.param_count(); ++axis) {
        const double step = h > 0.0 ? h : model.default_step(axis);
        // derivative of the eigensystem's own gauge: stencil states keep
        // their largest-component phase convention
        const auto offsets = central4_offsets(step);
        const auto weights = fd_weights(0.0, offsets, 1);
        ComplexVector dpsi = ComplexVector::Zero(model.dim());
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            ParameterPoint p = r;
            p(axis) += offsets[j];
            const SystemSample s = eval_point(model, p);
            const BiorthogonalSystem e = biorthogonal_eigensystem(s.H, s.eta);
            // match band by eta-overlap with the center state
            int best = 0;
            double best_abs = -1.0;
            for (std::size_t m = 0; m < e.right_vecs.size(); ++m) {
                const double a = std::abs(psi.dot(sys.eta * e.right_vecs[m]));
                if (a > best_abs) {
                    best_abs = a;
                    best = static_cast<int>(m);
                }
            }
            dpsi += weights[j] * e.right_vecs[best];
        }
        const ComplexMatrix deta = metric_partial(model, r, axis, h);
        out.push_back(qh_connection_value(psi, dpsi, sys.eta, deta));
    }
    return out;
}

namespace {

// -Im <v_k| m_k |dv/dt> along the samples; 5-point stencils, one-sided at
// the ends.
std::vector<double> connection_along(const std::vector<ComplexVector>& states,
                                     const std::vector<ComplexMatrix>& metrics,
                                     const std::vector<double>& t)
{
    const int n = static_cast<int>(states.size());
    std::vector<double> out(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const int lo = std::clamp(k - 2, 0, n - 5);
        double nodes[5];
        for (int j = 0; j < 5; ++j)
            nodes[j] = t[lo + j];
        const auto w = fd_weights(t[k], nodes, 1);
        ComplexVector dv = ComplexVector::Zero(states[0].size());
        for (int j = 0; j < 5; ++j)
            dv += w[j] * states[lo + j];
        out[k] = -(states[k].dot(metrics[k] * dv)).imag();
    }
    return out;
}

} // namespace

std::vector<double> qh_connection_along(const BandPath& bp, const PathSpec& path)
{
    return connection_along(bp.states, bp.etas, path.param);
}

std::vector<double> hermitian_connection(const ProperFrame& frame, const BandPath& bp,
                                         const PathSpec& path)
{
    if (frame.S_samples.size() != bp.states.size())
        throw DimensionMismatch("hermitian_connection: frame and band path lengths differ");
    const int dim = static_cast<int>(bp.states[0].size());
    std::vector<ComplexVector> mapped(bp.states.size());
    std::vector<ComplexMatrix> ids(bp.states.size(), ComplexMatrix::Identity(dim, dim));
    for (std::size_t k = 0; k < bp.states.size(); ++k)
        mapped[k] = frame.S_samples[k] * bp.states[k];
    return connection_along(mapped, ids, path.param);
}

double discrete_berry_phase(const std::vector<ComplexVector>& states,
                            const std::vector<ComplexMatrix>& metrics,
                            const std::vector<double>& t)
{
    const int n = static_cast<int>(states.size()) - 1;
    std::vector<ComplexVector> v = states;
    // parallel-transport gauge: make each forward overlap real positive
    for (int k = 1; k <= n; ++k) {
        const Complex ov = v[k - 1].dot(metrics[k - 1] * v[k]);
        v[k] *= std::polar(1.0, -std::arg(ov));
    }
    // trapezoid of the residual connection at interior samples
    double gamma = 0.0;
    for (int k = 1; k < n; ++k) {
        const double dt = (t[k + 1] - t[k - 1]) / 2.0;
        const ComplexVector dv = (v[k + 1] - v[k - 1]) / (t[k + 1] - t[k - 1]);
        gamma += -(v[k].dot(metrics[k] * dv)).imag() * dt;
    }
    // closing mismatch
    gamma += -std::arg(v[0].dot(metrics[0] * v[n]));
    return wrap_to_pi(gamma);
}

namespace {

double phase_once(const QuasiHermitianModel& model, const PathSpec& loop, int band,
                  FrameKind frame, double h)
{
    const BandPath bp = band_path(model, loop, band);
    if (frame == FrameKind::quasi)
        return discrete_berry_phase(bp.states, bp.etas, loop.param);

    const ProperFrame pf =
        proper_frame(model, loop, ComplexMatrix::Identity(model.dim(), model.dim()), h);
    std::vector<ComplexVector> mapped(bp.states.size());
    for (std::size_t k = 0; k < bp.states.size(); ++k)
        mapped[k] = pf.S_samples[k] * bp.states[k];
    const std::vector<ComplexMatrix> ids(bp.states.size(),
                                         ComplexMatrix::Identity(model.dim(), model.dim()));
    return discrete_berry_phase(mapped, ids, loop.param);
}

} // namespace

BerryPhaseResult berry_phase(const QuasiHermitianModel& model, const PathSpec& loop, int band,
                             FrameKind frame, double h)
{
    loop.validate(model);
    if (!loop.closed)
        throw PathNotClosed("berry_phase: loop is not closed");

    BerryPhaseResult out;
    out.phase = phase_once(model, loop, band, frame, h);
    if (loop.segments() % 2 == 0)
        out.convergence = circular_distance(out.phase,
                                            phase_once(model, loop.coarsened(), band, frame, h));
    return out;
}

BerryCurvatures berry_curvatures(const QuasiHermitianModel& model, const ParameterPoint& r,
                                 int band, int mu, int nu, double h)
{
    require_band(model, band);
    if (mu == nu)
        throw OutOfDomain("berry_curvatures: axes must differ");
    const SystemSample sys = eval_point(model, r);
    const BiorthogonalSystem eig = biorthogonal_eigensystem(sys.H, sys.eta);
    require_gap(eig, band, sys.H.norm());
    const ComplexVector& psi = eig.right_vecs[band];

    const double h_mu = h > 0.0 ? h : 1e-3 * model.axes()[mu].span();
    const double h_nu = h > 0.0 ? h : 1e-3 * model.axes()[nu].span();

    const ComplexVector dpsi_mu = state_derivative(model, r, mu, h_mu, psi, sys.eta);
    const ComplexVector dpsi_nu = state_derivative(model, r, nu, h_nu, psi, sys.eta);
    const ComplexMatrix deta_mu = metric_partial(model, r, mu);
    const ComplexMatrix deta_nu = metric_partial(model, r, nu);

    BerryCurvatures out;
    out.F = -2.0 * (dpsi_mu.dot(sys.eta * dpsi_nu) + 0.5 * psi.dot(deta_mu * dpsi_nu) +
                    0.5 * dpsi_mu.dot(deta_nu * psi))
                       .imag();

    // discrete loop integral of the connection (curl route), Richardson
    // extrapolated from two plaquette sizes
    const double s = std::min(h_mu, h_nu);
    const double f_s = -plaquette_phase(model, r, band, mu, nu, s) / (s * s);
    const double f_s2 = -plaquette_phase(model, r, band, mu, nu, s / 2.0) / (s * s / 4.0);
    out.F_loop = (4.0 * f_s2 - f_s) / 3.0;
    out.curl_agreement = std::abs(out.F - out.F_loop);

    // mapped states under a local proper frame transported from r
    const SqrtPair sqrt_c = hermitian_sqrt(sys.eta);
    auto mapped_ray = [&](int axis, double step) {
        const auto offsets = central4_offsets(step);
        const auto weights = fd_weights(0.0, offsets, 1);
        ComplexVector d = ComplexVector::Zero(model.dim());
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            ParameterPoint p = r;
            p(axis) += offsets[j];
            const ComplexVector psi_j = matched_state(model, p, psi, sys.eta);
            const ComplexMatrix u = transport_segment(model, r, p, 16, -1.0);
            const ComplexVector mapped = u * hermitian_sqrt(model.metric(p)).sqrt * psi_j;
            d += weights[j] * mapped;
        }
        return d;
    };
    const ComplexVector dmapped_mu = mapped_ray(mu, h_mu);
    const ComplexVector dmapped_nu = mapped_ray(nu, h_nu);
    out.F_tilde = -2.0 * (dmapped_mu.dot(dmapped_nu)).imag();

    out.delta = delta_curvature(model, r, band, mu, nu).value;
    out.relation_residual = std::abs(out.F_tilde - out.F + 2.0 * out.delta);
    return out;
}

} // namespace hermitana
