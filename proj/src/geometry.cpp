// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/geometry.hpp"

#include "hermitana/linalg.hpp"
#include "hermitana/spectra.hpp"
#include "hermitana/stencil.hpp"

#include <cmath>
#include <functional>

namespace hermitana {

namespace {

void check_axes(const QuasiHermitianModel& model, int mu, int nu)
{
    if (mu < 0 || mu >= model.param_count() || nu < 0 || nu >= model.param_count() || mu == nu)
        throw OutOfDomain("curvature: invalid axis pair");
}

void check_stencil(const QuasiHermitianModel& model, const ParameterPoint& r, int axis,
                   double half_width)
{
    const AxisDomain& ax = model.axes()[axis];
    if (!ax.periodic && (r(axis) - half_width < ax.lo || r(axis) + half_width > ax.hi))
        throw StepTooLarge("stencil of half-width " + std::to_string(half_width) +
                           " leaves the domain of axis " + ax.label);
}

// 4th-order derivative along one axis of a matrix-valued map.
ComplexMatrix axis_derivative(const QuasiHermitianModel& model, const ParameterPoint& r, int axis,
                              double h,
                              const std::function<ComplexMatrix(const ParameterPoint&)>& f)
{
    check_stencil(model, r, axis, 2.0 * h);
    const auto offsets = central4_offsets(h);
    const auto weights = fd_weights(0.0, offsets, 1);
    ComplexMatrix d = ComplexMatrix::Zero(model.dim(), model.dim());
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        ParameterPoint shifted = r;
        shifted(axis) += offsets[k];
        d += weights[k] * f(shifted);
    }
    return d;
}

double step_for(const QuasiHermitianModel& model, int axis, double h)
{
    return h > 0.0 ? h : model.default_step(axis);
}

ComplexMatrix g_connection_axis(const QuasiHermitianModel& model, const ParameterPoint& r,
                                int axis, double h)
{
    const ComplexMatrix d_sqrt = axis_derivative(
        model, r, axis, step_for(model, axis, h),
        [&](const ParameterPoint& p) { return hermitian_sqrt(model.metric(p)).sqrt; });
    const ComplexMatrix inv_sqrt = hermitian_sqrt(model.metric(r)).inv_sqrt;
    return 0.5 * commutator(d_sqrt, inv_sqrt);
}

ComplexMatrix k_connection_axis(const QuasiHermitianModel& model, const ParameterPoint& r,
                                int axis, double h)
{
    const ComplexMatrix eta = model.metric(r);
    const ComplexMatrix d_eta = metric_partial(model, r, axis, h);
    return 0.5 * eta.partialPivLu().solve(d_eta);
}

void require_metric_valid(const QuasiHermitianModel& model, const ParameterPoint& r)
{
    const MetricValidation v = validate_metric(model.metric(r));
    if (!v.ok)
        throw MetricInvalid(model.name() + ": metric invalid (hermiticity residual " +
                            std::to_string(v.hermiticity_residual) + ", min eigenvalue " +
                            std::to_string(v.min_eigenvalue) + ")");
}

} // namespace

ConnectionSample connection_G(const QuasiHermitianModel& model, const ParameterPoint& r, double h)
{
    require_metric_valid(model, r);
    ConnectionSample out;
    out.point = r;
    out.kind = ConnectionKind::G;
    out.per_axis.reserve(model.param_count());
    for (int axis = 0; axis < model.param_count(); ++axis) {
        ComplexMatrix g = g_connection_axis(model, r, axis, h);
        out.anti_hermiticity_residual =
            std::max(out.anti_hermiticity_residual, (g + g.adjoint()).norm());
        out.per_axis.push_back(std::move(g));
    }
    return out;
}

ConnectionSample connection_K(const QuasiHermitianModel& model, const ParameterPoint& r, double h)
{
    require_metric_valid(model, r);
    ConnectionSample out;
    out.point = r;
    out.kind = ConnectionKind::K;
    out.per_axis.reserve(model.param_count());
    for (int axis = 0; axis < model.param_count(); ++axis)
        out.per_axis.push_back(k_connection_axis(model, r, axis, h));
    return out;
}

CurvatureSample curvature_G(const QuasiHermitianModel& model, const ParameterPoint& r, int mu,
                            int nu, double h)
{
    check_axes(model, mu, nu);
    CurvatureSample out;
    out.point = r;
    out.mu = mu;
    out.nu = nu;
    out.kind = ConnectionKind::G;
    const ComplexMatrix d_mu_g_nu =
        axis_derivative(model, r, mu, step_for(model, mu, h),
                        [&](const ParameterPoint& p) { return g_connection_axis(model, p, nu, h); });
    const ComplexMatrix d_nu_g_mu =
        axis_derivative(model, r, nu, step_for(model, nu, h),
                        [&](const ParameterPoint& p) { return g_connection_axis(model, p, mu, h); });
    const ComplexMatrix g_mu = g_connection_axis(model, r, mu, h);
    const ComplexMatrix g_nu = g_connection_axis(model, r, nu, h);
    out.F = d_mu_g_nu - d_nu_g_mu - commutator(g_mu, g_nu);
    return out;
}

CurvatureSample curvature_K(const QuasiHermitianModel& model, const ParameterPoint& r, int mu,
                            int nu, double h)
{
    check_axes(model, mu, nu);
    CurvatureSample out;
    out.point = r;
    out.mu = mu;
    out.nu = nu;
    out.kind = ConnectionKind::K;
    const ComplexMatrix d_mu_k_nu =
        axis_derivative(model, r, mu, step_for(model, mu, h),
                        [&](const ParameterPoint& p) { return k_connection_axis(model, p, nu, h); });
    const ComplexMatrix d_nu_k_mu =
        axis_derivative(model, r, nu, step_for(model, nu, h),
                        [&](const ParameterPoint& p) { return k_connection_axis(model, p, mu, h); });
    const ComplexMatrix k_mu = k_connection_axis(model, r, mu, h);
    const ComplexMatrix k_nu = k_connection_axis(model, r, nu, h);
    out.F = d_mu_k_nu - d_nu_k_mu + commutator(k_mu, k_nu);
    out.F_commutator_form = -commutator(k_mu, k_nu);
    return out;
}

IdentityResiduals check_identities(const QuasiHermitianModel& model, const ParameterPoint& r,
                                   int mu, int nu, double h)
{
    check_axes(model, mu, nu);
    const CurvatureSample fk = curvature_K(model, r, mu, nu, h);
    const ComplexMatrix comm = -fk.F_commutator_form; // [K_mu, K_nu]
    // d_mu K_nu - d_nu K_mu = F^K - [K_mu, K_nu]
    const ComplexMatrix curl_k = fk.F - comm;

    IdentityResiduals out;
    out.curl_commutator_residual = (curl_k + 2.0 * comm).norm();

    const CurvatureSample fg = curvature_G(model, r, mu, nu, h);
    const SqrtPair s = hermitian_sqrt(model.metric(r));
    out.similarity_residual = (fk.F + s.inv_sqrt * fg.F * s.sqrt).norm();
    return out;
}

DeltaCurvature delta_curvature(const QuasiHermitianModel& model, const ParameterPoint& r, int band,
                               int mu, int nu, double h)
{
    check_axes(model, mu, nu);
    const SystemSample sys = eval_point(model, r);
    const BiorthogonalSystem eig = biorthogonal_eigensystem(sys.H, sys.eta);
    if (band < 0 || band >= model.dim())
        throw DegenerateBand("delta_curvature: band index out of range");
    const double scale = std::max(1.0, sys.H.norm());
    for (Eigen::Index m = 0; m < eig.energies.size(); ++m) {
        if (m == band)
            continue;
        if (std::abs(eig.energies(m) - eig.energies(band)) < 1e-8 * scale)
            throw DegenerateBand("delta_curvature: band gap below 1e-8 * ||H||");
    }

    const ComplexVector& psi = eig.right_vecs[band];
    const CurvatureSample fk = curvature_K(model, r, mu, nu, h);
    const Complex expect_fk = psi.dot(sys.eta * (fk.F * psi));
    const Complex expect_comm = psi.dot(sys.eta * (-fk.F_commutator_form * psi));

    DeltaCurvature out;
    out.value = -0.5 * expect_fk.imag();
    out.form_agreement = std::abs(out.value - 0.5 * expect_comm.imag());
    out.reality_residual = std::abs(expect_fk.real());
    return out;
}

} // namespace hermitana
