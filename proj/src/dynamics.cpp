// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/dynamics.hpp"

#include "hermitana/geometry.hpp"
#include "hermitana/linalg.hpp"
#include "hermitana/transport.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>

namespace hermitana {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int step_count(const Schedule& schedule)
{
    if (!(schedule.T > 0.0) || !(schedule.dt > 0.0))
        throw ConfigInvalid("Schedule: T and dt must be positive");
    const int n = static_cast<int>(std::lround(schedule.T / schedule.dt));
    if (n < 1)
        throw ConfigInvalid("Schedule: dt larger than T");
    return n;
}

} // namespace

Schedule Schedule::circle(const QuasiHermitianModel& model, int axis, const ParameterPoint& base,
                          int winding, double T, double dt)
{
    if (axis < 0 || axis >= model.param_count())
        throw OutOfDomain("Schedule::circle: axis index out of range");
    Schedule s;
    const double rate = two_pi * winding / T;
    s.curve = [base, axis, rate](double t) {
        ParameterPoint p = base;
        p(axis) += rate * t;
        return p;
    };
    ParameterPoint d = ParameterPoint::Zero(base.size());
    d(axis) = rate;
    s.curve_derivative = [d](double) { return d; };
    s.T = T;
    s.dt = dt;
    return s;
}

ParameterPoint Schedule::derivative(double t) const
{
    if (curve_derivative)
        return curve_derivative(t);
    const double h = std::min(dt, 1e-5);
    return (curve(t + h) - curve(t - h)) / (2.0 * h);
}

namespace {

// d eta / dt by the chain rule from the metric partials
ComplexMatrix eta_dot(const QuasiHermitianModel& model, const Schedule& schedule, double t)
{
    const ParameterPoint r = schedule.curve(t);
    const ParameterPoint v = schedule.derivative(t);
    ComplexMatrix out = ComplexMatrix::Zero(model.dim(), model.dim());
    for (int axis = 0; axis < model.param_count(); ++axis)
        if (v(axis) != 0.0)
            out += metric_partial(model, r, axis) * v(axis);
    return out;
}

using Rhs = std::function<ComplexVector(double, const ComplexVector&)>;

ComplexVector rk4_step(const Rhs& f, double t, double dt, const ComplexVector& y)
{
    const ComplexVector k1 = f(t, y);
    const ComplexVector k2 = f(t + dt / 2.0, y + (dt / 2.0) * k1);
    const ComplexVector k3 = f(t + dt / 2.0, y + (dt / 2.0) * k2);
    const ComplexVector k4 = f(t + dt, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

Trajectory evolve_modified(const QuasiHermitianModel& model, const Schedule& schedule,
                           const ComplexVector& psi0, bool naive)
{
    if (psi0.norm() == 0.0)
        throw ConfigInvalid("evolve_modified: initial state is zero");
    const int n = step_count(schedule);

    const Rhs rhs = [&](double t, const ComplexVector& psi) -> ComplexVector {
        const ParameterPoint r = schedule.curve(t);
        const ComplexMatrix h = model.hamiltonian(r);
        ComplexVector out = Complex(0, -1) * (h * psi);
        if (!naive) {
            const ComplexMatrix eta = model.metric(r);
            const MetricValidation v = validate_metric(eta);
            if (!v.ok)
                throw MetricInvalid("evolve_modified: metric invalid at t = " + std::to_string(t));
            out -= 0.5 * eta.partialPivLu().solve(eta_dot(model, schedule, t) * psi);
        }
        return out;
    };

    Trajectory out;
    out.naive = naive;
    out.times.reserve(n + 1);
    out.states.reserve(n + 1);
    out.eta_norms.reserve(n + 1);

    ComplexVector psi = psi0;
    for (int k = 0; k <= n; ++k) {
        const double t = k * schedule.dt;
        out.times.push_back(t);
        out.states.push_back(psi);
        const ComplexMatrix eta = model.metric(schedule.curve(t));
        out.eta_norms.push_back(psi.dot(eta * psi).real());
        if (k < n)
            psi = rk4_step(rhs, t, schedule.dt, psi);
    }
    for (double nrm : out.eta_norms)
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(nrm - out.eta_norms.front()));
    if (!naive && out.max_norm_drift > 1e-3)
        throw StepUnstable("evolve_modified: eta-norm drift " +
                           std::to_string(out.max_norm_drift) + " signals dt too large");
    return out;
}

EvolveComparison evolve_compare(const QuasiHermitianModel& model, const Schedule& schedule,
                                const ComplexVector& psi0)
{
    const int n = step_count(schedule);

    // proper frame on the schedule's curve, sampled at half-steps so the
    // RK4 stages see a consistent S(t)
    PathSpec path;
    path.generator = "schedule";
    path.closed = false;
    for (int j = 0; j <= 2 * n; ++j) {
        const double t = schedule.T * j / (2.0 * n);
        path.samples.push_back(schedule.curve(t));
        path.param.push_back(t);
    }
    const ProperFrame frame =
        proper_frame(model, path, ComplexMatrix::Identity(model.dim(), model.dim()));

    std::vector<ComplexMatrix> h_tilde(2 * n + 1);
    for (int j = 0; j <= 2 * n; ++j) {
        const ComplexMatrix h = model.hamiltonian(path.samples[j]);
        const ComplexMatrix& s = frame.S_samples[j];
        h_tilde[j] = s * h * s.partialPivLu().inverse();
    }

    EvolveComparison out;
    out.modified = evolve_modified(model, schedule, psi0, false);

    ComplexVector psi = frame.S_samples[0] * psi0;
    out.mapped_states.reserve(n + 1);
    const Complex mi(0, -1);
    for (int k = 0; k <= n; ++k) {
        out.mapped_states.push_back(psi);
        const ComplexVector deviation = frame.S_samples[2 * k] * out.modified.states[k] - psi;
        out.max_deviation = std::max(out.max_deviation, deviation.norm());
        if (k < n) {
            // RK4 with H~ sampled on the half-step grid
            const ComplexMatrix& h0 = h_tilde[2 * k];
            const ComplexMatrix& h1 = h_tilde[2 * k + 1];
            const ComplexMatrix& h2 = h_tilde[2 * k + 2];
            const double dt = schedule.dt;
            const ComplexVector k1 = mi * (h0 * psi);
            const ComplexVector k2 = mi * (h1 * (psi + (dt / 2.0) * k1));
            const ComplexVector k3 = mi * (h1 * (psi + (dt / 2.0) * k2));
            const ComplexVector k4 = mi * (h2 * (psi + dt * k3));
            psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return out;
}

} // namespace hermitana
