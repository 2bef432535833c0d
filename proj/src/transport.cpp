// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/transport.hpp"

#include "hermitana/linalg.hpp"
#include "hermitana/parallel.hpp"
#include "hermitana/stencil.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hermitana {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool endpoints_match(const QuasiHermitianModel& model, const ParameterPoint& a,
                     const ParameterPoint& b)
{
    const auto& axes = model.axes();
    for (int i = 0; i < model.param_count(); ++i) {
        double diff = std::abs(a(i) - b(i));
        if (axes[i].periodic) {
            const double period = axes[i].span();
            diff = std::remainder(diff, period);
        }
        if (std::abs(diff) > 1e-9)
            return false;
    }
    return true;
}

} // namespace

PathSpec PathSpec::circle(const QuasiHermitianModel& model, int axis, const ParameterPoint& base,
                          int winding, int steps)
{
    if (axis < 0 || axis >= model.param_count())
        throw OutOfDomain("PathSpec::circle: axis index out of range");
    if (winding == 0)
        throw ConfigInvalid("PathSpec::circle: winding must be nonzero");
    if (steps < 8)
        throw ConfigInvalid("PathSpec::circle: need at least 8 steps");
    PathSpec path;
    path.closed = true;
    path.generator = "circle_" + model.axes()[axis].label;
    path.samples.reserve(steps + 1);
    path.param.reserve(steps + 1);
    const double total = two_pi * winding;
    for (int k = 0; k <= steps; ++k) {
        ParameterPoint p = base;
        p(axis) = base(axis) + total * k / steps;
        path.samples.push_back(std::move(p));
        path.param.push_back(total * k / steps);
    }
    path.validate(model);
    return path;
}

PathSpec PathSpec::circle_by_label(const QuasiHermitianModel& model, const std::string& label,
                                   const ParameterPoint& base, int winding, int steps)
{
    for (int i = 0; i < model.param_count(); ++i)
        if (model.axes()[i].label == label)
            return circle(model, i, base, winding, steps);
    throw ConfigInvalid("PathSpec::circle_by_label: model has no axis '" + label + "'");
}

PathSpec PathSpec::waypoints(const QuasiHermitianModel& model,
                             const std::vector<ParameterPoint>& points, bool closed, int steps)
{
    std::vector<ParameterPoint> pts = points;
    if (closed && !pts.empty() && (pts.front() - pts.back()).norm() > 1e-12)
        pts.push_back(pts.front());
    if (pts.size() < 2)
        throw ConfigInvalid("PathSpec::waypoints: need at least two points");

    std::vector<double> leg(pts.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        leg[i] = (pts[i + 1] - pts[i]).norm();
        if (leg[i] <= 0.0)
            throw ConfigInvalid("PathSpec::waypoints: zero-length leg");
        total += leg[i];
    }

    PathSpec path;
    path.closed = closed;
    path.generator = "waypoints";
    double t0 = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const int n = std::max(1, static_cast<int>(std::lround(steps * leg[i] / total)));
        for (int k = 0; k < n; ++k) {
            const double s = static_cast<double>(k) / n;
            path.samples.push_back(pts[i] + s * (pts[i + 1] - pts[i]));
            path.param.push_back(t0 + s * leg[i]);
        }
        t0 += leg[i];
    }
    path.samples.push_back(pts.back());
    path.param.push_back(total);
    path.validate(model);
    return path;
}

PathSpec PathSpec::refined() const
{
    PathSpec fine;
    fine.closed = closed;
    fine.generator = generator;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        fine.samples.push_back(samples[k]);
        fine.param.push_back(param[k]);
        fine.samples.push_back((samples[k] + samples[k + 1]) / 2.0);
        fine.param.push_back((param[k] + param[k + 1]) / 2.0);
    }
    fine.samples.push_back(samples.back());
    fine.param.push_back(param.back());
    return fine;
}

PathSpec PathSpec::coarsened() const
{
    if (segments() % 2 != 0)
        throw ConfigInvalid("PathSpec::coarsened: segment count must be even");
    PathSpec coarse;
    coarse.closed = closed;
    coarse.generator = generator;
    for (std::size_t k = 0; k < samples.size(); k += 2) {
        coarse.samples.push_back(samples[k]);
        coarse.param.push_back(param[k]);
    }
    return coarse;
}

PathSpec PathSpec::reversed() const
{
    PathSpec rev;
    rev.closed = closed;
    rev.generator = generator;
    const double total = param.back();
    for (std::size_t k = samples.size(); k-- > 0;) {
        rev.samples.push_back(samples[k]);
        rev.param.push_back(total - param[k]);
    }
    return rev;
}

void PathSpec::validate(const QuasiHermitianModel& model) const
{
    if (samples.size() != param.size())
        throw ConfigInvalid("PathSpec: samples/param size mismatch");
    if (segments() < 8)
        throw ConfigInvalid("PathSpec: need at least 8 segments");
    for (const auto& p : samples)
        model.require_in_domain(p);
    if (closed && !endpoints_match(model, samples.front(), samples.back()))
        throw PathNotClosed("PathSpec: endpoints differ (modulo periodicity)");
}

namespace {

TransportResult transport_impl(const QuasiHermitianModel& model, const PathSpec& path,
                               const ComplexMatrix& u0, double h)
{
    TransportResult out;
    const int n_seg = path.segments();
    out.step_count = n_seg;
    out.U_samples.reserve(n_seg + 1);
    out.U_samples.push_back(u0);
    for (int k = 0; k < n_seg; ++k) {
        const ParameterPoint mid = (path.samples[k] + path.samples[k + 1]) / 2.0;
        const ParameterPoint delta = path.samples[k + 1] - path.samples[k];
        const ConnectionSample g = connection_G(model, mid, h);
        ComplexMatrix a = ComplexMatrix::Zero(model.dim(), model.dim());
        for (int axis = 0; axis < model.param_count(); ++axis)
            if (delta(axis) != 0.0)
                a -= g.per_axis[axis] * delta(axis);
        out.U_samples.push_back(out.U_samples.back() * matrix_exponential(a));
    }
    for (const auto& u : out.U_samples)
        out.unitarity_residual = std::max(
            out.unitarity_residual,
            (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm());
    return out;
}

} // namespace

TransportResult transport_unitary(const QuasiHermitianModel& model, const PathSpec& path,
                                  const ComplexMatrix& u0, double h)
{
    path.validate(model);
    if (u0.rows() != model.dim() || u0.cols() != model.dim())
        throw DimensionMismatch("transport_unitary: U0 has wrong dimension");
    const double u0_residual =
        (u0.adjoint() * u0 - ComplexMatrix::Identity(u0.rows(), u0.cols())).norm();
    if (u0_residual > 1e-10)
        throw NotUnitary("transport_unitary: ||U0^dag U0 - I|| = " + std::to_string(u0_residual));

    TransportResult out = transport_impl(model, path, u0, h);
    if (path.segments() % 2 == 0) {
        const TransportResult coarse = transport_impl(model, path.coarsened(), u0, h);
        out.convergence_estimate = (out.U_samples.back() - coarse.U_samples.back()).norm();
    }
    return out;
}

HolonomyResult wilson_loop(const QuasiHermitianModel& model, const PathSpec& loop, double h,
                           double tol)
{
    loop.validate(model);
    if (!loop.closed)
        throw PathNotClosed("wilson_loop: path is not closed");
    const ComplexMatrix id = ComplexMatrix::Identity(model.dim(), model.dim());
    const TransportResult transport = transport_unitary(model, loop, id, h);

    HolonomyResult out;
    out.W = transport.U_samples.back();
    out.unitarity_residual = transport.unitarity_residual;
    out.convergence_estimate = transport.convergence_estimate;
    out.distance_to_identity = (out.W - id).norm();

    // min over phases of ||W - e^{i phi} I||: coarse grid, then a local
    // golden-section polish around the best grid point
    auto dist = [&](double phi) { return (out.W - std::polar(1.0, phi) * id).norm(); };
    const int grid_n = 4096;
    double best_phi = 0.0;
    double best = dist(0.0);
    for (int k = 1; k < grid_n; ++k) {
        const double phi = two_pi * k / grid_n;
        const double d = dist(phi);
        if (d < best) {
            best = d;
            best_phi = phi;
        }
    }
    double lo = best_phi - two_pi / grid_n;
    double hi = best_phi + two_pi / grid_n;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = dist(x1);
    double f2 = dist(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = dist(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = dist(x2);
        }
    }
    out.distance_to_center = std::min({best, f1, f2});
    out.nontrivial = out.distance_to_identity > tol;
    return out;
}

ProperFrame proper_frame(const QuasiHermitianModel& model, const PathSpec& path,
                         const ComplexMatrix& u0, double h)
{
    const TransportResult transport = transport_unitary(model, path, u0, h);
    const int n = path.segments();

    ProperFrame out;
    out.U_samples = transport.U_samples;
    out.S_samples.reserve(n + 1);
    std::vector<ComplexMatrix> etas;
    etas.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        etas.push_back(model.metric(path.samples[k]));
        const SqrtPair s = hermitian_sqrt(etas.back());
        out.S_samples.push_back(out.U_samples[k] * s.sqrt);
        out.factorization_residual =
            std::max(out.factorization_residual,
                     (out.S_samples.back().adjoint() * out.S_samples.back() - etas.back()).norm());
    }

    // proper condition along the path: S^dag dS/dt = (1/2) d eta/dt,
    // with both derivatives from the same 5-point stencil on the samples
    for (int k = 2; k <= n - 2; ++k) {
        const double nodes[5] = {path.param[k - 2], path.param[k - 1], path.param[k],
                                 path.param[k + 1], path.param[k + 2]};
        const auto w = fd_weights(path.param[k], nodes, 1);
        ComplexMatrix ds = ComplexMatrix::Zero(model.dim(), model.dim());
        ComplexMatrix deta = ComplexMatrix::Zero(model.dim(), model.dim());
        for (int j = 0; j < 5; ++j) {
            ds += w[j] * out.S_samples[k - 2 + j];
            deta += w[j] * etas[k - 2 + j];
        }
        const double resid = (out.S_samples[k].adjoint() * ds - 0.5 * deta).norm();
        out.proper_residual = std::max(out.proper_residual, resid);
    }
    return out;
}

MappedHamiltonian mapped_hamiltonian(const QuasiHermitianModel& model, const ProperFrame& frame,
                                     const PathSpec& path)
{
    if (frame.S_samples.size() != path.samples.size())
        throw DimensionMismatch("mapped_hamiltonian: frame and path lengths differ");

    MappedHamiltonian out;
    out.H_tilde.reserve(frame.S_samples.size());
    for (std::size_t k = 0; k < frame.S_samples.size(); ++k) {
        const ComplexMatrix& s = frame.S_samples[k];
        Eigen::JacobiSVD<ComplexMatrix> svd(s);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        if (!(smin > 0.0) || smax / smin > 1e12)
            throw SingularFrame("mapped_hamiltonian: frame condition number above 1e12 at sample " +
                                std::to_string(k));
        const ComplexMatrix h = model.hamiltonian(path.samples[k]);
        const ComplexMatrix ht = s * h * s.partialPivLu().inverse();
        out.hermiticity_residual = std::max(out.hermiticity_residual, (ht - ht.adjoint()).norm());
        out.H_tilde.push_back(ht);
    }

    if (path.closed) {
        out.periodicity_defect = (out.H_tilde.back() - out.H_tilde.front()).norm();
        const ComplexMatrix v = frame.U_samples.back() * frame.U_samples.front().adjoint();
        out.monodromy_residual =
            (out.H_tilde.back() - v * out.H_tilde.front() * v.adjoint()).norm();
    }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::none:
        return "none";
    case Verdict::geometric:
        return "geometric";
    case Verdict::topological:
        return "topological";
    }
    return "unknown";
}

ObstructionReport classify_obstruction(const QuasiHermitianModel& model,
                                       const std::vector<ParameterPoint>& grid,
                                       const std::vector<PathSpec>& loops, double tol, double h)
{
    ObstructionReport out;
    const int n_axes = model.param_count();
    std::vector<std::pair<int, int>> pairs;
    for (int mu = 0; mu < n_axes; ++mu)
        for (int nu = mu + 1; nu < n_axes; ++nu)
            pairs.emplace_back(mu, nu);

    std::vector<double> norms(grid.size(), 0.0);
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        double local = 0.0;
        for (const auto& [mu, nu] : pairs)
            local = std::max(local, curvature_G(model, grid[i], mu, nu, h).F.norm());
        norms[i] = local;
    });
    for (double v : norms)
        out.max_curvature_norm = std::max(out.max_curvature_norm, v);

    if (out.max_curvature_norm > tol) {
        out.verdict = Verdict::geometric;
        std::ostringstream notes;
        notes << "curvature sup-norm " << out.max_curvature_norm << " exceeds tol " << tol
              << " on the sampled region; " << loops.size()
              << " loop(s) skipped (geometric verdict short-circuits)";
        out.notes = notes.str();
        return out;
    }

    bool any_nontrivial = false;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        LoopFinding finding;
        finding.id = loops[i].generator + "#" + std::to_string(i);
        finding.holonomy = wilson_loop(model, loops[i], h, tol);
        any_nontrivial = any_nontrivial || finding.holonomy.nontrivial;
        out.loop_results.push_back(std::move(finding));
    }
    out.verdict = any_nontrivial ? Verdict::topological : Verdict::none;
    std::ostringstream notes;
    notes << "curvature sup-norm " << out.max_curvature_norm << " within tol " << tol << "; "
          << loops.size() << " loop(s) evaluated";
    out.notes = notes.str();
    return out;
}

std::vector<ParameterPoint> make_grid(const QuasiHermitianModel& model, int points_per_axis,
                                      double inset,
                                      const std::vector<std::pair<double, double>>& ranges)
{
    const int n_axes = model.param_count();
    std::vector<std::vector<double>> coords(n_axes);
    for (int axis = 0; axis < n_axes; ++axis) {
        const AxisDomain& ax = model.axes()[axis];
        double lo = ax.lo;
        double hi = ax.hi;
        const bool explicit_range =
            axis < static_cast<int>(ranges.size()) && ranges[axis].first < ranges[axis].second;
        if (explicit_range) {
            lo = ranges[axis].first;
            hi = ranges[axis].second;
        } else if (!ax.periodic) {
            lo += inset * ax.span();
            hi -= inset * ax.span();
        }
        for (int k = 0; k < points_per_axis; ++k) {
            if (ax.periodic && !explicit_range)
                coords[axis].push_back(lo + (hi - lo) * k / points_per_axis);
            else
                coords[axis].push_back(points_per_axis == 1
                                           ? (lo + hi) / 2.0
                                           : lo + (hi - lo) * k / (points_per_axis - 1));
        }
    }
    std::vector<ParameterPoint> grid;
    std::vector<int> idx(n_axes, 0);
    while (true) {
        ParameterPoint p(n_axes);
        for (int axis = 0; axis < n_axes; ++axis)
            p(axis) = coords[axis][idx[axis]];
        grid.push_back(std::move(p));
        int axis = 0;
        while (axis < n_axes && ++idx[axis] == points_per_axis) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == n_axes)
            break;
    }
    return grid;
}

} // namespace hermitana
