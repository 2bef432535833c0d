// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/acceptance.hpp"

#include "hermitana/berry.hpp"
#include "hermitana/dynamics.hpp"
#include "hermitana/geometry.hpp"
#include "hermitana/linalg.hpp"
#include "hermitana/model.hpp"
#include "hermitana/spectra.hpp"
#include "hermitana/transport.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace hermitana {

namespace {

constexpr double pi = std::numbers::pi;
const double r_quantized = 2.0 * std::sqrt(2.0) / 3.0; // g(r) = 1

struct Checks {
    bool pass = true;
    std::ostringstream details;
    int count = 0;

    void note(const std::string& label, double value, const char* rel, double bound)
    {
        const bool ok = (rel[0] == '<') ? (value <= bound) : (value >= bound);
        pass = pass && ok;
        if (count++ > 0)
            details << "; ";
        details << label << " = " << value << " (" << rel << " " << bound << (ok ? "" : " FAILED")
                << ")";
    }

    void note_bool(const std::string& label, bool ok)
    {
        pass = pass && ok;
        if (count++ > 0)
            details << "; ";
        details << label << " = " << (ok ? "yes" : "NO (FAILED)");
    }
};

std::unique_ptr<QuasiHermitianModel> example1_varying()
{
    return example1(
        [](const ParameterPoint& q) {
            return 2.0 + 0.4 * std::sin(1.7 * q(0) + 0.3) * std::cos(1.3 * q(1) - 0.5);
        },
        [](const ParameterPoint& q) { return 1.0 + 0.3 * std::sin(q(0) + q(1) + 0.2); });
}

std::vector<ParameterPoint> sample_points(const QuasiHermitianModel& model, int n,
                                          std::mt19937_64& rng, double inset)
{
    std::vector<ParameterPoint> pts;
    pts.reserve(n);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        ParameterPoint p(model.param_count());
        for (int axis = 0; axis < model.param_count(); ++axis) {
            const AxisDomain& ax = model.axes()[axis];
            const double lo = ax.periodic ? ax.lo : ax.lo + inset * ax.span();
            const double hi = ax.periodic ? ax.hi : ax.hi - inset * ax.span();
            p(axis) = lo + (hi - lo) * uni(rng);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

double circular_distance(double a, double b)
{
    return std::abs(std::remainder(a - b, 2.0 * pi));
}

CriterionResult criterion1()
{
    Checks c;
    const auto varying = example1_varying();
    const auto grid = make_grid(*varying, 20);
    double max_g = 0.0, max_f = 0.0;
    for (const auto& p : grid) {
        const ConnectionSample g = connection_G(*varying, p);
        for (const auto& gm : g.per_axis)
            max_g = std::max(max_g, gm.norm());
        max_f = std::max(max_f, curvature_G(*varying, p, 0, 1).F.norm());
    }
    c.note("max ||G||", max_g, "<=", 1e-10);
    c.note("max ||F^G||", max_f, "<=", 1e-8);

    const auto constant = example1_constant(2.0, 1.0);
    std::vector<ParameterPoint> wp;
    ParameterPoint a(2), b(2), d(2);
    a << 0.2, 0.2;
    b << 0.8, 0.6;
    d << 0.5, 0.9;
    wp = {a, b, d};
    const PathSpec path = PathSpec::waypoints(*constant, wp, false, 64);
    const ProperFrame frame = proper_frame(*constant, path, identity2());
    const MappedHamiltonian mapped = mapped_hamiltonian(*constant, frame, path);
    const ComplexMatrix target = std::sqrt(3.0) * pauli_x();
    double worst = 0.0;
    for (const auto& ht : mapped.H_tilde)
        worst = std::max(worst, (ht - target).norm());
    c.note("max ||H~ - sqrt(3) sx||", worst, "<=", 1e-10);

    // obstruction classification: flat region, trivial contractible loop
    ParameterPoint q0(2), q1(2), q2(2), q3(2);
    q0 << 0.3, 0.3;
    q1 << 0.7, 0.3;
    q2 << 0.7, 0.7;
    q3 << 0.3, 0.7;
    const PathSpec rect = PathSpec::waypoints(*varying, {q0, q1, q2, q3}, true, 256);
    const ObstructionReport report = classify_obstruction(*varying, grid, {rect});
    c.note_bool("verdict none", report.verdict == Verdict::none);

    return {1, "example1 nullity", c.pass, c.details.str()};
}

CriterionResult criterion2()
{
    Checks c;
    const auto model = example2(pi / 2.0);
    ParameterPoint p(2);
    p << 0.6, 1.0;
    const CurvatureSample f = curvature_G(*model, p, 1, 0, 1e-4); // F^G_{theta r}
    const double expected = 0.585938 * pauli_z().norm();
    c.note("| ||F^G_{theta r}|| - 0.585938 ||sz|| |", std::abs(f.F.norm() - expected), "<=", 1e-5);
    const Eigen::Vector4cd comp = pauli_decompose(f.F);
    const double off_sz = std::sqrt(std::norm(comp(0)) + std::norm(comp(1)) + std::norm(comp(2)));
    c.note("non-sz component", off_sz, "<=", 1e-6);

    const auto grid = make_grid(*model, 20, 0.02, {{0.1, 0.9}, {0.0, 0.0}});
    const ObstructionReport report = classify_obstruction(*model, grid, {});
    c.note_bool("verdict geometric", report.verdict == Verdict::geometric);
    return {2, "example2 curvature", c.pass, c.details.str()};
}

CriterionResult criterion3()
{
    Checks c;
    const auto model = example2(pi / 2.0);

    ParameterPoint base(2);
    base << r_quantized, 0.0;
    const PathSpec loop0 = PathSpec::circle_by_label(*model, "theta", base, 1, 2048);
    const ProperFrame frame0 = proper_frame(*model, loop0, identity2());
    c.note("proper residual at r0", frame0.proper_residual, "<=", 1e-6);
    const MappedHamiltonian mapped0 = mapped_hamiltonian(*model, frame0, loop0);
    c.note("periodicity defect at r0", mapped0.periodicity_defect, "<=", 1e-6);

    ParameterPoint base6(2);
    base6 << 0.6, 0.0;
    const PathSpec loop6 = PathSpec::circle_by_label(*model, "theta", base6, 1, 2048);
    const ProperFrame frame6 = proper_frame(*model, loop6, identity2());
    const MappedHamiltonian mapped6 = mapped_hamiltonian(*model, frame6, loop6);
    c.note("periodicity defect at r=0.6", mapped6.periodicity_defect, ">=", 0.1);
    c.note("monodromy conjugation residual at r=0.6", mapped6.monodromy_residual, "<=", 1e-6);
    return {3, "proper-loop quantization", c.pass, c.details.str()};
}

CriterionResult criterion4()
{
    Checks c;
    const auto model = example3();
    ParameterPoint base(2);
    base << 1.5, 0.0;
    const PathSpec loop = PathSpec::circle_by_label(*model, "phi", base, 1, 2048);
    const HolonomyResult w = wilson_loop(*model, loop);
    c.note("||W + I||", (w.W + identity2()).norm(), "<=", 1e-6);

    const auto grid = make_grid(*model, 20);
    double max_f = 0.0;
    for (const auto& p : grid)
        max_f = std::max(max_f, curvature_G(*model, p, 0, 1).F.norm());
    c.note("max ||F^G||", max_f, "<=", 1e-8);

    const ObstructionReport report = classify_obstruction(*model, grid, {loop});
    c.note_bool("verdict topological", report.verdict == Verdict::topological);
    return {4, "example3 holonomy", c.pass, c.details.str()};
}

CriterionResult criterion5()
{
    Checks c;
    const auto model = example3();
    ParameterPoint base(2);
    base << 1.5, 0.0;
    const PathSpec loop = PathSpec::circle_by_label(*model, "phi", base, 1, 2048);

    const BerryPhaseResult herm = berry_phase(*model, loop, 1, FrameKind::hermitian);
    c.note("|gamma_H - (-pi)| mod 2pi", circular_distance(herm.phase, -pi), "<=", 1e-4);
    c.note("gamma_H step-doubling change", herm.convergence, "<=", 1e-4);

    const BerryPhaseResult quasi = berry_phase(*model, loop, 1, FrameKind::quasi);
    c.note("|gamma_NH| mod 2pi", circular_distance(quasi.phase, 0.0), "<=", 1e-4);
    c.note("gamma_NH step-doubling change", quasi.convergence, "<=", 1e-4);

    // local equality of the two connections along the loop, checked in a
    // twisted gauge so both sides are nontrivial
    BandPath bp = band_path(*model, loop, 1);
    for (std::size_t k = 0; k < bp.states.size(); ++k)
        bp.states[k] *= std::polar(1.0, 0.3 * std::sin(loop.param[k]));
    const ProperFrame frame = proper_frame(*model, loop, identity2());
    const auto a_quasi = qh_connection_along(bp, loop);
    const auto a_herm = hermitian_connection(frame, bp, loop);
    double worst = 0.0;
    double largest = 0.0;
    for (std::size_t k = 2; k + 2 < a_quasi.size(); ++k) {
        worst = std::max(worst, std::abs(a_quasi[k] - a_herm[k]));
        largest = std::max(largest, std::abs(a_quasi[k]));
    }
    c.note("max |A - A~| along loop", worst, "<=", 1e-5);
    c.note("max |A| (gauge-twisted, nontrivial)", largest, ">=", 0.1);
    return {5, "Berry-phase mismatch", c.pass, c.details.str()};
}

CriterionResult criterion6(std::uint64_t seed)
{
    Checks c;
    std::mt19937_64 rng(seed);
    std::vector<std::unique_ptr<QuasiHermitianModel>> models;
    models.push_back(example1_varying());
    models.push_back(example2(pi / 2.0));
    models.push_back(example3());
    models.push_back(random_metric_family(seed));

    double max_r22 = 0.0, max_r23 = 0.0, max_reality = 0.0;
    bool metrics_ok = true;
    for (const auto& model : models) {
        const auto pts = sample_points(*model, 50, rng, 0.05);
        for (const auto& p : pts) {
            metrics_ok = metrics_ok && validate_metric(model->metric(p)).ok;
            const IdentityResiduals ids = check_identities(*model, p, 0, 1);
            max_r22 = std::max(max_r22, ids.curl_commutator_residual);
            max_r23 = std::max(max_r23, ids.similarity_residual);
            const DeltaCurvature d = delta_curvature(*model, p, 0, 0, 1);
            max_reality = std::max(max_reality, d.reality_residual);
        }
    }
    c.note_bool("metric valid at all sampled points", metrics_ok);
    c.note("max curl-vs-commutator residual", max_r22, "<=", 1e-6);
    c.note("max F^K/F^G similarity residual", max_r23, "<=", 1e-6);
    c.note("max |Re <Psi|eta F^K|Psi>|", max_reality, "<=", 1e-8);
    return {6, "identity suite", c.pass, c.details.str()};
}

CriterionResult criterion7(std::uint64_t seed)
{
    Checks c;
    const auto model = example2(pi / 2.0);
    std::mt19937_64 rng(seed + 7);
    std::uniform_real_distribution<double> u_r(0.1, 0.85);
    std::uniform_real_distribution<double> u_th(0.0, 2.0 * pi);
    double max_rel = 0.0, max_curl = 0.0, max_imag = 0.0;
    for (int i = 0; i < 20; ++i) {
        ParameterPoint p(2);
        p << u_r(rng), u_th(rng);
        for (int band = 0; band < 2; ++band) {
            const BerryCurvatures bc = berry_curvatures(*model, p, band, 1, 0);
            max_rel = std::max(max_rel, bc.relation_residual);
            max_curl = std::max(max_curl, bc.curl_agreement);
            for (const ConnectionValue& a : qh_connection(*model, p, band))
                max_imag = std::max(max_imag, a.imag_residual);
        }
    }
    c.note("max |F~ - F + 2 Delta|", max_rel, "<=", 1e-6);
    c.note("max |F(Im-form) - F(loop)|", max_curl, "<=", 1e-6);
    c.note("max |Im A|", max_imag, "<=", 1e-8);
    return {7, "curvature-difference relation", c.pass, c.details.str()};
}

CriterionResult criterion8()
{
    Checks c;
    const auto model = example2(pi / 2.0);
    ParameterPoint base(2);
    base << 0.5, 0.0;
    const PathSpec loop = PathSpec::circle_by_label(*model, "theta", base, 1, 512);
    const ComplexMatrix u0a = identity2();
    const ComplexMatrix u0b = matrix_exponential(Complex(0, 0.7) * pauli_y());
    const TransportResult ta = transport_unitary(*model, loop, u0a);
    const TransportResult tb = transport_unitary(*model, loop, u0b);
    const ComplexMatrix c0 = tb.U_samples[0] * ta.U_samples[0].adjoint();
    double worst = 0.0;
    for (std::size_t k = 0; k < ta.U_samples.size(); ++k)
        worst = std::max(worst, (tb.U_samples[k] * ta.U_samples[k].adjoint() - c0).norm());
    c.note("max ||C_k - C_0||", worst, "<=", 1e-8);
    return {8, "proper-frame uniqueness (constant unitary)", c.pass, c.details.str()};
}

CriterionResult criterion9()
{
    Checks c;
    const auto model = example3();
    ParameterPoint start(2);
    start << 1.5, 0.0;
    const Schedule sched = Schedule::circle(*model, 1, start, 1, 10.0, 1e-3);
    const SystemSample sys0 = eval_point(*model, start);
    const BiorthogonalSystem eig0 = biorthogonal_eigensystem(sys0.H, sys0.eta);
    const ComplexVector psi0 = eig0.right_vecs[0];

    const Trajectory corrected = evolve_modified(*model, sched, psi0);
    c.note("eta-norm drift (modified)", corrected.max_norm_drift, "<=", 1e-8);
    const Trajectory naive = evolve_modified(*model, sched, psi0, true);
    c.note("eta-norm drift (naive)", naive.max_norm_drift, ">=", 1e-3);
    const EvolveComparison cmp = evolve_compare(*model, sched, psi0);
    c.note("max ||S Psi - psi||", cmp.max_deviation, "<=", 1e-6);
    return {9, "dynamics", c.pass, c.details.str()};
}

CriterionResult criterion10(std::uint64_t seed)
{
    Checks c;
    std::mt19937_64 rng(seed + 10);

    // transport composition: split at a random interior sample
    {
        const auto model = example2(pi / 2.0);
        ParameterPoint base(2);
        base << 0.5, 0.0;
        const PathSpec loop = PathSpec::circle_by_label(*model, "theta", base, 1, 256);
        std::uniform_int_distribution<int> u_split(8, 248);
        const int m = u_split(rng);
        PathSpec head, tail;
        head.generator = tail.generator = "waypoints";
        head.closed = tail.closed = false;
        head.samples.assign(loop.samples.begin(), loop.samples.begin() + m + 1);
        head.param.assign(loop.param.begin(), loop.param.begin() + m + 1);
        tail.samples.assign(loop.samples.begin() + m, loop.samples.end());
        tail.param.assign(loop.param.begin() + m, loop.param.end());
        const TransportResult whole = transport_unitary(*model, loop, identity2());
        const TransportResult first = transport_unitary(*model, head, identity2());
        const TransportResult second = transport_unitary(*model, tail, first.U_samples.back());
        c.note("composition split residual",
               (second.U_samples.back() - whole.U_samples.back()).norm(), "<=", 1e-9);
    }

    // loop reversal: W(C reversed) = W(C)^-1
    {
        const auto model = example3();
        ParameterPoint base(2);
        base << 1.3, 0.4;
        const PathSpec loop = PathSpec::circle_by_label(*model, "phi", base, 1, 512);
        const HolonomyResult w = wilson_loop(*model, loop);
        const HolonomyResult w_rev = wilson_loop(*model, loop.reversed());
        c.note("||W(reversed) - W^-1||", (w_rev.W - w.W.adjoint()).norm(), "<=", 1e-8);
    }

    // gauge covariance of the discrete phase and the connection formula
    {
        const auto model = example3();
        ParameterPoint base(2);
        base << 1.5, 0.0;
        const PathSpec loop = PathSpec::circle_by_label(*model, "phi", base, 1, 256);
        const BandPath bp = band_path(*model, loop, 1);
        const double reference = discrete_berry_phase(bp.states, bp.etas, loop.param);
        std::uniform_real_distribution<double> u_phase(0.0, 2.0 * pi);
        std::vector<ComplexVector> twisted = bp.states;
        for (auto& v : twisted)
            v *= std::polar(1.0, u_phase(rng));
        const double twisted_phase = discrete_berry_phase(twisted, bp.etas, loop.param);
        c.note("berry phase gauge shift", circular_distance(reference, twisted_phase), "<=", 1e-8);

        // pointwise: A -> A - d(chi)
        const SystemSample sys = eval_point(*model, base);
        const BiorthogonalSystem eig = biorthogonal_eigensystem(sys.H, sys.eta);
        const ComplexVector psi = eig.right_vecs[1];
        ComplexVector dpsi(2);
        dpsi << Complex(0.13, -0.22), Complex(-0.05, 0.4);
        const ComplexMatrix deta = metric_partial(*model, base, 1);
        const double chi = u_phase(rng);
        const double dchi = u_phase(rng) - pi;
        const ComplexVector psi2 = psi * std::polar(1.0, chi);
        const ComplexVector dpsi2 = (dpsi + Complex(0, 1) * dchi * psi) * std::polar(1.0, chi);
        const ConnectionValue a1 = qh_connection_value(psi, dpsi, sys.eta, deta);
        const ConnectionValue a2 = qh_connection_value(psi2, dpsi2, sys.eta, deta);
        c.note("connection gauge shift residual", std::abs(a2.value - (a1.value - dchi)), "<=",
               1e-10);
    }

    // small-loop Stokes: || log W + F dA || = O(dA^{3/2})
    {
        const auto model = example2(pi / 2.0);
        ParameterPoint center(2);
        center << 0.5, 1.0;
        const ComplexMatrix f = curvature_G(*model, center, 1, 0).F; // F_{theta r}
        auto stokes_residual = [&](double side) {
            ParameterPoint q0(2), q1(2), q2(2), q3(2);
            q0 << center(0) - side / 2.0, center(1) - side / 2.0;
            q1 << center(0) - side / 2.0, center(1) + side / 2.0; // +theta
            q2 << center(0) + side / 2.0, center(1) + side / 2.0; // +r
            q3 << center(0) + side / 2.0, center(1) - side / 2.0;
            const PathSpec rect = PathSpec::waypoints(*model, {q0, q1, q2, q3}, true, 512);
            const HolonomyResult w = wilson_loop(*model, rect);
            return (principal_log(w.W) + f * side * side).norm();
        };
        const double side = 0.05;
        const double r1 = stokes_residual(side);
        const double r2 = stokes_residual(side / std::sqrt(2.0)); // halves the area
        c.note("Stokes residual at dA", r1, "<=", 0.05 * f.norm() * side * side);
        c.note("Stokes residual decay ratio (expect ~2^1.5)", r1 / r2, ">=", 2.0);
    }
    return {10, "property suites", c.pass, c.details.str()};
}

} // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress)
{
    std::vector<std::function<CriterionResult()>> suite = {
        [] { return criterion1(); },
        [] { return criterion2(); },
        [] { return criterion3(); },
        [] { return criterion4(); },
        [] { return criterion5(); },
        [seed] { return criterion6(seed); },
        [seed] { return criterion7(seed); },
        [] { return criterion8(); },
        [] { return criterion9(); },
        [seed] { return criterion10(seed); },
    };

    std::vector<CriterionResult> results;
    results.reserve(suite.size());
    for (std::size_t i = 0; i < suite.size(); ++i) {
        CriterionResult result;
        try {
            result = suite[i]();
        } catch (const std::exception& e) {
            result.id = static_cast<int>(i + 1);
            result.name = "criterion " + std::to_string(i + 1);
            result.pass = false;
            result.details = std::string("exception: ") + e.what();
        }
        if (progress)
            (*progress) << (result.pass ? "PASS" : "FAIL") << "  criterion " << result.id << " ("
                        << result.name << "): " << result.details << "\n";
        results.push_back(std::move(result));
    }
    return results;
}

} // namespace hermitana
