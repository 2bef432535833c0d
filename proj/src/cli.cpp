// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/cli.hpp"

#include "hermitana/acceptance.hpp"
#include "hermitana/berry.hpp"
#include "hermitana/dynamics.hpp"
#include "hermitana/geometry.hpp"
#include "hermitana/linalg.hpp"
#include "hermitana/model.hpp"
#include "hermitana/spectra.hpp"
#include "hermitana/transport.hpp"
#include "hermitana/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace hermitana::cli {

using nlohmann::json;

namespace {

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const ParameterPoint& p)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i)
        out.push_back(p(i));
    return out;
}

json to_json(const HolonomyResult& w)
{
    return {{"W", to_json(w.W)},
            {"distance_to_identity", w.distance_to_identity},
            {"distance_to_center", w.distance_to_center},
            {"nontrivial", w.nontrivial},
            {"unitarity_residual", w.unitarity_residual},
            {"convergence_estimate", w.convergence_estimate}};
}

json config_echo(const RunConfig& c)
{
    json fixed = json::object();
    for (const auto& [k, v] : c.fixed)
        fixed[k] = v;
    json params = json::object();
    for (const auto& [k, v] : c.model_params)
        params[k] = v;
    return {{"command", c.command},
            {"model", c.model},
            {"params", params},
            {"generator", c.generator},
            {"fixed", fixed},
            {"winding", c.winding},
            {"steps", c.steps},
            {"frame", c.frame},
            {"band", c.band},
            {"tol", c.tol},
            {"h", c.h},
            {"grid_n", c.grid_n},
            {"mu", c.mu},
            {"nu", c.nu},
            {"points", c.points},
            {"seed", c.seed},
            {"T", c.T},
            {"dt", c.dt},
            {"naive", c.naive},
            {"compare", c.compare}};
}

// Base point for circle generators: fixed coordinates where given, axis
// midpoint (non-periodic) or lower edge (periodic) otherwise.
ParameterPoint base_point(const QuasiHermitianModel& model,
                          const std::map<std::string, double>& fixed)
{
    ParameterPoint p(model.param_count());
    for (int axis = 0; axis < model.param_count(); ++axis) {
        const AxisDomain& ax = model.axes()[axis];
        auto it = fixed.find(ax.label);
        if (it != fixed.end())
            p(axis) = it->second;
        else
            p(axis) = ax.periodic ? ax.lo : (ax.lo + ax.hi) / 2.0;
    }
    return p;
}

std::string default_generator(const QuasiHermitianModel& model)
{
    for (const AxisDomain& ax : model.axes())
        if (ax.periodic)
            return "circle_" + ax.label;
    return "waypoints";
}

PathSpec build_path(const QuasiHermitianModel& model, const RunConfig& c, bool need_closed)
{
    std::string gen = c.generator.empty() ? default_generator(model) : c.generator;
    if (gen.rfind("circle_", 0) == 0) {
        const std::string label = gen.substr(7);
        return PathSpec::circle_by_label(model, label, base_point(model, c.fixed), c.winding,
                                         c.steps);
    }
    if (gen == "waypoints") {
        std::vector<ParameterPoint> pts;
        if (c.waypoints.empty()) {
            // default rectangle loop in the first two axes, inset 25%
            if (model.param_count() < 2)
                throw ConfigInvalid("waypoints generator needs explicit points for 1-axis models");
            const AxisDomain& a0 = model.axes()[0];
            const AxisDomain& a1 = model.axes()[1];
            const double x0 = a0.lo + 0.25 * a0.span(), x1 = a0.lo + 0.75 * a0.span();
            const double y0 = a1.lo + 0.25 * a1.span(), y1 = a1.lo + 0.75 * a1.span();
            ParameterPoint q = base_point(model, c.fixed);
            for (auto [x, y] : {std::pair{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}) {
                ParameterPoint p = q;
                p(0) = x;
                p(1) = y;
                pts.push_back(p);
            }
        } else {
            for (const auto& coords : c.waypoints) {
                ParameterPoint p(coords.size());
                for (std::size_t i = 0; i < coords.size(); ++i)
                    p(i) = coords[i];
                pts.push_back(std::move(p));
            }
        }
        return PathSpec::waypoints(model, pts, need_closed ? true : c.closed, c.steps);
    }
    throw ConfigInvalid("unknown path generator '" + gen + "'");
}

Schedule build_schedule(const QuasiHermitianModel& model, const RunConfig& c)
{
    const std::string gen = c.generator.empty() ? default_generator(model) : c.generator;
    if (gen.rfind("circle_", 0) == 0) {
        const std::string label = gen.substr(7);
        for (int axis = 0; axis < model.param_count(); ++axis)
            if (model.axes()[axis].label == label)
                return Schedule::circle(model, axis, base_point(model, c.fixed), c.winding, c.T,
                                        c.dt);
        throw ConfigInvalid("schedule: model has no axis '" + label + "'");
    }
    // piecewise-linear waypoint schedule over [0, T]
    PathSpec path = build_path(model, c, false);
    Schedule s;
    s.T = c.T;
    s.dt = c.dt;
    const double total = path.param.back();
    s.curve = [path, total, T = c.T](double t) {
        double u = std::clamp(t / T, 0.0, 1.0) * total;
        std::size_t k = 1;
        while (k + 1 < path.param.size() && path.param[k] < u)
            ++k;
        const double t0 = path.param[k - 1], t1 = path.param[k];
        const double w = (u - t0) / (t1 - t0);
        return ((1.0 - w) * path.samples[k - 1] + w * path.samples[k]).eval();
    };
    return s;
}

std::vector<std::pair<double, double>> grid_ranges(const RunConfig& c)
{
    std::vector<std::pair<double, double>> ranges;
    for (std::size_t i = 0; i < c.grid_min.size() && i < c.grid_max.size(); ++i)
        ranges.emplace_back(c.grid_min[i], c.grid_max[i]);
    return ranges;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigInvalid("cannot open CSV output '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    out.precision(17);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void append_matrix_columns(std::vector<std::string>& header, const std::string& prefix, int dim)
{
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            header.push_back(prefix + "_" + std::to_string(i) + std::to_string(j) + "_re");
            header.push_back(prefix + "_" + std::to_string(i) + std::to_string(j) + "_im");
        }
}

void append_matrix_values(std::vector<double>& row, const ComplexMatrix& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j).real());
            row.push_back(m(i, j).imag());
        }
}

int cmd_analyze(const RunConfig& c, const QuasiHermitianModel& model, json& results)
{
    const auto grid = make_grid(model, c.grid_n, 0.02, grid_ranges(c));
    std::vector<PathSpec> loops;
    if (!c.generator.empty()) {
        loops.push_back(build_path(model, c, true));
    } else {
        for (int axis = 0; axis < model.param_count(); ++axis)
            if (model.axes()[axis].periodic)
                loops.push_back(
                    PathSpec::circle(model, axis, base_point(model, c.fixed), 1, c.steps));
        if (loops.empty()) {
            RunConfig rect = c;
            rect.generator = "waypoints";
            loops.push_back(build_path(model, rect, true));
        }
    }
    const ObstructionReport report = classify_obstruction(model, grid, loops, c.tol, c.h);

    json loop_json = json::array();
    for (const auto& finding : report.loop_results)
        loop_json.push_back({{"id", finding.id}, {"holonomy", to_json(finding.holonomy)}});

    // instantaneous hermitianization at the grid center as a sample
    const ParameterPoint center = base_point(model, c.fixed);
    const SystemSample sys = eval_point(model, center);
    const SqrtPair s = hermitian_sqrt(sys.eta);
    const ComplexMatrix h_tilde = s.sqrt * sys.H * s.inv_sqrt;

    results = {{"verdict", to_string(report.verdict)},
               {"max_curvature_norm", report.max_curvature_norm},
               {"grid_points", grid.size()},
               {"loops", loop_json},
               {"notes", report.notes},
               {"sample_hermitianization",
                {{"point", to_json(center)},
                 {"H_tilde", to_json(h_tilde)},
                 {"hermiticity_residual", (h_tilde - h_tilde.adjoint()).norm()},
                 {"qh_residual", sys.qh_residual}}}};
    return report.verdict == Verdict::none ? 0 : 2;
}

int cmd_wilson(const RunConfig& c, const QuasiHermitianModel& model, json& results)
{
    const PathSpec loop = build_path(model, c, true);
    const HolonomyResult w = wilson_loop(model, loop, c.h, c.tol);
    results = to_json(w);
    results["loop"] = {{"generator", loop.generator}, {"steps", loop.segments()}};
    return w.nontrivial ? 2 : 0;
}

int cmd_berry(const RunConfig& c, const QuasiHermitianModel& model, json& results)
{
    const PathSpec loop = build_path(model, c, true);
    const FrameKind frame = c.frame == "quasi" ? FrameKind::quasi : FrameKind::hermitian;
    const BerryPhaseResult phase = berry_phase(model, loop, c.band, frame, c.h);
    results = {{"phase", phase.phase},
               {"convergence_estimate", phase.convergence},
               {"band", c.band},
               {"frame", c.frame},
               {"loop", {{"generator", loop.generator}, {"steps", loop.segments()}}}};
    return 0;
}

int cmd_curvature(const RunConfig& c, const QuasiHermitianModel& model, json& results)
{
    const auto grid = make_grid(model, c.grid_n, 0.02, grid_ranges(c));
    double max_fg = 0.0, max_fk = 0.0;
    std::vector<double> max_delta(model.dim(), 0.0);
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (const auto& p : grid) {
        const CurvatureSample fg = curvature_G(model, p, c.mu, c.nu, c.h);
        const CurvatureSample fk = curvature_K(model, p, c.mu, c.nu, c.h);
        max_fg = std::max(max_fg, fg.F.norm());
        max_fk = std::max(max_fk, fk.F.norm());
        std::vector<double> row;
        for (Eigen::Index i = 0; i < p.size(); ++i)
            row.push_back(p(i));
        row.push_back(fg.F.norm());
        row.push_back(fk.F.norm());
        for (int band = 0; band < model.dim(); ++band) {
            const double d = delta_curvature(model, p, band, c.mu, c.nu, c.h).value;
            max_delta[band] = std::max(max_delta[band], std::abs(d));
            row.push_back(d);
        }
        rows.push_back(std::move(row));
    }
    if (!c.csv.empty()) {
        std::vector<std::string> header;
        for (const auto& ax : model.axes())
            header.push_back(ax.label);
        header.push_back("F_G_fro");
        header.push_back("F_K_fro");
        for (int band = 0; band < model.dim(); ++band)
            header.push_back("delta_band" + std::to_string(band));
        write_csv(c.csv, header, rows);
    }
    results = {{"max_F_G_norm", max_fg},
               {"max_F_K_norm", max_fk},
               {"max_abs_delta", max_delta},
               {"grid_points", grid.size()},
               {"axes", {c.mu, c.nu}}};
    return 0;
}

int cmd_frame(const RunConfig& c, const QuasiHermitianModel& model, json& results)
{
    const PathSpec path = build_path(model, c, false);
    const ProperFrame frame =
        proper_frame(model, path, ComplexMatrix::Identity(model.dim(), model.dim()), c.h);
    const MappedHamiltonian mapped = mapped_hamiltonian(model, frame, path);
    results = {{"proper_residual", frame.proper_residual},
               {"factorization_residual", frame.factorization_residual},
               {"hermiticity_residual", mapped.hermiticity_residual},
               {"periodicity_defect", mapped.periodicity_defect},
               {"monodromy_residual", mapped.monodromy_residual},
               {"loop", {{"generator", path.generator}, {"steps", path.segments()}}},
               {"H_tilde_start", to_json(mapped.H_tilde.front())},
               {"H_tilde_end", to_json(mapped.H_tilde.back())}};
    if (!c.csv.empty()) {
        std::vector<std::string> header = {"step", "t"};
        for (const auto& ax : model.axes())
            header.push_back(ax.label);
        header.push_back("factorization_residual");
        header.push_back("hermiticity_residual");
        append_matrix_columns(header, "H_tilde", model.dim());
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < path.samples.size(); ++k) {
            std::vector<double> row = {static_cast<double>(k), path.param[k]};
            for (Eigen::Index i = 0; i < path.samples[k].size(); ++i)
                row.push_back(path.samples[k](i));
            const ComplexMatrix eta = model.metric(path.samples[k]);
            row.push_back((frame.S_samples[k].adjoint() * frame.S_samples[k] - eta).norm());
            row.push_back((mapped.H_tilde[k] - mapped.H_tilde[k].adjoint()).norm());
            append_matrix_values(row, mapped.H_tilde[k]);
            rows.push_back(std::move(row));
        }
        write_csv(c.csv, header, rows);
    }
    return 0;
}

int cmd_evolve(const RunConfig& c, const QuasiHermitianModel& model, json& results)
{
    const Schedule sched = build_schedule(model, c);
    const ParameterPoint start = sched.curve(0.0);
    const SystemSample sys0 = eval_point(model, start);
    const BiorthogonalSystem eig0 = biorthogonal_eigensystem(sys0.H, sys0.eta);
    const ComplexVector psi0 = eig0.right_vecs[c.band];

    const Trajectory traj = evolve_modified(model, sched, psi0, c.naive);
    results = {{"eta_norm_drift", traj.max_norm_drift},
               {"naive", traj.naive},
               {"T", sched.T},
               {"dt", sched.dt},
               {"initial_band", c.band},
               {"steps", traj.times.size() - 1}};
    if (c.compare) {
        const EvolveComparison cmp = evolve_compare(model, sched, psi0);
        results["frame_equivalence_deviation"] = cmp.max_deviation;
    }
    if (!c.csv.empty()) {
        std::vector<std::string> header = {"step", "t", "eta_norm"};
        for (int i = 0; i < model.dim(); ++i) {
            header.push_back("psi_" + std::to_string(i) + "_re");
            header.push_back("psi_" + std::to_string(i) + "_im");
        }
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            std::vector<double> row = {static_cast<double>(k), traj.times[k], traj.eta_norms[k]};
            for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) {
                row.push_back(traj.states[k](i).real());
                row.push_back(traj.states[k](i).imag());
            }
            rows.push_back(std::move(row));
        }
        write_csv(c.csv, header, rows);
    }
    return 0;
}

int cmd_identities(const RunConfig& c, const QuasiHermitianModel& model, json& results)
{
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double max_r22 = 0.0, max_r23 = 0.0, max_reality = 0.0, max_qh = 0.0;
    for (int i = 0; i < c.points; ++i) {
        ParameterPoint p(model.param_count());
        for (int axis = 0; axis < model.param_count(); ++axis) {
            const AxisDomain& ax = model.axes()[axis];
            const double lo = ax.periodic ? ax.lo : ax.lo + 0.05 * ax.span();
            const double hi = ax.periodic ? ax.hi : ax.hi - 0.05 * ax.span();
            p(axis) = lo + (hi - lo) * uni(rng);
        }
        const IdentityResiduals ids = check_identities(model, p, c.mu, c.nu, c.h);
        max_r22 = std::max(max_r22, ids.curl_commutator_residual);
        max_r23 = std::max(max_r23, ids.similarity_residual);
        max_reality =
            std::max(max_reality, delta_curvature(model, p, c.band, c.mu, c.nu, c.h).reality_residual);
        max_qh = std::max(max_qh, eval_point(model, p).qh_residual);
    }
    results = {{"points", c.points},
               {"max_curl_commutator_residual", max_r22},
               {"max_similarity_residual", max_r23},
               {"max_reality_residual", max_reality},
               {"max_qh_residual", max_qh},
               {"seed", c.seed}};
    return 0;
}

int cmd_reproduce(const RunConfig& c, json& results, std::ostream& out)
{
    const auto criteria = run_acceptance(c.seed, &out);
    bool all_pass = true;
    json list = json::array();
    for (const auto& r : criteria) {
        all_pass = all_pass && r.pass;
        list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
    }
    results = {{"criteria", list}, {"all_pass", all_pass}};
    out << (all_pass ? "all criteria passed" : "SOME CRITERIA FAILED") << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

void RunConfig::validate() const
{
    static const std::vector<std::string> commands = {"analyze", "wilson",    "berry",
                                                      "curvature", "frame",   "evolve",
                                                      "identities", "reproduce-paper"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
        throw ConfigInvalid("unknown command '" + command + "'");
    if (tol <= 0.0)
        throw ConfigInvalid("tol must be positive");
    if (steps < 8)
        throw ConfigInvalid("steps must be at least 8");
    if (grid_n < 1)
        throw ConfigInvalid("grid_n must be at least 1");
    if (band < 0)
        throw ConfigInvalid("band must be non-negative");
    if (frame != "quasi" && frame != "hermitian")
        throw ConfigInvalid("frame must be 'quasi' or 'hermitian'");
    if (!(T > 0.0) || !(dt > 0.0))
        throw ConfigInvalid("T and dt must be positive");
}

void apply_config_json(RunConfig& config, const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("config JSON parse error: ") + e.what());
    }
    try {
        if (j.contains("command"))
            config.command = j["command"].get<std::string>();
        if (j.contains("model")) {
            if (j["model"].is_string())
                config.model = j["model"].get<std::string>();
            else {
                config.model = j["model"].value("name", config.model);
            }
        }
        if (j.contains("params"))
            for (auto& [k, v] : j["params"].items())
                config.model_params[k] = v.get<double>();
        const json* path = nullptr;
        if (j.contains("path"))
            path = &j["path"];
        if (j.contains("loop"))
            path = &j["loop"];
        if (j.contains("schedule")) {
            const json& s = j["schedule"];
            config.T = s.value("T", config.T);
            config.dt = s.value("dt", config.dt);
            if (s.contains("path"))
                path = &s["path"];
        }
        if (path) {
            config.generator = path->value("generator", config.generator);
            config.winding = path->value("winding", config.winding);
            config.steps = path->value("steps", config.steps);
            config.closed = path->value("closed", config.closed);
            if (path->contains("fixed"))
                for (auto& [k, v] : (*path)["fixed"].items())
                    config.fixed[k] = v.get<double>();
            if (path->contains("points")) {
                config.waypoints.clear();
                for (const auto& pt : (*path)["points"])
                    config.waypoints.push_back(pt.get<std::vector<double>>());
            }
        }
        config.frame = j.value("frame", config.frame);
        config.band = j.value("band", config.band);
        config.tol = j.value("tol", config.tol);
        config.h = j.value("h", config.h);
        config.grid_n = j.value("grid_n", config.grid_n);
        config.mu = j.value("mu", config.mu);
        config.nu = j.value("nu", config.nu);
        config.points = j.value("points", config.points);
        config.seed = j.value("seed", config.seed);
        config.T = j.value("T", config.T);
        config.dt = j.value("dt", config.dt);
        config.naive = j.value("naive", config.naive);
        config.compare = j.value("compare", config.compare);
        config.output = j.value("output", config.output);
        config.csv = j.value("csv", config.csv);
        if (j.contains("grid_min"))
            config.grid_min = j["grid_min"].get<std::vector<double>>();
        if (j.contains("grid_max"))
            config.grid_max = j["grid_max"].get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("config JSON field error: ") + e.what());
    }
}

RunConfig parse_args(int argc, const char* const* argv)
{
    RunConfig config;
    CLI::App app{"hermitana: obstruction analysis for quasi-Hermitian systems"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");

    std::vector<std::string> param_kv;
    std::vector<std::string> fixed_kv;
    double b_val = NAN, gamma_val = NAN, alpha_val = NAN;
    double r_val = NAN, theta_val = NAN, rr_val = NAN, phi_val = NAN;

    auto add_common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print this help message and exit");
        sub->add_option("--model", config.model, "built-in model name");
        sub->add_option("--param", param_kv, "model parameter key=value (repeatable)");
        sub->add_option("--B", b_val, "example1 parameter B");
        sub->add_option("--gamma", gamma_val, "example1 parameter gamma");
        sub->add_option("--alpha", alpha_val, "example2 parameter alpha");
        sub->add_option("--loop,--generator", config.generator,
                        "path generator: circle_<axis> or waypoints");
        sub->add_option("--fixed", fixed_kv, "fixed coordinate label=value (repeatable)");
        sub->add_option("--r", r_val, "fixed r coordinate");
        sub->add_option("--theta", theta_val, "fixed theta coordinate");
        sub->add_option("--R", rr_val, "fixed R coordinate");
        sub->add_option("--phi", phi_val, "fixed phi coordinate");
        sub->add_option("--winding", config.winding, "loop winding count");
        sub->add_option("--steps", config.steps, "path segments");
        sub->add_option("--tol", config.tol, "verdict tolerance");
        sub->add_option("--h", config.h, "finite-difference step (<=0: per-axis default)");
        sub->add_option("--seed", config.seed, "seed for randomized sweeps");
        sub->add_option("--output,-o", config.output, "report JSON path (default stdout)");
        sub->add_option("--csv", config.csv, "per-step CSV path");
        sub->add_option("--config", config.config_file, "JSON config file overriding flags");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full obstruction classification");
    add_common(analyze);
    analyze->add_option("--grid", config.grid_n, "grid points per axis");
    analyze->add_option("--grid-min", config.grid_min, "per-axis grid lower bounds");
    analyze->add_option("--grid-max", config.grid_max, "per-axis grid upper bounds");

    CLI::App* wilson = app.add_subcommand("wilson", "Wilson loop of the metric connection");
    add_common(wilson);

    CLI::App* berry = app.add_subcommand("berry", "Berry phase around a loop");
    add_common(berry);
    berry->add_option("--frame", config.frame, "quasi | hermitian");
    berry->add_option("--band", config.band, "band index (ascending energies)");

    CLI::App* curvature = app.add_subcommand("curvature", "grid sweep of F^G, F^K and Delta");
    add_common(curvature);
    curvature->add_option("--grid", config.grid_n, "grid points per axis");
    curvature->add_option("--grid-min", config.grid_min, "per-axis grid lower bounds");
    curvature->add_option("--grid-max", config.grid_max, "per-axis grid upper bounds");
    curvature->add_option("--mu", config.mu, "first axis index");
    curvature->add_option("--nu", config.nu, "second axis index");

    CLI::App* frame = app.add_subcommand("frame", "proper-frame diagnostics along a path");
    add_common(frame);

    CLI::App* evolve = app.add_subcommand("evolve", "modified Schrodinger evolution");
    add_common(evolve);
    evolve->add_option("--T", config.T, "total time");
    evolve->add_option("--dt", config.dt, "time step");
    evolve->add_option("--band", config.band, "initial eigenstate band");
    evolve->add_flag("--naive", config.naive, "drop the metric correction (non-physical)");
    evolve->add_flag("--compare", config.compare, "also check Hermitian-frame equivalence");

    CLI::App* identities = app.add_subcommand("identities", "connection identity residual suite");
    add_common(identities);
    identities->add_option("--points", config.points, "number of sampled points");
    identities->add_option("--mu", config.mu, "first axis index");
    identities->add_option("--nu", config.nu, "second axis index");
    identities->add_option("--band", config.band, "band for the reality check");

    CLI::App* reproduce = app.add_subcommand("reproduce-paper", "run the full reproduction suite");
    add_common(reproduce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        throw HelpRequested{app.help(), 0};
    } catch (const CLI::ParseError& e) {
        throw ConfigInvalid(std::string("argument error: ") + e.what());
    }

    config.command = app.get_subcommands().front()->get_name();

    auto parse_kv = [](const std::string& item, std::map<std::string, double>& target) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("expected key=value, got '" + item + "'");
        try {
            target[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigInvalid("bad numeric value in '" + item + "'");
        }
    };
    for (const auto& item : param_kv)
        parse_kv(item, config.model_params);
    for (const auto& item : fixed_kv)
        parse_kv(item, config.fixed);
    if (!std::isnan(b_val))
        config.model_params["B"] = b_val;
    if (!std::isnan(gamma_val))
        config.model_params["gamma"] = gamma_val;
    if (!std::isnan(alpha_val))
        config.model_params["alpha"] = alpha_val;
    if (!std::isnan(r_val))
        config.fixed["r"] = r_val;
    if (!std::isnan(theta_val))
        config.fixed["theta"] = theta_val;
    if (!std::isnan(rr_val))
        config.fixed["R"] = rr_val;
    if (!std::isnan(phi_val))
        config.fixed["phi"] = phi_val;

    if (!config.config_file.empty()) {
        std::ifstream in(config.config_file);
        if (!in)
            throw ConfigInvalid("cannot read config file '" + config.config_file + "'");
        std::ostringstream text;
        text << in.rdbuf();
        apply_config_json(config, text.str());
    }
    return config;
}

namespace {

// residual/verdict summary blocks, harvested from the command payload
void summarize(const json& results, json& residuals, json& verdicts)
{
    if (!results.is_object())
        return;
    static const char* residual_keys[] = {"residual", "drift", "defect", "convergence",
                                          "deviation", "max_curvature_norm"};
    for (const auto& [key, value] : results.items()) {
        if (value.is_object()) {
            summarize(value, residuals, verdicts);
            continue;
        }
        for (const char* pattern : residual_keys)
            if (key.find(pattern) != std::string::npos)
                residuals[key] = value;
        if (key == "verdict" || key == "nontrivial" || key == "all_pass")
            verdicts[key] = value;
    }
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const auto t_start = std::chrono::steady_clock::now();
    json report = {{"schema_version", 1},
                   {"tool", {{"name", "hermitana"}, {"version", version_string}}},
                   {"config", config_echo(config)}};
    int code = 0;
    try {
        config.validate();
        json results;
        if (config.command == "reproduce-paper") {
            code = cmd_reproduce(config, results, out);
        } else {
            const auto model = make_model(config.model, config.model_params);
            if (config.command == "analyze")
                code = cmd_analyze(config, *model, results);
            else if (config.command == "wilson")
                code = cmd_wilson(config, *model, results);
            else if (config.command == "berry")
                code = cmd_berry(config, *model, results);
            else if (config.command == "curvature")
                code = cmd_curvature(config, *model, results);
            else if (config.command == "frame")
                code = cmd_frame(config, *model, results);
            else if (config.command == "evolve")
                code = cmd_evolve(config, *model, results);
            else if (config.command == "identities")
                code = cmd_identities(config, *model, results);
        }
        json residuals = json::object();
        json verdicts = json::object();
        summarize(results, residuals, verdicts);
        report["results"] = std::move(results);
        report["residuals"] = std::move(residuals);
        report["verdicts"] = std::move(verdicts);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        report["error"] = e.what();
        code = 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        report["error"] = e.what();
        code = 1;
    }
    const auto t_end = std::chrono::steady_clock::now();
    report["exit_code"] = code;
    report["wall_time_seconds"] =
        std::chrono::duration_cast<std::chrono::duration<double>>(t_end - t_start).count();

    if (config.output.empty()) {
        out << report.dump(2) << "\n";
    } else {
        std::ofstream file(config.output);
        if (!file) {
            err << "error: cannot write report to '" << config.output << "'\n";
            return 1;
        }
        file << report.dump(2) << "\n";
    }
    return code;
}

} // namespace hermitana::cli
