// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hermitana/cli.hpp"
#include "hermitana/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace hermitana;
using nlohmann::json;

namespace {

cli::RunConfig parse(std::initializer_list<const char*> args)
{
    std::vector<const char*> argv = {"hermitana"};
    argv.insert(argv.end(), args.begin(), args.end());
    return cli::parse_args(static_cast<int>(argv.size()), argv.data());
}

json run_to_json(const cli::RunConfig& config, int expected_code)
{
    std::ostringstream out, err;
    const int code = cli::run(config, out, err);
    INFO("stderr: ", err.str());
    CHECK(code == expected_code);
    return json::parse(out.str());
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents = "")
        : path("/tmp/hermitana_test_" + name)
    {
        if (!contents.empty())
            std::ofstream(path) << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("flag parsing covers the documented invocations")
{
    const cli::RunConfig w =
        parse({"wilson", "--model", "example3", "--loop", "circle_phi", "--R", "1.5", "--steps",
               "2048"});
    CHECK(w.command == "wilson");
    CHECK(w.model == "example3");
    CHECK(w.generator == "circle_phi");
    CHECK(w.fixed.at("R") == 1.5);
    CHECK(w.steps == 2048);

    const cli::RunConfig a = parse({"analyze", "--model", "example1", "--B", "2", "--gamma", "1"});
    CHECK(a.model_params.at("B") == 2.0);
    CHECK(a.model_params.at("gamma") == 1.0);

    const cli::RunConfig b = parse({"berry", "--model", "example3", "--loop", "circle_phi",
                                    "--frame", "hermitian", "--band", "1"});
    CHECK(b.frame == "hermitian");
    CHECK(b.band == 1);

    CHECK_THROWS_AS(parse({"frobnicate"}), ConfigInvalid);
    CHECK_THROWS_AS(parse({"wilson", "--fixed", "nonsense"}), ConfigInvalid);
}

TEST_CASE("config file overrides flags")
{
    TempFile cfg("override.json",
                 R"({"model":"example3",
                     "loop":{"generator":"circle_phi","fixed":{"R":1.3},"winding":2,"steps":512}})");
    const cli::RunConfig c =
        parse({"wilson", "--model", "example2", "--alpha", "1.0", "--config", cfg.path.c_str()});
    CHECK(c.model == "example3");
    CHECK(c.winding == 2);
    CHECK(c.steps == 512);
    CHECK(c.fixed.at("R") == 1.3);
}

TEST_CASE("config validation")
{
    cli::RunConfig c;
    c.command = "wilson";
    c.tol = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigInvalid);
    c.tol = 1e-6;
    c.steps = 4;
    CHECK_THROWS_AS(c.validate(), ConfigInvalid);
    c.steps = 64;
    c.frame = "sideways";
    CHECK_THROWS_AS(c.validate(), ConfigInvalid);
}

TEST_CASE("analyze example1 reports no obstruction and the Hermitian image")
{
    cli::RunConfig c;
    c.command = "analyze";
    c.model = "example1";
    c.model_params = {{"B", 2.0}, {"gamma", 1.0}};
    c.grid_n = 8;
    c.steps = 64;
    const json report = run_to_json(c, 0);
    CHECK(report["results"]["verdict"] == "none");
    const auto& ht = report["results"]["sample_hermitianization"]["H_tilde"];
    CHECK(std::abs(ht[0][1][0].get<double>() - std::sqrt(3.0)) < 1e-10);
    CHECK(std::abs(ht[0][0][0].get<double>()) < 1e-10);
    CHECK(report["exit_code"] == 0);
    CHECK(report.contains("wall_time_seconds"));
    CHECK(report["tool"]["name"] == "hermitana");
    CHECK(report["schema_version"] == 1);
}

TEST_CASE("analyze example2 exits with the verdict code")
{
    cli::RunConfig c;
    c.command = "analyze";
    c.model = "example2";
    c.model_params = {{"alpha", 1.5707963267948966}};
    c.grid_n = 6;
    c.grid_min = {0.1, 0.0};
    c.grid_max = {0.9, 0.0};
    c.steps = 64;
    const json report = run_to_json(c, 2);
    CHECK(report["results"]["verdict"] == "geometric");
}

TEST_CASE("wilson on example3 finds the nontrivial holonomy and exits 2")
{
    cli::RunConfig c;
    c.command = "wilson";
    c.model = "example3";
    c.generator = "circle_phi";
    c.fixed = {{"R", 1.5}};
    c.steps = 512;
    const json report = run_to_json(c, 2);
    CHECK(report["results"]["nontrivial"] == true);
    CHECK(report["results"]["distance_to_identity"].get<double>() ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
    // W serialized as nested [re, im] pairs
    CHECK(std::abs(report["results"]["W"][0][0][0].get<double>() + 1.0) < 1e-9);
}

TEST_CASE("berry subcommand reproduces the phase mismatch")
{
    cli::RunConfig c;
    c.command = "berry";
    c.model = "example3";
    c.generator = "circle_phi";
    c.fixed = {{"R", 1.5}};
    c.steps = 1024;
    c.band = 1;
    c.frame = "hermitian";
    const json herm = run_to_json(c, 0);
    const double phase = herm["results"]["phase"].get<double>();
    CHECK(std::abs(std::remainder(phase - (-3.14159265), 2 * 3.14159265358979)) < 1e-4);
    c.frame = "quasi";
    const json quasi = run_to_json(c, 0);
    CHECK(std::abs(quasi["results"]["phase"].get<double>()) < 1e-4);
}

TEST_CASE("frame subcommand writes per-step CSV")
{
    TempFile csv("frame.csv");
    cli::RunConfig c;
    c.command = "frame";
    c.model = "example2";
    c.model_params = {{"alpha", 1.5707963267948966}};
    c.generator = "circle_theta";
    c.fixed = {{"r", 0.6}};
    c.steps = 128;
    c.csv = csv.path;
    const json report = run_to_json(c, 0);
    CHECK(report["results"]["periodicity_defect"].get<double>() > 0.1);
    CHECK(report["results"]["monodromy_residual"].get<double>() < 1e-6);

    std::ifstream in(csv.path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("step,t,r,theta,factorization_residual,hermiticity_residual,H_tilde_00_re",
                       0) == 0);
    int lines = 0;
    for (std::string line; std::getline(in, line);)
        ++lines;
    CHECK(lines == 129);
}

TEST_CASE("evolve subcommand with comparison")
{
    cli::RunConfig c;
    c.command = "evolve";
    c.model = "example3";
    c.generator = "circle_phi";
    c.fixed = {{"R", 1.5}};
    c.T = 1.0;
    c.dt = 1e-3;
    c.compare = true;
    const json report = run_to_json(c, 0);
    CHECK(report["results"]["eta_norm_drift"].get<double>() <= 1e-8);
    CHECK(report["results"]["frame_equivalence_deviation"].get<double>() <= 1e-6);

    c.naive = true;
    c.compare = false;
    const json naive = run_to_json(c, 0);
    CHECK(naive["results"]["naive"] == true);
    CHECK(naive["results"]["eta_norm_drift"].get<double>() > 1e-4);
}

TEST_CASE("identities subcommand is deterministic for a fixed seed")
{
    cli::RunConfig c;
    c.command = "identities";
    c.model = "random";
    c.model_params = {{"seed", 5.0}};
    c.points = 10;
    c.seed = 777;
    const json first = run_to_json(c, 0);
    const json second = run_to_json(c, 0);
    CHECK(first["results"] == second["results"]);
    CHECK(first["results"]["max_curl_commutator_residual"].get<double>() <= 1e-6);
    CHECK(first["results"]["max_similarity_residual"].get<double>() <= 1e-6);
}

TEST_CASE("curvature sweep summary")
{
    TempFile csv("curv.csv");
    cli::RunConfig c;
    c.command = "curvature";
    c.model = "example2";
    c.model_params = {{"alpha", 1.0471975511965976}};
    c.grid_n = 4;
    c.grid_min = {0.2, 0.0};
    c.grid_max = {0.7, 6.283185307179586};
    c.csv = csv.path;
    const json report = run_to_json(c, 0);
    CHECK(report["results"]["max_F_G_norm"].get<double>() > 0.1);
    CHECK(report["results"]["max_abs_delta"][0].get<double>() > 0.01);
    std::ifstream in(csv.path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,theta,F_G_fro,F_K_fro,delta_band0,delta_band1");
}

TEST_CASE("errors surface as exit code 1 with a report")
{
    cli::RunConfig c;
    c.command = "analyze";
    c.model = "no-such-model";
    std::ostringstream out, err;
    const int code = cli::run(c, out, err);
    CHECK(code == 1);
    const json report = json::parse(out.str());
    CHECK(report.contains("error"));
    CHECK(err.str().find("unknown model") != std::string::npos);
}

TEST_CASE("report lands in the output file when requested")
{
    TempFile out_file("report.json");
    cli::RunConfig c;
    c.command = "wilson";
    c.model = "example3";
    c.generator = "circle_phi";
    c.steps = 64;
    c.output = out_file.path;
    std::ostringstream out, err;
    cli::run(c, out, err);
    CHECK(out.str().empty());
    std::ifstream in(out_file.path);
    const json report = json::parse(in);
    CHECK(report["results"].contains("W"));
}
