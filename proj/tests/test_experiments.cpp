#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmdtn/experiments.hpp"

using namespace helmdtn;
using experiments::ExperimentConfig;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const experiments::AccuracyRow& row_for(
    const experiments::AccuracyResult& result, int n) {
  for (const auto& row : result.rows)
    if (row.n == n) return row;
  REQUIRE(false);
  return result.rows.front();
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("line fitting recovers exact and noisy trends") {
  std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v - 2.0);
  experiments::LineFit fit = experiments::fit_line(x, y);
  CHECK(std::abs(fit.slope - 3.0) <= 1e-12);
  CHECK(std::abs(fit.intercept + 2.0) <= 1e-12);
  CHECK(std::abs(fit.r2 - 1.0) <= 1e-12);

  std::vector<double> noisy{1.1, 3.8, 7.2, 9.9, 13.3};
  fit = experiments::fit_line(x, noisy);
  CHECK(fit.slope > 2.5);
  CHECK(fit.slope < 3.5);
  CHECK(fit.r2 < 1.0);
  CHECK(fit.r2 > 0.95);

  CHECK_THROWS_AS(experiments::fit_line({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(experiments::fit_line({1.0, 1.0}, {2.0, 3.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiments::fit_line({1.0, 2.0}, {2.0}),
                  std::invalid_argument);
}

TEST_CASE("per-experiment defaults reproduce the documented setups") {
  ExperimentConfig acc = experiments::default_config("dtn-accuracy");
  CHECK(acc.kappa == 30.0);
  CHECK(acc.r0 == 1.0);
  CHECK(acc.rho_list.size() == 9);
  CHECK(acc.n_list.size() == 16);
  CHECK(acc.n_list.front() == 10);
  CHECK(acc.n_list.back() == 300);

  ExperimentConfig tbc = experiments::default_config("tbc-verify");
  CHECK(tbc.kappa == 8.0);
  CHECK(tbc.r0 == 3.0);
  CHECK(tbc.rho_list == std::vector<double>{2.97});
  CHECK(tbc.n_list == std::vector<int>{500});
  CHECK(tbc.mode == 3);
  CHECK(tbc.curve == "circle:1");

  ExperimentConfig inh = experiments::default_config("inhomogeneous");
  CHECK(inh.curve == "star64");
  CHECK(inh.mode == 2);
  CHECK(inh.source.beta == cplx{0.35, 0.20});

  CHECK_THROWS_AS(experiments::default_config("frequency-sweep"),
                  std::invalid_argument);

  ExperimentConfig preset = experiments::preset_config("paper63");
  CHECK(preset.experiment == "tbc-verify");
  CHECK(preset.preset == "paper63");
  CHECK_THROWS_AS(experiments::preset_config("paper65"),
                  std::invalid_argument);
}

TEST_CASE("manifests round-trip every field and rewrite byte-identically") {
  ExperimentConfig cfg = experiments::default_config("tbc-verify");
  cfg.kappa = 12.5;
  cfg.r0 = 2.0;
  cfg.rho_list = {0.4, 0.6};
  cfg.n_list = {16, 32};
  cfg.mode = 4;
  cfg.layers = 9;
  cfg.h_target = 0.05;
  cfg.grid = 77;
  cfg.coupling = fem::Coupling::literal;
  cfg.load_rule = fem::LoadRule::nodal_interpolation;
  cfg.curve = "star:0.55,cos:3:0.10";
  cfg.out = "exp_manifest_out";
  cfg.seed = 42;
  cfg.reps = 5;
  cfg.eps_sing = 1e-12;
  cfg.preset = "paper63";
  cfg.source = {9.0, 2.5, 1.5, 2.0, 3, {0.1, -0.2}};

  experiments::write_manifest(cfg, "exp_manifest_a.json");
  ExperimentConfig back = experiments::read_manifest("exp_manifest_a.json");
  CHECK(back.experiment == cfg.experiment);
  CHECK(back.kappa == cfg.kappa);
  CHECK(back.r0 == cfg.r0);
  CHECK(back.rho_list == cfg.rho_list);
  CHECK(back.n_list == cfg.n_list);
  CHECK(back.mode == cfg.mode);
  CHECK(back.layers == cfg.layers);
  CHECK(back.h_target == cfg.h_target);
  CHECK(back.grid == cfg.grid);
  CHECK(back.coupling == cfg.coupling);
  CHECK(back.load_rule == cfg.load_rule);
  CHECK(back.curve == cfg.curve);
  CHECK(back.out == cfg.out);
  CHECK(back.seed == cfg.seed);
  CHECK(back.reps == cfg.reps);
  CHECK(back.eps_sing == cfg.eps_sing);
  CHECK(back.preset == cfg.preset);
  CHECK(back.source.kappa == cfg.source.kappa);
  CHECK(back.source.r0 == cfg.source.r0);
  CHECK(back.source.r1 == cfg.source.r1);
  CHECK(back.source.r2 == cfg.source.r2);
  CHECK(back.source.m == cfg.source.m);
  CHECK(back.source.beta == cfg.source.beta);

  experiments::write_manifest(back, "exp_manifest_b.json");
  CHECK(slurp("exp_manifest_a.json") == slurp("exp_manifest_b.json"));
}

TEST_CASE("accuracy sweeps are deterministic") {
  ExperimentConfig cfg = experiments::default_config("dtn-accuracy");
  cfg.rho_list = {0.5};
  cfg.n_list = {20, 40};
  cfg.grid = 61;
  cfg.out = "exp_determinism";
  experiments::run_dtn_accuracy(cfg);
  std::string results1 = slurp("exp_determinism/results.csv");
  std::string field1 = slurp("exp_determinism/field_numeric.csv");
  experiments::run_dtn_accuracy(cfg);
  CHECK(slurp("exp_determinism/results.csv") == results1);
  CHECK(slurp("exp_determinism/field_numeric.csv") == field1);
}

TEST_CASE("accuracy errors are positive, finite, and shrink with N") {
  ExperimentConfig cfg = experiments::default_config("dtn-accuracy");
  cfg.rho_list = {0.5};
  cfg.n_list = {20, 40, 60, 150};
  cfg.grid = 151;
  cfg.out = "exp_accuracy";
  experiments::AccuracyResult result = experiments::run_dtn_accuracy(cfg);
  REQUIRE(result.rows.size() == 4);
  for (const auto& row : result.rows) {
    CHECK(row.status == "ok");
    CHECK(row.max_error_d > 0.0);
    CHECK(row.max_error_bv > 0.0);
    CHECK(row.max_error_nd > 0.0);
    CHECK(std::isfinite(row.max_error_d));
  }
  CHECK(row_for(result, 40).max_error_d < row_for(result, 20).max_error_d);
  CHECK(row_for(result, 150).max_error_d < row_for(result, 60).max_error_d);
  CHECK(std::filesystem::exists("exp_accuracy/boundary_errors.csv"));
  CHECK(std::filesystem::exists("exp_accuracy/error_grid.csv"));
  CHECK(std::filesystem::exists("exp_accuracy/manifest.json"));
}

TEST_CASE("a spectrally singular configuration becomes a flagged row") {
  ExperimentConfig cfg = experiments::default_config("dtn-accuracy");
  cfg.rho_list = {0.05};
  cfg.n_list = {200};
  cfg.grid = 41;
  cfg.eps_sing = 1e-14;
  cfg.out = "exp_singular";
  experiments::AccuracyResult result = experiments::run_dtn_accuracy(cfg);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].status.find("singular") != std::string::npos);
  CHECK(std::isnan(result.rows[0].max_error_d));
  CHECK(std::isnan(result.rows[0].max_error_nd));
  CHECK(slurp("exp_singular/results.csv").find("singular") !=
        std::string::npos);
}

TEST_CASE("the build benchmark fits the documented complexity laws") {
  ExperimentConfig cfg = experiments::default_config("dtn-bench");
  cfg.n_list = {128, 256, 512, 1024};
  cfg.out = "exp_bench";
  experiments::BenchResult result = experiments::run_dtn_bench(cfg);
  CHECK(result.gate_error <= 1e-9);
  CHECK(result.refused_direct.empty());
  // Cubic fill-plus-factorization, measured on the upper half where the
  // asymptotic regime starts.
  CHECK(result.direct_fit_upper.slope > 2.2);
  CHECK(result.direct_fit_upper.slope < 3.6);
  CHECK(result.fft_fit.slope <= 1.5);
  REQUIRE(result.speedup.size() == 4);
  for (size_t i = 1; i < result.speedup.size(); ++i) {
    CHECK(result.speedup[i].second > result.speedup[i - 1].second);
    CHECK(result.speedup[i].first > result.speedup[i - 1].first);
  }
  CHECK(result.speedup.front().second > 1.0);
  for (const char* name :
       {"timings.csv", "summary.csv", "slopes.csv", "README.txt",
        "manifest.json"})
    CHECK(std::filesystem::exists(std::filesystem::path("exp_bench") / name));
}

TEST_CASE("the benchmark refuses dense sizes above the cap") {
  ExperimentConfig cfg = experiments::default_config("dtn-bench");
  cfg.n_list = {8192};
  cfg.out = "exp_bench_refused";
  experiments::BenchResult result = experiments::run_dtn_bench(cfg);
  CHECK(result.refused_direct == std::vector<int>{8192});
  CHECK(result.speedup.empty());
  for (const auto& record : result.records) CHECK(record.method != "direct");
  bool fft_present = false;
  for (const auto& record : result.records)
    if (record.method == "fft" && record.n == 8192) fft_present = true;
  CHECK(fft_present);
  CHECK(result.gate_error <= 1e-9);
}

TEST_CASE("transparent-boundary verification converges at second order") {
  ExperimentConfig coarse = experiments::default_config("tbc-verify");
  coarse.rho_list = {2.7};
  coarse.n_list = {250};
  coarse.layers = 19;
  coarse.out = "exp_tbc_coarse";
  experiments::SolveReport lo = experiments::run_tbc_verify(coarse);

  ExperimentConfig fine = coarse;
  fine.n_list = {500};
  fine.layers = 38;
  fine.out = "exp_tbc_fine";
  experiments::SolveReport hi = experiments::run_tbc_verify(fine);

  CHECK(lo.residual_ok);
  CHECK(hi.residual_ok);
  CHECK(hi.quality.h_max < lo.quality.h_max);
  double slope = std::log2(lo.error_modulus / hi.error_modulus);
  CHECK(slope >= 1.5);
  CHECK(slope <= 2.5);
  CHECK(std::filesystem::exists("exp_tbc_fine/solution.csv"));
  CHECK(std::filesystem::exists("exp_tbc_fine/error.csv"));
  CHECK(std::filesystem::exists("exp_tbc_fine/report.json"));
}

TEST_CASE("the inhomogeneous solve exports a compactly supported source") {
  ExperimentConfig cfg = experiments::default_config("inhomogeneous");
  cfg.n_list = {128};
  cfg.layers = 12;
  cfg.out = "exp_inhom";
  experiments::SolveReport report = experiments::run_inhomogeneous(cfg);
  CHECK(std::isfinite(report.error_modulus));
  CHECK(report.error_modulus > 0.0);

  std::ifstream src("exp_inhom/source.csv");
  REQUIRE(src.good());
  std::string header;
  std::getline(src, header);
  CHECK(header == "node_index,x,y,re_f,im_f");
  int outside = 0;
  std::string line;
  while (std::getline(src, line)) {
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    int idx;
    double x, y, re, im;
    ss >> idx >> x >> y >> re >> im;
    REQUIRE(!ss.fail());
    if (std::hypot(x, y) > 2.64) {
      ++outside;
      CHECK(re == 0.0);
      CHECK(im == 0.0);
    }
  }
  CHECK(outside > 0);

  ExperimentConfig literal = cfg;
  literal.coupling = fem::Coupling::literal;
  literal.out = "exp_inhom_literal";
  experiments::SolveReport alt = experiments::run_inhomogeneous(literal);
  CHECK(std::isfinite(alt.error_modulus));
}

TEST_CASE("the dispatcher runs by experiment id") {
  ExperimentConfig cfg = experiments::default_config("dtn-accuracy");
  cfg.rho_list = {0.5};
  cfg.n_list = {20};
  cfg.grid = 41;
  cfg.out = "exp_dispatch";
  CHECK(experiments::run_experiment(cfg) == "exp_dispatch");
  CHECK(std::filesystem::exists("exp_dispatch/manifest.json"));
  cfg.experiment = "unknown";
  CHECK_THROWS_AS(experiments::run_experiment(cfg), std::invalid_argument);
}

}  // TEST_SUITE
