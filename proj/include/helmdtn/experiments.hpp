#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helmdtn/fem.hpp"
#include "helmdtn/manufactured.hpp"

namespace helmdtn::experiments {

/// Fully resolved run parameters. The defaults of a bare struct match the
/// accuracy sweep; default_config / preset_config fill the per-experiment
/// values so that a bare CLI invocation reproduces the corresponding figure
/// data set.
struct ExperimentConfig {
  std::string experiment{"dtn-accuracy"};
  double kappa = 30.0;
  double r0 = 1.0;
  std::vector<double> rho_list{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<int> n_list{10, 20,  30,  40,  50,  60,  70,  80, 90,
                          120, 150, 180, 210, 240, 270, 300};
  int mode = 1;
  int layers = 0;  // 0 = derive from the target edge length
  double h_target = 0.067;
  int grid = 301;
  fem::Coupling coupling = fem::Coupling::galerkin;
  fem::LoadRule load_rule = fem::LoadRule::edge_midpoint;
  std::string curve;  // empty = per-experiment default
  std::string out{"out"};
  std::uint64_t seed = 1729;
  int reps = 3;
  double eps_sing = 0.0;
  std::string preset;
  manufactured::ManufacturedConfig source = manufactured::paper64();
};

/// Per-experiment defaults; throws std::invalid_argument on an unknown id.
ExperimentConfig default_config(const std::string& experiment);

/// Named presets paper61..paper64 mapping to the four experiments.
ExperimentConfig preset_config(const std::string& preset);

/// Least-squares line with coefficient of determination.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct AccuracyRow {
  int n = 0;
  double rho = 0.0;
  double max_error_d = 0.0;
  double max_error_bv = 0.0;
  double max_error_nd = 0.0;
  std::string status{"ok"};
};

struct AccuracyResult {
  std::vector<AccuracyRow> rows;
  std::string out_dir;
};

struct TimingRecord {
  int n = 0;
  std::string method;  // direct | fft | circulant
  double seconds = 0.0;
};

struct BenchResult {
  std::vector<TimingRecord> records;
  LineFit direct_fit, fft_fit;            // over the full N-list
  LineFit direct_fit_upper, fft_fit_upper;  // over its upper half
  std::vector<std::pair<int, double>> speedup;  // direct seconds / fft seconds
  std::vector<int> refused_direct;  // N values above the dense cap
  double gate_error = 0.0;
  std::string out_dir;
};

struct SolveReport {
  int n = 0;
  int layers = 0;
  mesh::MeshQuality quality;
  double error_modulus = 0.0;
  double error_real = 0.0;
  double gamma0_max_error = 0.0;
  double median_error = 0.0;
  double residual = 0.0;
  bool residual_ok = true;
  std::string out_dir;
};

/// MFS accuracy sweep over (N, rho): boundary data cos(theta), errors of the
/// real part against the closed-form exterior solution on the masked grid,
/// at the artificial boundary, and in the outward normal derivative. Singular
/// configurations become flagged rows. Writes results.csv, the field and
/// boundary data files for the largest configuration, README.txt, and
/// manifest.json into cfg.out.
AccuracyResult run_dtn_accuracy(const ExperimentConfig& cfg);

/// Build-time comparison of the dense and FFT DtN constructions (kernel
/// column evaluation excluded from both, single-threaded, averaged over
/// cfg.reps runs of >= 20 ms each). A correctness gate compares the two maps
/// at N = 128 before any timing. Writes timings.csv, summary.csv, slopes.csv,
/// README.txt, manifest.json.
BenchResult run_dtn_bench(const ExperimentConfig& cfg);

/// Transparent-boundary verification: single outgoing mode cfg.mode as exact
/// solution, f = 0, Dirichlet trace on the inner circle. Writes mesh.txt,
/// solution.csv, exact.csv, error.csv, report.json, README.txt, manifest.json.
SolveReport run_tbc_verify(const ExperimentConfig& cfg);

/// Manufactured inhomogeneous problem on the star-shaped inner boundary:
/// f = source_f, g = exact_u. Same outputs as run_tbc_verify plus source.csv.
SolveReport run_inhomogeneous(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment; returns the out directory.
std::string run_experiment(const ExperimentConfig& cfg);

/// manifest.json round trip: every resolved field, alphabetical keys, no
/// volatile data, so identical configs write byte-identical manifests.
void write_manifest(const ExperimentConfig& cfg, const std::string& path);
ExperimentConfig read_manifest(const std::string& path);

}  // namespace helmdtn::experiments
