#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "helmdtn/experiments.hpp"

namespace {

using helmdtn::experiments::ExperimentConfig;

std::vector<int> parse_n_list(const std::string& spec) {
  auto to_int = [&](const std::string& s) {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size())
      throw CLI::ValidationError("--n", "bad integer '" + s + "'");
    return v;
  };
  std::vector<int> out;
  if (spec.find(':') != std::string::npos) {
    int parts[3], count = 0;
    size_t start = 0;
    while (count < 3) {
      size_t colon = spec.find(':', start);
      std::string piece = colon == std::string::npos
                              ? spec.substr(start)
                              : spec.substr(start, colon - start);
      parts[count++] = to_int(piece);
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (count != 3)
      throw CLI::ValidationError("--n", "range needs first:last:step");
    auto [first, last, step] = std::tuple{parts[0], parts[1], parts[2]};
    if (step <= 0 || first > last)
      throw CLI::ValidationError("--n", "range needs first <= last, step > 0");
    for (int v = first; v <= last; v += step) out.push_back(v);
  } else {
    size_t start = 0;
    while (start <= spec.size()) {
      size_t comma = spec.find(',', start);
      std::string piece = comma == std::string::npos
                              ? spec.substr(start)
                              : spec.substr(start, comma - start);
      out.push_back(to_int(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Discrete DtN maps for the exterior Helmholtz problem: accuracy sweeps, "
      "build-time benchmarks, and transparent-boundary solves"};
  app.require_subcommand(0, 1);

  std::string manifest_path;
  app.add_option("--from-manifest", manifest_path,
                 "Rerun the resolved configuration stored in a manifest.json "
                 "(flags still override)");

  struct {
    double kappa = 0.0, r0 = 0.0, rho = 0.0, eps_sing = 0.0, h_target = 0.0;
    int mode = 0, layers = 0, grid = 0, reps = 0;
    std::uint64_t seed = 0;
    std::string n_spec, coupling, load_rule, curve, out, preset;
  } fl;

  const std::vector<std::string> names{"dtn-accuracy", "dtn-bench",
                                       "tbc-verify", "inhomogeneous"};
  const std::vector<std::string> descs{
      "MFS accuracy sweep over (N, rho) with boundary data cos(theta)",
      "Dense vs FFT DtN construction times and complexity fits",
      "FEM + transparent boundary against a single outgoing mode",
      "Manufactured inhomogeneous problem on a star-shaped boundary"};

  // Registered on the app as well as on every subcommand so that overrides
  // also work in manifest-replay form, where no subcommand is named.
  auto add_flags = [&fl](CLI::App* cmd) {
    cmd->add_option("--kappa", fl.kappa, "Wavenumber");
    cmd->add_option("--r0", fl.r0, "Artificial boundary radius");
    cmd->add_option("--rho", fl.rho,
                    "Source circle radius (restricts the sweep to one value)");
    cmd->add_option("--n", fl.n_spec,
                    "Collocation count: INT, comma list, or first:last:step");
    cmd->add_option("--mode", fl.mode, "Fourier mode of the exact solution");
    cmd->add_option("--layers", fl.layers,
                    "Radial mesh layers (0 derives them from --h-target)");
    cmd->add_option("--grid", fl.grid, "Evaluation grid resolution per axis");
    cmd->add_option("--coupling", fl.coupling,
                    "Boundary coupling: galerkin | literal")
        ->check(CLI::IsMember({"galerkin", "literal"}));
    cmd->add_option("--out", fl.out, "Output directory");
    cmd->add_option("--seed", fl.seed,
                    "Seed echoed into the manifest for randomized checks");
    cmd->add_option("--preset", fl.preset,
                    "Named configuration: paper61 | paper62 | paper63 | paper64")
        ->check(CLI::IsMember({"paper61", "paper62", "paper63", "paper64"}));
    cmd->add_option("--curve", fl.curve,
                    "Inner boundary: circle:R | star64 | "
                    "star:base[,cos:k:amp[:phase]][,sin:k:amp[:phase]]...");
    cmd->add_option("--reps", fl.reps, "Timing repetitions");
    cmd->add_option("--eps-sing", fl.eps_sing,
                    "Relative spectral threshold treated as singular");
    cmd->add_option("--load-rule", fl.load_rule,
                    "Load quadrature: edge-midpoint | nodal-interpolation")
        ->check(CLI::IsMember({"edge-midpoint", "nodal-interpolation"}));
    cmd->add_option("--h-target", fl.h_target,
                    "Target mesh edge length when --layers is 0");
  };
  add_flags(&app);
  std::vector<CLI::App*> subs;
  for (size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    add_flags(sub);
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = nullptr;
    std::string subname;
    for (size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) {
        sub = subs[i];
        subname = names[i];
      }

    auto given = [&](const char* flag) {
      return app.count(flag) + (sub ? sub->count(flag) : 0) > 0;
    };

    ExperimentConfig cfg;
    if (!manifest_path.empty()) {
      cfg = helmdtn::experiments::read_manifest(manifest_path);
      if (sub && cfg.experiment != subname)
        throw std::invalid_argument("manifest holds a '" + cfg.experiment +
                                    "' run, not '" + subname + "'");
    } else if (given("--preset")) {
      cfg = helmdtn::experiments::preset_config(fl.preset);
      if (sub && cfg.experiment != subname)
        throw std::invalid_argument("preset " + fl.preset + " belongs to '" +
                                    cfg.experiment + "', not '" + subname +
                                    "'");
    } else if (sub == nullptr) {
      std::fprintf(stderr, "%s\n", app.help().c_str());
      return 1;
    } else {
      cfg = helmdtn::experiments::default_config(subname);
    }

    if (given("--kappa")) cfg.kappa = fl.kappa;
    if (given("--r0")) cfg.r0 = fl.r0;
    if (given("--rho")) cfg.rho_list = {fl.rho};
    if (given("--n")) cfg.n_list = parse_n_list(fl.n_spec);
    if (given("--mode")) cfg.mode = fl.mode;
    if (given("--layers")) cfg.layers = fl.layers;
    if (given("--grid")) cfg.grid = fl.grid;
    if (given("--coupling"))
      cfg.coupling = fl.coupling == "literal"
                         ? helmdtn::fem::Coupling::literal
                         : helmdtn::fem::Coupling::galerkin;
    if (given("--out")) cfg.out = fl.out;
    if (given("--seed")) cfg.seed = fl.seed;
    if (given("--curve")) cfg.curve = fl.curve;
    if (given("--reps")) cfg.reps = fl.reps;
    if (given("--eps-sing")) cfg.eps_sing = fl.eps_sing;
    if (given("--load-rule"))
      cfg.load_rule = fl.load_rule == "nodal-interpolation"
                          ? helmdtn::fem::LoadRule::nodal_interpolation
                          : helmdtn::fem::LoadRule::edge_midpoint;
    if (given("--h-target")) cfg.h_target = fl.h_target;

    if (cfg.experiment == "dtn-accuracy") {
      auto res = helmdtn::experiments::run_dtn_accuracy(cfg);
      double best = -1.0;
      int singular = 0;
      for (const auto& row : res.rows) {
        if (row.status != "ok") {
          ++singular;
          continue;
        }
        if (best < 0.0 || row.max_error_d < best) best = row.max_error_d;
      }
      std::printf("dtn-accuracy: %zu rows (%d singular), best max_error_D = %.3e\n",
                  res.rows.size(), singular, best);
      std::printf("outputs: %s/{results.csv, field_numeric.csv, field_exact.csv, "
                  "error_grid.csv, boundary_errors.csv, README.txt, manifest.json}\n",
                  res.out_dir.c_str());
    } else if (cfg.experiment == "dtn-bench") {
      auto res = helmdtn::experiments::run_dtn_bench(cfg);
      std::printf("dtn-bench: gate %.3e, slope(direct) = %.2f, slope(fft) = %.2f\n",
                  res.gate_error, res.direct_fit.slope, res.fft_fit.slope);
      if (!res.speedup.empty())
        std::printf("speedup %.1fx at N = %d up to %.1fx at N = %d\n",
                    res.speedup.front().second, res.speedup.front().first,
                    res.speedup.back().second, res.speedup.back().first);
      std::printf("outputs: %s/{timings.csv, summary.csv, slopes.csv, "
                  "README.txt, manifest.json}\n",
                  res.out_dir.c_str());
    } else {
      auto res = cfg.experiment == "tbc-verify"
                     ? helmdtn::experiments::run_tbc_verify(cfg)
                     : helmdtn::experiments::run_inhomogeneous(cfg);
      std::printf(
          "%s: N = %d, layers = %d, h_max = %.4f, %d nodes, %d elements\n",
          cfg.experiment.c_str(), res.n, res.layers, res.quality.h_max,
          res.quality.node_count, res.quality.element_count);
      std::printf("max nodal error %.4e (real part %.4e), residual %.2e%s\n",
                  res.error_modulus, res.error_real, res.residual,
                  res.residual_ok ? "" : " [residual warning]");
      std::printf("outputs: %s/{mesh.txt, solution.csv, exact.csv, error.csv%s, "
                  "report.json, README.txt, manifest.json}\n",
                  res.out_dir.c_str(),
                  cfg.experiment == "inhomogeneous" ? ", source.csv" : "");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
