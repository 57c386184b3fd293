// Compares the serial reference kernels against their OpenMP counterparts:
// exterior field evaluation on a grid and P1 volume assembly, plus single-path
// timings for the spectral map utilities.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "helmdtn/dtn.hpp"
#include "helmdtn/fem.hpp"
#include "helmdtn/mesh.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace helmdtn;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename Fn>
double timed(Fn&& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_seconds();
    fn();
    best = std::min(best, now_seconds() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 300, grid = 301, mesh_n = 400, mesh_layers = 40;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&] {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value after %s\n", arg.c_str());
        std::exit(1);
      }
      return std::stoi(argv[++i]);
    };
    if (arg == "--n")
      n = next();
    else if (arg == "--grid")
      grid = next();
    else if (arg == "--mesh-n")
      mesh_n = next();
    else if (arg == "--mesh-layers")
      mesh_layers = next();
    else {
      std::fprintf(stderr,
                   "usage: bench_kernels [--n INT] [--grid INT] "
                   "[--mesh-n INT] [--mesh-layers INT]\n");
      return arg == "--help" || arg == "-h" ? 0 : 1;
    }
  }

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both paths run serially\n\n");
#endif

  {
    geometry::MfsGeometry geom{n, 1.0, 0.9, 30.0};
    cvec lambda(n);
    for (int k = 0; k < n; ++k)
      lambda[k] = std::cos(geometry::theta_of(geom, k));
    auto sol = dtn::solve_mfs_coefficients(geom, lambda, 0.0);
    dtn::GridSpec gs{-3.0, 3.0, -3.0, 3.0, grid, grid};

    cvec serial, parallel;
    double ts = timed([&] { serial = dtn::eval_exterior_field_grid(sol, gs, 1.0, false); });
    double tp = timed([&] { parallel = dtn::eval_exterior_field_grid(sol, gs, 1.0, true); });
    double diff = 0.0;
    for (size_t i = 0; i < serial.size(); ++i)
      if (!std::isnan(serial[i].real()))
        diff = std::max(diff, std::abs(serial[i] - parallel[i]));
    std::printf("grid evaluation  (N = %d, %dx%d): serial %8.3f ms | parallel %8.3f ms | x%.2f | max dev %.2e\n",
                n, grid, grid, ts * 1e3, tp * 1e3, ts / tp, diff);
  }

  {
    auto curve = geometry::StarBoundary::star64();
    auto msh = mesh::generate_mapped_mesh(curve, 3.0, mesh_n, mesh_layers);
    fem::SpMatR ks, ms, kp, mp;
    double ts = timed([&] { fem::assemble_volume(msh, ks, ms, false); });
    double tp = timed([&] { fem::assemble_volume(msh, kp, mp, true); });
    double diff = 0.0;
    fem::SpMatR dk = ks - kp;
    for (int c = 0; c < dk.outerSize(); ++c)
      for (fem::SpMatR::InnerIterator it(dk, c); it; ++it)
        diff = std::max(diff, std::abs(it.value()));
    std::printf("P1 assembly      (%zu tris):        serial %8.3f ms | parallel %8.3f ms | x%.2f | max dev %.2e\n",
                msh.triangles.size(), ts * 1e3, tp * 1e3, ts / tp, diff);
  }

  {
    geometry::MfsGeometry geom{2048, 1.0, 0.99, 30.0};
    auto map = dtn::build_dtn_fft(geom, 0.0);
    double tm = timed([&] { auto lam = dtn::materialize_dtn(map); (void)lam; }, 1);
    std::printf("materialize_dtn  (N = 2048):        %8.3f ms\n", tm * 1e3);
  }

  {
    const int big = 1 << 16;
    // rho extremely close to r0: anything farther drives the circulant
    // spectrum below round-off at this length and the build rightly refuses.
    geometry::MfsGeometry geom{big, 1.0, 0.9999, 30.0};
    auto map = dtn::build_dtn_fft(geom, 0.0);
    cvec x(big);
    for (int k = 0; k < big; ++k) x[k] = std::cos(geometry::theta_of(geom, k));
    double ta = timed([&] { auto y = dtn::apply_dtn(map, x); (void)y; });
    std::printf("apply_dtn        (N = 65536):       %8.3f ms%s\n", ta * 1e3,
                ta > 0.1 ? "  [expected under 100 ms]" : "");
  }
  return 0;
}
