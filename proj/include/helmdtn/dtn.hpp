#pragma once

#include <Eigen/Core>

#include "helmdtn/circulant.hpp"
#include "helmdtn/geometry.hpp"

namespace helmdtn::dtn {

using geometry::MfsGeometry;

/// First columns of the two MFS kernel circulants: C0 carries the fundamental
/// solution (i/4)H0(kappa d_m), C1 its outward normal derivative at the
/// collocation circle, with d_m = |z_0 - zeta_{-m}| the relative distance.
struct MfsKernelColumns {
  cvec c0;
  cvec c1;
  MfsGeometry geom;
};

MfsKernelColumns kernel_columns(const MfsGeometry& geom);

/// Discrete DtN map in spectral form: rhat = dft(c1) (/) dft(c0), the
/// eigenvalues of Lambda = C1 * C0^{-1}.
struct DtnMap {
  cvec rhat;
  MfsGeometry geom;
};

/// O(N log N) build. Throws SingularCirculant when an eigenvalue of C0 falls
/// below eps_sing * max|sigma| (eps_sing = 0 keeps only the exact-zero guard).
/// The from-columns overload skips kernel evaluation, so benchmarks can time
/// the map construction alone.
DtnMap build_dtn_fft(const MfsGeometry& geom,
                     double eps_sing = circulant::default_eps_sing);
DtnMap build_dtn_fft(const MfsKernelColumns& cols,
                     double eps_sing = circulant::default_eps_sing);

/// Memory cap for the O(N^3) dense reference build.
inline constexpr int default_dense_cap = 4096;

/// Dense reference build of Lambda = C1 * C0^{-1} via LU; benchmark baseline
/// and small-N oracle only. Throws std::length_error above the cap and
/// std::runtime_error if the LU pivots signal a singular system.
Eigen::MatrixXcd build_dtn_direct(const MfsGeometry& geom,
                                  int dense_cap = default_dense_cap);
Eigen::MatrixXcd build_dtn_direct(const MfsKernelColumns& cols,
                                  int dense_cap = default_dense_cap);

/// mu = idft(rhat (*) dft(lambda)): approximate outward normal derivative at
/// the collocation points of the exterior field with trace lambda.
cvec apply_dtn(const DtnMap& map, const cvec& lambda);

/// Lambda materialized column by column through apply_dtn; O(N^2 log N).
Eigen::MatrixXcd materialize_dtn(const DtnMap& map);

/// MFS expansion coefficients solving C0 * alpha = lambda.
struct MfsSolution {
  cvec alpha;
  MfsGeometry geom;
};

MfsSolution solve_mfs_coefficients(const MfsGeometry& geom, const cvec& lambda,
                                   double eps_sing = circulant::default_eps_sing);

/// v(p) = sum_j alpha_j (i/4) H0(kappa |p - zeta_j|), for |p| >= r0 (closed
/// exterior; a one-ulp grace absorbs boundary-point rounding).
cplx eval_exterior_field(const MfsSolution& sol, Vec2 p);

/// Outward normal derivative of the field at r0*e^{i theta}.
cplx eval_exterior_normal_derivative(const MfsSolution& sol, double theta);

/// Uniform evaluation grid, row-major with x fastest: point (ix, iy) is
/// (x0 + ix*dx, y0 + iy*dy) at index iy*nx + ix.
struct GridSpec {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  int nx = 0;
  int ny = 0;
};

/// Field over the grid; points with |p| < r_min are masked to quiet NaN.
/// Per-point independent, so the parallel path is bitwise deterministic.
cvec eval_exterior_field_grid(const MfsSolution& sol, const GridSpec& grid,
                              double r_min, bool parallel = true);

/// Analytic DtN eigenvalue kappa * H'_m(kappa r0) / H_m(kappa r0) of the
/// continuous map on the circle of radius r0.
cplx dtn_symbol(double kappa, double r0, int m);

}  // namespace helmdtn::dtn
