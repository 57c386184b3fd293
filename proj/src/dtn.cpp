#include "helmdtn/dtn.hpp"

#include <Eigen/LU>

#include <limits>

#include "helmdtn/special_functions.hpp"

namespace helmdtn::dtn {

using circulant::dft;
using circulant::idft;

MfsKernelColumns kernel_columns(const MfsGeometry& geom) {
  geometry::validate(geom);
  const int n = geom.n;
  const double r0 = geom.r0, rho = geom.rho, kappa = geom.kappa;
  MfsKernelColumns cols{cvec(n), cvec(n), geom};
  for (int m = 0; m < n; ++m) {
    double c = std::cos(2.0 * pi * m / n);
    double d = std::sqrt(r0 * r0 + rho * rho - 2.0 * r0 * rho * c);
    cols.c0[m] = 0.25 * iu * sf::hankel1(0, kappa * d);
    cols.c1[m] =
        -0.25 * iu * kappa * sf::hankel1(1, kappa * d) * (r0 - rho * c) / d;
  }
  return cols;
}

namespace {

// Same singularity policy as circ_solve, applied to the eigenvalues of C0.
void check_spectrum(const cvec& sigma, double eps_sing) {
  double max_mag = 0.0;
  for (const cplx& s : sigma) max_mag = std::max(max_mag, std::abs(s));
  int worst = -1;
  double worst_mag = 0.0;
  for (size_t k = 0; k < sigma.size(); ++k) {
    double mag = std::abs(sigma[k]);
    if (mag < eps_sing * max_mag || mag == 0.0) {
      if (worst < 0 || mag < worst_mag) {
        worst = static_cast<int>(k);
        worst_mag = mag;
      }
    }
  }
  if (worst >= 0) throw SingularCirculant(worst, worst_mag);
}

Eigen::MatrixXcd circulant_dense(const cvec& col) {
  const int n = static_cast<int>(col.size());
  Eigen::MatrixXcd m(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m(k, j) = col[(k - j + n) % n];
  return m;
}

}  // namespace

DtnMap build_dtn_fft(const MfsGeometry& geom, double eps_sing) {
  return build_dtn_fft(kernel_columns(geom), eps_sing);
}

DtnMap build_dtn_fft(const MfsKernelColumns& cols, double eps_sing) {
  cvec sigma0 = dft(cols.c0);
  check_spectrum(sigma0, eps_sing);
  cvec rhat = dft(cols.c1);
  for (size_t k = 0; k < rhat.size(); ++k) rhat[k] /= sigma0[k];
  return {std::move(rhat), cols.geom};
}

Eigen::MatrixXcd build_dtn_direct(const MfsGeometry& geom, int dense_cap) {
  return build_dtn_direct(kernel_columns(geom), dense_cap);
}

Eigen::MatrixXcd build_dtn_direct(const MfsKernelColumns& cols, int dense_cap) {
  const MfsGeometry& geom = cols.geom;
  if (geom.n > dense_cap)
    throw std::length_error("dense DtN build refused: N = " +
                            std::to_string(geom.n) + " exceeds cap " +
                            std::to_string(dense_cap));
  Eigen::MatrixXcd c0 = circulant_dense(cols.c0);
  Eigen::MatrixXcd c1 = circulant_dense(cols.c1);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(c0);
  double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
  for (int k = 0; k < geom.n; ++k) {
    double mag = std::abs(lu.matrixLU()(k, k));
    pmin = std::min(pmin, mag);
    pmax = std::max(pmax, mag);
  }
  if (pmin == 0.0 || pmin < 1e-15 * pmax)
    throw std::runtime_error("dense DtN build: C0 is numerically singular");
  // C0 and C1 are symmetric, so C1*C0^{-1} = (C0^{-1}*C1)^T.
  return lu.solve(c1).transpose();
}

cvec apply_dtn(const DtnMap& map, const cvec& lambda) {
  if (lambda.size() != map.rhat.size())
    throw std::invalid_argument("apply_dtn: length mismatch");
  return idft(circulant::hadamard_product(map.rhat, dft(lambda)));
}

Eigen::MatrixXcd materialize_dtn(const DtnMap& map) {
  const int n = static_cast<int>(map.rhat.size());
  Eigen::MatrixXcd out(n, n);
  cvec e(n, cplx{0.0, 0.0});
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    cvec col = apply_dtn(map, e);
    e[j] = 0.0;
    for (int k = 0; k < n; ++k) out(k, j) = col[k];
  }
  return out;
}

MfsSolution solve_mfs_coefficients(const MfsGeometry& geom, const cvec& lambda,
                                   double eps_sing) {
  if (static_cast<int>(lambda.size()) != geom.n)
    throw std::invalid_argument("solve_mfs_coefficients: length mismatch");
  MfsKernelColumns cols = kernel_columns(geom);
  return {circulant::circ_solve({cols.c0}, lambda, eps_sing), geom};
}

namespace {

cplx field_at(const MfsSolution& sol, const std::vector<Vec2>& sources,
              Vec2 p) {
  const double kappa = sol.geom.kappa;
  cplx acc{0.0, 0.0};
  for (size_t j = 0; j < sources.size(); ++j) {
    double d = norm(p - sources[j]);
    acc += sol.alpha[j] * sf::hankel1(0, kappa * d);
  }
  return 0.25 * iu * acc;
}

void check_exterior(const MfsSolution& sol, Vec2 p) {
  if (norm(p) < sol.geom.r0 * (1.0 - 1e-14))
    throw std::domain_error(
        "field evaluation point lies inside the collocation circle");
}

}  // namespace

cplx eval_exterior_field(const MfsSolution& sol, Vec2 p) {
  check_exterior(sol, p);
  return field_at(sol, source_points(sol.geom), p);
}

cplx eval_exterior_normal_derivative(const MfsSolution& sol, double theta) {
  const double kappa = sol.geom.kappa, r0 = sol.geom.r0;
  const Vec2 z{r0 * std::cos(theta), r0 * std::sin(theta)};
  const Vec2 nrm = (1.0 / r0) * z;
  std::vector<Vec2> sources = source_points(sol.geom);
  cplx acc{0.0, 0.0};
  for (size_t j = 0; j < sources.size(); ++j) {
    Vec2 diff = z - sources[j];
    double d = norm(diff);
    acc += sol.alpha[j] * sf::hankel1(1, kappa * d) * (dot(diff, nrm) / d);
  }
  return -0.25 * iu * kappa * acc;
}

cvec eval_exterior_field_grid(const MfsSolution& sol, const GridSpec& grid,
                              double r_min, bool parallel) {
  if (grid.nx < 1 || grid.ny < 1)
    throw std::invalid_argument("grid must have at least one point per axis");
  const std::vector<Vec2> sources = source_points(sol.geom);
  const double dx = grid.nx > 1 ? (grid.x1 - grid.x0) / (grid.nx - 1) : 0.0;
  const double dy = grid.ny > 1 ? (grid.y1 - grid.y0) / (grid.ny - 1) : 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const long total = static_cast<long>(grid.nx) * grid.ny;
  cvec out(total);

  auto point_value = [&](long idx) {
    int ix = static_cast<int>(idx % grid.nx);
    int iy = static_cast<int>(idx / grid.nx);
    Vec2 p{grid.x0 + ix * dx, grid.y0 + iy * dy};
    return norm(p) < r_min ? cplx{nan, nan} : field_at(sol, sources, p);
  };

  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long idx = 0; idx < total; ++idx) out[idx] = point_value(idx);
  } else {
    for (long idx = 0; idx < total; ++idx) out[idx] = point_value(idx);
  }
  return out;
}

cplx dtn_symbol(double kappa, double r0, int m) {
  return kappa * sf::hankel1_derivative(m, kappa * r0) /
         sf::hankel1(m, kappa * r0);
}

}  // namespace helmdtn::dtn
