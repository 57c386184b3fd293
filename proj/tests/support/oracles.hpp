#pragma once

// Independent reference implementations the tests compare against: direct
// O(N^2) transforms, dense circulant algebra, power-series Bessel values,
// and finite-difference stencils. Deliberately naive.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "helmdtn/common.hpp"

namespace oracles {

using helmdtn::cplx;
using helmdtn::cvec;
using helmdtn::pi;

inline constexpr double euler_gamma = 0.57721566490153286;

/// Direct summation with the positive-exponent convention.
inline cvec naive_dft(const cvec& c) {
  const int n = static_cast<int>(c.size());
  cvec out(n);
  for (int k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j)
      s += c[j] * std::polar(1.0, 2.0 * pi * j * k / n);
    out[k] = s;
  }
  return out;
}

inline cvec naive_idft(const cvec& chat) {
  const int n = static_cast<int>(chat.size());
  cvec out(n);
  for (int j = 0; j < n; ++j) {
    cplx s = 0.0;
    for (int k = 0; k < n; ++k)
      s += chat[k] * std::polar(1.0, -2.0 * pi * j * k / n);
    out[j] = s / static_cast<double>(n);
  }
  return out;
}

/// Entry (k, j) = first_column[(k - j) mod N].
inline Eigen::MatrixXcd circulant_dense(const cvec& col) {
  const int n = static_cast<int>(col.size());
  Eigen::MatrixXcd m(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m(k, j) = col[(k - j + n) % n];
  return m;
}

/// J_0 by its power series, summed to machine convergence.
inline double j0_series(double x) {
  double term = 1.0, sum = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (k * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

/// Y_0 by the J_0-coupled logarithmic series.
inline double y0_series(double x) {
  double term = 1.0, sum = 0.0, harmonic = 0.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (k * static_cast<double>(k));
    harmonic += 1.0 / k;
    sum += -term * harmonic;
    if (std::abs(term) < 1e-18) break;
  }
  return (2.0 / pi) * ((std::log(x / 2.0) + euler_gamma) * j0_series(x) + sum);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline cvec random_cvec(std::mt19937_64& g, int n, double lo = -1.0,
                        double hi = 1.0) {
  cvec v(n);
  for (auto& z : v) z = {uniform(g, lo, hi), uniform(g, lo, hi)};
  return v;
}

/// Symmetric first column (c_m = c_{N-m}), the class the MFS kernels live in.
inline cvec random_symmetric_cvec(std::mt19937_64& g, int n) {
  cvec v = random_cvec(g, n);
  for (int m = 1; m < n; ++m) v[n - m] = v[m];
  return v;
}

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline cplx central_diff_c(const std::function<cplx(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// 5-point finite-difference Laplacian of a complex field on the plane.
inline cplx fd_laplacian(const std::function<cplx(helmdtn::Vec2)>& f,
                         helmdtn::Vec2 p, double h) {
  return (f({p.x + h, p.y}) + f({p.x - h, p.y}) + f({p.x, p.y + h}) +
          f({p.x, p.y - h}) - 4.0 * f({p.x, p.y})) /
         (h * h);
}

inline double max_abs(const cvec& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const cvec& a, const cvec& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracles
