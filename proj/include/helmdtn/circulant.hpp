#pragma once

#include "helmdtn/common.hpp"

namespace helmdtn::circulant {

/// Default relative singularity threshold for circ_solve: an eigenvalue is
/// treated as singular when |sigma_k| < eps_rel * max_j |sigma_j|.
inline constexpr double default_eps_sing = 1e-14;

/// N x N circulant matrix identified by its first column; entry (k, j) is
/// first_column[(k - j) mod N].
struct CirculantMatrix {
  cvec first_column;
};

/// Eigenvalues of a circulant in Fourier order: eigenvalues[k] pairs with the
/// eigenvector w_k, (w_k)_j = exp(-2*pi*i*j*k/N).
struct SpectralDiagonal {
  cvec eigenvalues;
};

/// DFT with positive exponent: out_k = sum_j c_j exp(+2*pi*i*j*k/N).
/// Mixed-radix FFT, any N >= 1.
cvec dft(const cvec& c);

/// Inverse of dft: out_j = (1/N) sum_k c_k exp(-2*pi*i*j*k/N).
cvec idft(const cvec& chat);

SpectralDiagonal circ_eigenvalues(const CirculantMatrix& c);

/// C*x in O(N log N): idft(dft(first_column) (*) dft(x)).
cvec circ_apply(const CirculantMatrix& c, const cvec& x);

/// C^{-1}*b in O(N log N): idft(dft(b) (/) dft(first_column)). Throws
/// SingularCirculant when some |sigma_k| < eps_rel * max |sigma|; eps_rel = 0
/// disables the guard except for exact zeros.
cvec circ_solve(const CirculantMatrix& c, const cvec& b,
                double eps_rel = default_eps_sing);

cvec hadamard_product(const cvec& a, const cvec& b);

/// Entrywise a/b; throws std::domain_error naming the index of a zero entry.
cvec hadamard_divide(const cvec& a, const cvec& b);

}  // namespace helmdtn::circulant
