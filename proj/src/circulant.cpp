#include "helmdtn/circulant.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace helmdtn::circulant {
namespace {

// Shared out-of-place plans per transform length. Planning is not
// thread-safe; executing a cached plan on fresh buffers is.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<cplx> in(n), out(n);
  auto* fin = reinterpret_cast<fftw_complex*>(in.data());
  auto* fout = reinterpret_cast<fftw_complex*>(out.data());
  PlanPair p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_1d(n, fin, fout, FFTW_FORWARD, flags);
  p.bwd = fftw_plan_dft_1d(n, fin, fout, FFTW_BACKWARD, flags);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fft planning failed");
  cache.emplace(n, p);
  return p;
}

cvec run(const cvec& c, bool backward) {
  if (c.empty()) throw std::invalid_argument("transform of empty vector");
  int n = static_cast<int>(c.size());
  PlanPair p = plans_for(n);
  cvec in(c), out(n);
  fftw_execute_dft(backward ? p.bwd : p.fwd,
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

void check_same_length(size_t a, size_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
}

}  // namespace

cvec dft(const cvec& c) { return run(c, /*backward=*/true); }

cvec idft(const cvec& chat) {
  cvec out = run(chat, /*backward=*/false);
  double scale = 1.0 / static_cast<double>(chat.size());
  for (cplx& v : out) v *= scale;
  return out;
}

SpectralDiagonal circ_eigenvalues(const CirculantMatrix& c) {
  return {dft(c.first_column)};
}

cvec circ_apply(const CirculantMatrix& c, const cvec& x) {
  check_same_length(c.first_column.size(), x.size(), "circ_apply");
  return idft(hadamard_product(dft(c.first_column), dft(x)));
}

cvec circ_solve(const CirculantMatrix& c, const cvec& b, double eps_rel) {
  check_same_length(c.first_column.size(), b.size(), "circ_solve");
  cvec sigma = dft(c.first_column);
  double max_mag = 0.0;
  for (const cplx& s : sigma) max_mag = std::max(max_mag, std::abs(s));
  int worst = -1;
  double worst_mag = 0.0;
  double threshold = eps_rel * max_mag;
  for (size_t k = 0; k < sigma.size(); ++k) {
    double mag = std::abs(sigma[k]);
    if (mag < threshold || mag == 0.0) {
      if (worst < 0 || mag < worst_mag) {
        worst = static_cast<int>(k);
        worst_mag = mag;
      }
    }
  }
  if (worst >= 0) throw SingularCirculant(worst, worst_mag);

  cvec bhat = dft(b);
  for (size_t k = 0; k < bhat.size(); ++k) bhat[k] /= sigma[k];
  return idft(bhat);
}

cvec hadamard_product(const cvec& a, const cvec& b) {
  check_same_length(a.size(), b.size(), "hadamard_product");
  cvec out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

cvec hadamard_divide(const cvec& a, const cvec& b) {
  check_same_length(a.size(), b.size(), "hadamard_divide");
  cvec out(a.size());
  for (size_t k = 0; k < a.size(); ++k) {
    if (b[k] == cplx{0.0, 0.0})
      throw std::domain_error("hadamard_divide: division by zero at index " +
                              std::to_string(k));
    out[k] = a[k] / b[k];
  }
  return out;
}

}  // namespace helmdtn::circulant
