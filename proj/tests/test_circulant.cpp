#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "helmdtn/circulant.hpp"
#include "support/oracles.hpp"

using namespace helmdtn;
using circulant::CirculantMatrix;
using oracles::circulant_dense;
using oracles::max_abs;
using oracles::max_abs_diff;

namespace {

cvec unit_vector(int n, int at) {
  cvec v(n, 0.0);
  v[at] = 1.0;
  return v;
}

// Negative-exponent transform pair, the convention most FFT libraries call
// "forward"; used to show the spectral DtN pipeline is convention-agnostic.
cvec conj_dft(const cvec& c) {
  const int n = static_cast<int>(c.size());
  cvec out(n);
  for (int k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j)
      s += c[j] * std::polar(1.0, -2.0 * pi * j * k / n);
    out[k] = s;
  }
  return out;
}

cvec conj_idft(const cvec& chat) {
  const int n = static_cast<int>(chat.size());
  cvec out(n);
  for (int j = 0; j < n; ++j) {
    cplx s = 0.0;
    for (int k = 0; k < n; ++k)
      s += chat[k] * std::polar(1.0, 2.0 * pi * j * k / n);
    out[j] = s / static_cast<double>(n);
  }
  return out;
}

}  // namespace

TEST_SUITE("circulant") {

TEST_CASE("delta transforms to the all-ones vector") {
  cvec out = circulant::dft(unit_vector(5, 0));
  for (const cplx& z : out) CHECK(std::abs(z - 1.0) <= 1e-15);
}

TEST_CASE("constant transforms to a scaled delta") {
  cvec out = circulant::dft(cvec(4, 1.0));
  CHECK(std::abs(out[0] - 4.0) <= 1e-15);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(out[k]) <= 1e-15);
}

TEST_CASE("inverse of a scaled delta is the all-ones vector") {
  cvec in(6, 0.0);
  in[0] = 6.0;
  cvec out = circulant::idft(in);
  for (const cplx& z : out) CHECK(std::abs(z - 1.0) <= 1e-15);
}

TEST_CASE("transforms match direct summation") {
  auto g = oracles::rng(11);
  cvec c = oracles::random_cvec(g, 16);
  CHECK(max_abs_diff(circulant::dft(c), oracles::naive_dft(c)) <=
        1e-12 * max_abs(c) * 16);
  CHECK(max_abs_diff(circulant::idft(c), oracles::naive_idft(c)) <=
        1e-12 * max_abs(c));
}

TEST_CASE("round trips are lossless at mixed-radix lengths") {
  auto g = oracles::rng(12);
  for (int n : {8, 100, 500}) {
    cvec c = oracles::random_cvec(g, n);
    CHECK(max_abs_diff(circulant::idft(circulant::dft(c)), c) <=
          1e-13 * max_abs(c) * n);
    CHECK(max_abs_diff(circulant::dft(circulant::idft(c)), c) <=
          1e-13 * max_abs(c) * n);
  }
}

TEST_CASE("identity circulant has unit eigenvalues") {
  auto eig = circulant::circ_eigenvalues({unit_vector(9, 0)});
  for (const cplx& s : eig.eigenvalues) CHECK(std::abs(s - 1.0) <= 1e-15);
}

TEST_CASE("shift circulant eigenvalues are the roots of unity") {
  const int n = 8;
  auto eig = circulant::circ_eigenvalues({unit_vector(n, 1)});
  for (int k = 0; k < n; ++k)
    CHECK(std::abs(eig.eigenvalues[k] - std::polar(1.0, 2.0 * pi * k / n)) <=
          1e-13);
}

TEST_CASE("eigenvalues match a dense eigensolver as multisets") {
  auto g = oracles::rng(13);
  cvec col = oracles::random_cvec(g, 8);
  auto eig = circulant::circ_eigenvalues({col});
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(circulant_dense(col));
  REQUIRE(solver.info() == Eigen::Success);
  std::vector<bool> used(8, false);
  for (const cplx& s : eig.eigenvalues) {
    double best = 1e300;
    int at = -1;
    for (int j = 0; j < 8; ++j) {
      if (used[j]) continue;
      double d = std::abs(s - solver.eigenvalues()(j));
      if (d < best) best = d, at = j;
    }
    REQUIRE(at >= 0);
    used[at] = true;
    CHECK(best <= 1e-10 * std::max(1.0, std::abs(s)));
  }
}

TEST_CASE("spectral pairs satisfy the eigenvector relation") {
  const int n = 16;
  auto g = oracles::rng(14);
  cvec col = oracles::random_cvec(g, n);
  Eigen::MatrixXcd dense = circulant_dense(col);
  auto eig = circulant::circ_eigenvalues({col});
  for (int k : {0, 1, 5, n - 1}) {
    Eigen::VectorXcd w(n);
    for (int j = 0; j < n; ++j) w(j) = std::polar(1.0, -2.0 * pi * j * k / n);
    Eigen::VectorXcd lhs = dense * w;
    Eigen::VectorXcd rhs = eig.eigenvalues[k] * w;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * rhs.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("application by the identity is exact") {
  auto g = oracles::rng(15);
  cvec x = oracles::random_cvec(g, 7);
  CHECK(max_abs_diff(circulant::circ_apply({unit_vector(7, 0)}, x), x) <=
        1e-14);
}

TEST_CASE("the shift circulant rotates entries down by one") {
  auto g = oracles::rng(16);
  const int n = 6;
  cvec x = oracles::random_cvec(g, n);
  cvec y = circulant::circ_apply({unit_vector(n, 1)}, x);
  for (int m = 0; m < n; ++m)
    CHECK(std::abs(y[m] - x[(m - 1 + n) % n]) <= 1e-13);
}

TEST_CASE("application matches a dense product") {
  auto g = oracles::rng(17);
  const int n = 16;
  cvec col = oracles::random_cvec(g, n);
  cvec x = oracles::random_cvec(g, n);
  Eigen::VectorXcd xe(n);
  for (int i = 0; i < n; ++i) xe(i) = x[i];
  Eigen::VectorXcd want = circulant_dense(col) * xe;
  cvec got = circulant::circ_apply({col}, x);
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(got[i] - want(i)) <= 1e-12 * want.cwiseAbs().maxCoeff());
}

TEST_CASE("solving against the identity returns the data") {
  auto g = oracles::rng(18);
  cvec b = oracles::random_cvec(g, 9);
  CHECK(max_abs_diff(circulant::circ_solve({unit_vector(9, 0)}, b), b) <=
        1e-14);
}

TEST_CASE("solve residual stays at round-off for well-conditioned systems") {
  auto g = oracles::rng(19);
  const int n = 16;
  cvec col = oracles::random_cvec(g, n);
  col[0] += 8.0;  // push the spectrum away from zero
  cvec b = oracles::random_cvec(g, n);
  cvec x = circulant::circ_solve({col}, b);
  Eigen::VectorXcd xe(n);
  for (int i = 0; i < n; ++i) xe(i) = x[i];
  Eigen::VectorXcd r = circulant_dense(col) * xe;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(r(i) - b[i]));
  CHECK(worst <= 1e-11 * max_abs(b));
}

TEST_CASE("a vanished eigenvalue raises a structured error") {
  const int n = 8;
  cvec chat(n, 1.0);
  chat[3] = 0.0;
  CirculantMatrix c{circulant::idft(chat)};
  cvec b(n, 1.0);
  try {
    circulant::circ_solve(c, b);
    FAIL("expected SingularCirculant");
  } catch (const SingularCirculant& e) {
    CHECK(e.mode == 3);
    CHECK(e.magnitude <= 1e-14);
    CHECK(doctest::String(e.what()) ==
          doctest::Contains(doctest::String("sigma_3")));
  }
}

TEST_CASE("a zero threshold still refuses exact zeros") {
  // The alternating column transforms to exact integer zeros off mode 2.
  CirculantMatrix c{{1.0, -1.0, 1.0, -1.0}};
  try {
    circulant::circ_solve(c, cvec(4, 1.0), 0.0);
    FAIL("expected SingularCirculant");
  } catch (const SingularCirculant& e) {
    CHECK(e.magnitude == 0.0);
  }
}

TEST_CASE("hadamard product with ones is the identity") {
  auto g = oracles::rng(20);
  cvec a = oracles::random_cvec(g, 11);
  CHECK(max_abs_diff(circulant::hadamard_product(a, cvec(11, 1.0)), a) == 0.0);
}

TEST_CASE("division and multiplication invert each other") {
  auto g = oracles::rng(21);
  const int n = 12;
  cvec a = oracles::random_cvec(g, n);
  cvec b(n);
  for (auto& z : b) z = {oracles::uniform(g, 0.5, 2.0),
                         oracles::uniform(g, 0.5, 2.0)};
  cvec back = circulant::hadamard_product(circulant::hadamard_divide(a, b), b);
  CHECK(max_abs_diff(back, a) <= 1e-13 * max_abs(a));
}

TEST_CASE("entrywise quotients evaluate directly") {
  cvec out = circulant::hadamard_divide({2.0, 4.0}, {1.0, 2.0});
  CHECK(out[0] == cplx{2.0, 0.0});
  CHECK(out[1] == cplx{2.0, 0.0});
}

TEST_CASE("division by zero names the offending index") {
  CHECK_THROWS_WITH_AS(
      circulant::hadamard_divide({1.0, 1.0, 1.0}, {1.0, 0.0, 1.0}),
      doctest::Contains("index 1"), std::domain_error);
}

TEST_CASE("length mismatches are rejected") {
  CHECK_THROWS_AS(circulant::hadamard_product(cvec(3, 1.0), cvec(4, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(circulant::circ_apply({cvec(3, 1.0)}, cvec(4, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("the spectral factorization reproduces the dense matrix") {
  auto g = oracles::rng(22);
  for (int n : {4, 16, 64}) {
    cvec col = oracles::random_cvec(g, n);
    cvec chat = circulant::dft(col);
    Eigen::MatrixXcd w(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        w(k, j) = std::polar(1.0, 2.0 * pi * k * j / n);
    Eigen::VectorXcd d(n);
    for (int k = 0; k < n; ++k) d(k) = chat[k];
    Eigen::MatrixXcd rebuilt =
        (w.adjoint() * d.asDiagonal() * w) / static_cast<double>(n);
    Eigen::MatrixXcd dense = circulant_dense(col);
    CHECK((rebuilt - dense).cwiseAbs().maxCoeff() <=
          1e-11 * dense.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("the spectral pipeline is transform-convention agnostic") {
  auto g = oracles::rng(23);
  const int n = 32;
  cvec c0 = oracles::random_symmetric_cvec(g, n);
  cvec c1 = oracles::random_symmetric_cvec(g, n);
  c0[0] += 6.0;
  cvec lambda = oracles::random_cvec(g, n);

  cvec rhat_pos = circulant::hadamard_divide(circulant::dft(c1),
                                             circulant::dft(c0));
  cvec mu_pos = circulant::idft(
      circulant::hadamard_product(rhat_pos, circulant::dft(lambda)));

  cvec rhat_neg = circulant::hadamard_divide(conj_dft(c1), conj_dft(c0));
  cvec mu_neg =
      conj_idft(circulant::hadamard_product(rhat_neg, conj_dft(lambda)));

  CHECK(max_abs_diff(mu_pos, mu_neg) <= 1e-12 * max_abs(mu_pos) * n);
}

TEST_CASE("symmetric circulants commute") {
  auto g = oracles::rng(24);
  const int n = 16;
  Eigen::MatrixXcd a = circulant_dense(oracles::random_symmetric_cvec(g, n));
  Eigen::MatrixXcd b = circulant_dense(oracles::random_symmetric_cvec(g, n));
  Eigen::MatrixXcd ab = a * b, ba = b * a;
  CHECK((ab - ba).cwiseAbs().maxCoeff() <= 1e-11 * ab.cwiseAbs().maxCoeff());
}

}  // TEST_SUITE
