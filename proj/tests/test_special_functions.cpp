#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helmdtn/special_functions.hpp"
#include "support/oracles.hpp"

using namespace helmdtn;
using oracles::central_diff;

namespace {

// Derivative of an integer-order cylinder function via f' = (f_{n-1} - f_{n+1})/2
// with the integer reflection f_{-1} = -f_1.
double bessel_j_derivative(int n, double x) {
  double lo = n == 0 ? -sf::bessel_j(1, x) : sf::bessel_j(n - 1, x);
  return (lo - sf::bessel_j(n + 1, x)) / 2.0;
}

double bessel_y_derivative(int n, double x) {
  double lo = n == 0 ? -sf::bessel_y(1, x) : sf::bessel_y(n - 1, x);
  return (lo - sf::bessel_y(n + 1, x)) / 2.0;
}

}  // namespace

TEST_SUITE("special_functions") {

TEST_CASE("first kind at the origin") {
  CHECK(sf::bessel_j(0, 0.0) == 1.0);
  CHECK(sf::bessel_j(1, 0.0) == 0.0);
  CHECK(sf::bessel_j(5, 0.0) == 0.0);
}

TEST_CASE("first kind matches the power series") {
  CHECK(std::abs(sf::bessel_j(0, 1.0) - 0.76519768655796655) <= 1e-15);
  for (double x : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0})
    CHECK(std::abs(sf::bessel_j(0, x) - oracles::j0_series(x)) <= 1e-13);
}

TEST_CASE("second kind matches the logarithmic series") {
  CHECK(std::abs(sf::bessel_y(0, 1.0) - 0.08825696421567696) <= 1e-14);
  for (double x : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0})
    CHECK(std::abs(sf::bessel_y(0, x) - oracles::y0_series(x)) <= 1e-12);
}

TEST_CASE("wronskian identity across orders and arguments") {
  for (int n = 0; n <= 8; ++n) {
    for (double x = 0.1; x <= 100.0; x *= 1.7) {
      double w = sf::bessel_j(n, x) * bessel_y_derivative(n, x) -
                 bessel_j_derivative(n, x) * sf::bessel_y(n, x);
      double want = 2.0 / (pi * x);
      CHECK(std::abs(w - want) <= 1e-10 * std::abs(want));
    }
  }
}

TEST_CASE("three-term recurrence for the second kind") {
  for (double x = 0.5; x <= 100.0; x *= 2.1) {
    double lhs = sf::bessel_y(2, x);
    double rhs = (2.0 / x) * sf::bessel_y(1, x) - sf::bessel_y(0, x);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("hankel combines both kinds") {
  cplx h = sf::hankel1(0, 1.0);
  CHECK(std::abs(h.real() - 0.76519768655796655) <= 1e-15);
  CHECK(std::abs(h.imag() - 0.08825696421567696) <= 1e-14);
}

TEST_CASE("hankel recurrence closure") {
  for (int nu = 1; nu <= 8; ++nu) {
    for (double x = 0.5; x <= 100.0; x *= 2.3) {
      cplx lhs = sf::hankel1(nu - 1, x) + sf::hankel1(nu + 1, x);
      cplx rhs = (2.0 * nu / x) * sf::hankel1(nu, x);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
    }
  }
}

TEST_CASE("hankel modulus approaches the large-argument asymptote") {
  double want = std::sqrt(2.0 / (pi * 100.0));
  for (int m = 0; m <= 3; ++m)
    CHECK(std::abs(sf::hankel1(m, 100.0)) ==
          doctest::Approx(want).epsilon(0.05));
}

TEST_CASE("derivative at order zero reduces to minus order one") {
  for (double x : {0.3, 1.0, 7.0, 30.0})
    CHECK(sf::hankel1_derivative(0, x) == -sf::hankel1(1, x));
}

TEST_CASE("derivative matches central finite differences") {
  const double h = 1e-6;
  for (int nu = 0; nu <= 4; ++nu) {
    for (double x = 1.0; x <= 50.0; x *= 1.9) {
      cplx fd = (sf::hankel1(nu, x + h) - sf::hankel1(nu, x - h)) / (2.0 * h);
      cplx d = sf::hankel1_derivative(nu, x);
      CHECK(std::abs(d - fd) <= 1e-7 * std::abs(d));
    }
  }
}

TEST_CASE("integer reflection is exact in sign") {
  for (double x : {0.7, 3.0, 25.0}) {
    CHECK(sf::bessel_j(-2, x) == sf::bessel_j(2, x));
    CHECK(sf::bessel_j(-3, x) == -sf::bessel_j(3, x));
    CHECK(sf::bessel_y(-4, x) == sf::bessel_y(4, x));
    CHECK(sf::hankel1(-1, x) == -sf::hankel1(1, x));
    CHECK(sf::hankel1(-2, x) == sf::hankel1(2, x));
  }
}

TEST_CASE("domain and order limits are rejected") {
  CHECK_THROWS_AS(sf::bessel_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(sf::bessel_y(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(sf::bessel_y(1, -0.5), std::domain_error);
  CHECK_THROWS_AS(sf::hankel1(0, -2.0), std::domain_error);
  CHECK_THROWS_AS(sf::hankel1_derivative(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(sf::bessel_j(65, 1.0), std::out_of_range);
  CHECK_THROWS_AS(sf::hankel1(-65, 1.0), std::out_of_range);
}

TEST_CASE("accuracy holds across the kernel argument range") {
  // kappa * distance reaches about 180 on the evaluation grids; spot-check
  // against the series low and the recurrence high.
  for (double x : {120.0, 180.0, 200.0}) {
    cplx lhs = sf::hankel1(0, x) + sf::hankel1(2, x);
    cplx rhs = (2.0 / x) * sf::hankel1(1, x);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(sf::hankel1(1, x)));
  }
}

}  // TEST_SUITE
