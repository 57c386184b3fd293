#include "helmdtn/special_functions.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <mutex>
#include <string>

namespace helmdtn::sf {
namespace {

void quiet_backend() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

void check_order(int nu) {
  if (nu > max_order || nu < -max_order)
    throw std::out_of_range("bessel order " + std::to_string(nu) +
                            " exceeds the supported ceiling " +
                            std::to_string(max_order));
}

double checked(int status, double value, const char* what, int nu, double x) {
  if (status == GSL_SUCCESS) return value;
  char buf[128];
  if (status == GSL_EOVRFLW || status == GSL_EUNDRFLW)
    std::snprintf(buf, sizeof buf, "%s(%d, %g) overflows", what, nu, x);
  else
    std::snprintf(buf, sizeof buf, "%s(%d, %g) failed: %s", what, nu, x,
                  gsl_strerror(status));
  if (status == GSL_EOVRFLW) throw std::overflow_error(buf);
  throw std::runtime_error(buf);
}

// Reflection-free evaluations, nu >= 0; no order ceiling so that the
// derivative formula may reach one order past the public limit.
double j_raw(int nu, double x) {
  quiet_backend();
  gsl_sf_result res;
  int status = gsl_sf_bessel_Jn_e(nu, x, &res);
  return checked(status, res.val, "J", nu, x);
}

double y_raw(int nu, double x) {
  quiet_backend();
  gsl_sf_result res;
  int status = gsl_sf_bessel_Yn_e(nu, x, &res);
  return checked(status, res.val, "Y", nu, x);
}

double reflect_sign(int nu) { return (nu & 1) ? -1.0 : 1.0; }

cplx hankel1_raw(int nu, double x) {
  if (nu < 0) return reflect_sign(nu) * hankel1_raw(-nu, x);
  return {j_raw(nu, x), y_raw(nu, x)};
}

}  // namespace

double bessel_j(int nu, double x) {
  check_order(nu);
  if (x < 0.0) throw std::domain_error("bessel_j requires x >= 0");
  if (nu < 0) return reflect_sign(nu) * j_raw(-nu, x);
  return j_raw(nu, x);
}

double bessel_y(int nu, double x) {
  check_order(nu);
  if (x <= 0.0) throw std::domain_error("bessel_y requires x > 0");
  if (nu < 0) return reflect_sign(nu) * y_raw(-nu, x);
  return y_raw(nu, x);
}

cplx hankel1(int nu, double x) {
  check_order(nu);
  if (x <= 0.0) throw std::domain_error("hankel1 requires x > 0");
  return hankel1_raw(nu, x);
}

cplx hankel1_derivative(int nu, double x) {
  check_order(nu);
  if (x <= 0.0) throw std::domain_error("hankel1_derivative requires x > 0");
  return 0.5 * (hankel1_raw(nu - 1, x) - hankel1_raw(nu + 1, x));
}

}  // namespace helmdtn::sf
