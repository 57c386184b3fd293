#include "helmdtn/manufactured.hpp"

#include "helmdtn/special_functions.hpp"

namespace helmdtn::manufactured {

ManufacturedConfig paper64() {
  return {8.0, 3.0, 2.16, 2.64, 2, {0.35, 0.20}};
}

void validate(const ManufacturedConfig& cfg) {
  if (!(cfg.kappa > 0.0))
    throw std::invalid_argument("wavenumber must be positive");
  if (!(0.0 < cfg.r1 && cfg.r1 < cfg.r2 && cfg.r2 < cfg.r0))
    throw std::invalid_argument("cutoff radii must satisfy 0 < r1 < r2 < r0");
}

double blend_s(double s) {
  if (s < 0.0 || s > 1.0)
    throw std::domain_error("blend parameter outside [0, 1]");
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

CutoffChi cutoff_chi(double r, const ManufacturedConfig& cfg) {
  if (r <= cfg.r1) return {1.0, 0.0, 0.0};
  if (r >= cfg.r2) return {0.0, 0.0, 0.0};
  double w = cfg.r2 - cfg.r1;
  double s = (r - cfg.r1) / w;
  double sp = 30.0 * s * s * (1.0 + s * (-2.0 + s));
  double spp = 60.0 * s * (1.0 + s * (-3.0 + 2.0 * s));
  return {1.0 - blend_s(s), -sp / w, -spp / (w * w)};
}

ProfileP profile_p(Vec2 p) {
  double a = 2.1 * p.x + 0.3;
  double b = 1.7 * p.y - 0.2;
  ProfileP out;
  out.value = std::cos(a) * std::sin(b) + 0.15 * p.x + 0.10 * p.y;
  out.grad = {-2.1 * std::sin(a) * std::sin(b) + 0.15,
              1.7 * std::cos(a) * std::cos(b) + 0.10};
  out.laplacian = -(2.1 * 2.1 + 1.7 * 1.7) * std::cos(a) * std::sin(b);
  return out;
}

cplx u_compact(Vec2 p, const ManufacturedConfig& cfg) {
  return cutoff_chi(norm(p), cfg).value * profile_p(p).value;
}

cplx u_radiating(Vec2 p, const ManufacturedConfig& cfg) {
  double r = norm(p);
  if (r <= 0.0)
    throw std::domain_error("radiating mode is singular at the origin");
  double theta = std::atan2(p.y, p.x);
  return cfg.beta * sf::hankel1(cfg.m, cfg.kappa * r) /
         sf::hankel1(cfg.m, cfg.kappa * cfg.r0) *
         std::exp(iu * static_cast<double>(cfg.m) * theta);
}

cplx source_f(Vec2 p, const ManufacturedConfig& cfg) {
  double r = norm(p);
  CutoffChi chi = cutoff_chi(r, cfg);
  ProfileP pr = profile_p(p);
  double grad_dot = 0.0, lap_chi = chi.d2;
  if (chi.d1 != 0.0) {
    grad_dot = chi.d1 * (p.x * pr.grad.x + p.y * pr.grad.y) / r;
    lap_chi += chi.d1 / r;
  }
  double f = -(pr.value * lap_chi + 2.0 * grad_dot +
               chi.value * (pr.laplacian + cfg.kappa * cfg.kappa * pr.value));
  return {f, 0.0};
}

cplx exact_u(Vec2 p, const ManufacturedConfig& cfg) {
  return u_compact(p, cfg) + u_radiating(p, cfg);
}

}  // namespace helmdtn::manufactured
