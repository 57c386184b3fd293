#pragma once

#include "helmdtn/common.hpp"

namespace helmdtn::manufactured {

/// Parameters of the manufactured exterior solution u = u_c + u_r: a real
/// compactly supported part u_c = chi(r) p(x,y) cut off over [r1, r2], plus an
/// outgoing Fourier-Hankel mode u_r of order m and amplitude beta normalized
/// at the artificial radius r0.
struct ManufacturedConfig {
  double kappa = 0.0;
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  int m = 0;
  cplx beta{0.0, 0.0};
};

/// kappa=8, r0=3, r1=0.72*r0, r2=0.88*r0, m=2, beta=0.35+0.20i.
ManufacturedConfig paper64();

void validate(const ManufacturedConfig& cfg);

/// Quintic blend 10s^3 - 15s^4 + 6s^5 on [0,1]; C^2 flat at both ends.
double blend_s(double s);

struct CutoffChi {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// chi(r) = 1 for r <= r1, 1 - blend((r-r1)/(r2-r1)) on the band, 0 for
/// r >= r2, with its first two radial derivatives; globally C^2.
CutoffChi cutoff_chi(double r, const ManufacturedConfig& cfg);

struct ProfileP {
  double value = 0.0;
  Vec2 grad{};
  double laplacian = 0.0;
};

/// p = cos(2.1x+0.3) sin(1.7y-0.2) + 0.15x + 0.10y with closed-form
/// gradient and Laplacian.
ProfileP profile_p(Vec2 p);

/// u_c = chi(|p|) p(x,y); real, vanishes identically for r >= r2.
cplx u_compact(Vec2 p, const ManufacturedConfig& cfg);

/// u_r = beta H_m(kappa r)/H_m(kappa r0) e^{i m theta}; rejects the origin.
cplx u_radiating(Vec2 p, const ManufacturedConfig& cfg);

/// f = -(p dchi + 2 grad(chi).grad(p) + chi lap(p) + kappa^2 chi p) with
/// dchi = chi'' + chi'/r; exactly zero for r > r2.
cplx source_f(Vec2 p, const ManufacturedConfig& cfg);

/// u_c + u_r.
cplx exact_u(Vec2 p, const ManufacturedConfig& cfg);

}  // namespace helmdtn::manufactured
