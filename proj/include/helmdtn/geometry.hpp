#pragma once

#include <string>
#include <vector>

#include "helmdtn/common.hpp"

namespace helmdtn::geometry {

/// Star-shaped closed curve r = R(theta) > 0 about the origin, stored as a
/// base radius plus a list of cosine/sine terms amp*cos(k*theta + phase) /
/// amp*sin(k*theta + phase).
class StarBoundary {
 public:
  struct Term {
    bool is_sin = false;
    int k = 0;
    double amplitude = 0.0;
    double phase = 0.0;
  };

  explicit StarBoundary(double base, std::vector<Term> terms = {});

  static StarBoundary circle(double r0);

  /// 0.55 + 0.10 cos(3t) + 0.06 sin(5t) + 0.04 cos(7t + 0.3).
  static StarBoundary star64();

  /// Accepts "circle:<r0>", "star64", or
  /// "star:<base>[,cos:<k>:<amp>[:<phase>]][,sin:<k>:<amp>[:<phase>]]...".
  static StarBoundary parse(const std::string& spec);

  double radius(double theta) const;
  Vec2 point(double theta) const;

  /// Radial bounds over [0, 2*pi), exact for circles, finely sampled otherwise.
  double min_radius() const { return rmin_; }
  double max_radius() const { return rmax_; }

  bool is_circle() const { return terms_.empty(); }

  /// Canonical parseable form ("circle:<r0>" or "star:<base>,...").
  std::string describe() const;

 private:
  double base_;
  std::vector<Term> terms_;
  double rmin_ = 0.0;
  double rmax_ = 0.0;
};

/// One MFS configuration: n collocation points on the circle of radius r0,
/// n source points on the concentric circle of radius rho < r0, wavenumber
/// kappa. Point k of either family sits at angle 2*pi*k/n.
struct MfsGeometry {
  int n = 0;
  double r0 = 0.0;
  double rho = 0.0;
  double kappa = 0.0;
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const MfsGeometry& geom);

inline double theta_of(const MfsGeometry& geom, int k) {
  return 2.0 * pi * k / geom.n;
}

std::vector<Vec2> collocation_points(const MfsGeometry& geom);
std::vector<Vec2> source_points(const MfsGeometry& geom);

/// True iff p lies strictly between the curve and the circle of radius r0.
bool in_annulus(const StarBoundary& curve, double r0, Vec2 p);

}  // namespace helmdtn::geometry
