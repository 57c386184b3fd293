#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace helmdtn {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Angle of p canonicalized to [0, 2*pi); the tie at 2*pi maps to 0.
inline double angle_of(Vec2 p) {
  double t = std::atan2(p.y, p.x);
  if (t < 0.0) t += 2.0 * pi;
  if (t >= 2.0 * pi) t = 0.0;
  return t;
}

/// Spectral solve hit an eigenvalue with modulus below the singularity
/// threshold; carries the offending Fourier mode index and the modulus.
class SingularCirculant : public std::runtime_error {
 public:
  SingularCirculant(int mode_, double magnitude_)
      : std::runtime_error(format(mode_, magnitude_)),
        mode(mode_),
        magnitude(magnitude_) {}

  int mode;
  double magnitude;

 private:
  static std::string format(int mode, double magnitude) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "singular circulant: |sigma_%d| = %.3e",
                  mode, magnitude);
    return buf;
  }
};

}  // namespace helmdtn
