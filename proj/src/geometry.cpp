#include "helmdtn/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace helmdtn::geometry {

StarBoundary::StarBoundary(double base, std::vector<Term> terms)
    : base_(base), terms_(std::move(terms)) {
  for (const Term& t : terms_) {
    if (t.k <= 0)
      throw std::invalid_argument("boundary term frequency must be positive");
  }
  if (terms_.empty()) {
    rmin_ = rmax_ = base_;
  } else {
    constexpr int samples = 1 << 15;
    rmin_ = rmax_ = radius(0.0);
    for (int i = 1; i < samples; ++i) {
      double r = radius(2.0 * pi * i / samples);
      rmin_ = std::min(rmin_, r);
      rmax_ = std::max(rmax_, r);
    }
  }
  if (rmin_ <= 0.0)
    throw std::invalid_argument("boundary radius must stay positive");
}

StarBoundary StarBoundary::circle(double r0) { return StarBoundary(r0); }

StarBoundary StarBoundary::star64() {
  return StarBoundary(0.55, {{false, 3, 0.10, 0.0},
                             {true, 5, 0.06, 0.0},
                             {false, 7, 0.04, 0.3}});
}

StarBoundary StarBoundary::parse(const std::string& spec) {
  if (spec == "star64") return star64();
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("bad curve spec '" + spec + "': " + why);
  };
  auto to_double = [&](const std::string& s) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad("expected a number, got '" + s + "'");
    }
    if (used != s.size()) throw bad("trailing junk in number '" + s + "'");
    return v;
  };

  if (spec.rfind("circle:", 0) == 0) {
    double r0 = to_double(spec.substr(7));
    if (r0 <= 0.0) throw bad("circle radius must be positive");
    return circle(r0);
  }
  if (spec.rfind("star:", 0) != 0)
    throw bad("expected 'circle:<r0>', 'star64' or 'star:<base>,...'");

  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(5));
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.empty()) throw bad("missing base radius");

  double base = to_double(parts[0]);
  std::vector<Term> terms;
  for (size_t i = 1; i < parts.size(); ++i) {
    std::vector<std::string> f;
    std::stringstream ts(parts[i]);
    while (std::getline(ts, item, ':')) f.push_back(item);
    if (f.size() < 3 || f.size() > 4)
      throw bad("term '" + parts[i] + "' is not cos:<k>:<amp>[:<phase>]");
    bool is_sin;
    if (f[0] == "cos")
      is_sin = false;
    else if (f[0] == "sin")
      is_sin = true;
    else
      throw bad("term kind '" + f[0] + "' is neither cos nor sin");
    int k = static_cast<int>(to_double(f[1]));
    double amp = to_double(f[2]);
    double phase = f.size() == 4 ? to_double(f[3]) : 0.0;
    terms.push_back({is_sin, k, amp, phase});
  }
  return StarBoundary(base, std::move(terms));
}

double StarBoundary::radius(double theta) const {
  double r = base_;
  for (const Term& t : terms_) {
    double arg = t.k * theta + t.phase;
    r += t.amplitude * (t.is_sin ? std::sin(arg) : std::cos(arg));
  }
  return r;
}

Vec2 StarBoundary::point(double theta) const {
  double r = radius(theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::string StarBoundary::describe() const {
  char buf[64];
  std::string out;
  if (terms_.empty()) {
    std::snprintf(buf, sizeof buf, "circle:%.17g", base_);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "star:%.17g", base_);
  out = buf;
  for (const Term& t : terms_) {
    if (t.phase != 0.0)
      std::snprintf(buf, sizeof buf, ",%s:%d:%.17g:%.17g",
                    t.is_sin ? "sin" : "cos", t.k, t.amplitude, t.phase);
    else
      std::snprintf(buf, sizeof buf, ",%s:%d:%.17g", t.is_sin ? "sin" : "cos",
                    t.k, t.amplitude);
    out += buf;
  }
  return out;
}

void validate(const MfsGeometry& geom) {
  if (geom.n < 1) throw std::invalid_argument("point count must be >= 1");
  if (!(geom.r0 > 0.0))
    throw std::invalid_argument("collocation radius must be positive");
  if (!(geom.rho > 0.0))
    throw std::invalid_argument("source radius must be positive");
  if (!(geom.rho < geom.r0))
    throw std::invalid_argument(
        "source radius must be strictly inside the collocation circle");
  if (!(geom.kappa > 0.0))
    throw std::invalid_argument("wavenumber must be positive");
}

namespace {

std::vector<Vec2> ring(int n, double r) {
  std::vector<Vec2> pts(n);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * pi * k / n;
    pts[k] = {r * std::cos(t), r * std::sin(t)};
  }
  return pts;
}

}  // namespace

std::vector<Vec2> collocation_points(const MfsGeometry& geom) {
  validate(geom);
  return ring(geom.n, geom.r0);
}

std::vector<Vec2> source_points(const MfsGeometry& geom) {
  validate(geom);
  return ring(geom.n, geom.rho);
}

bool in_annulus(const StarBoundary& curve, double r0, Vec2 p) {
  double r = norm(p);
  return curve.radius(angle_of(p)) < r && r < r0;
}

}  // namespace helmdtn::geometry
