#include "helmdtn/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace helmdtn::mesh {
namespace {

double signed_area(const TriMesh& m, int t) {
  Vec2 a = m.nodes[m.triangles[t][0]];
  Vec2 b = m.nodes[m.triangles[t][1]];
  Vec2 c = m.nodes[m.triangles[t][2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

uint64_t edge_key(int a, int b) {
  return (static_cast<uint64_t>(std::min(a, b)) << 32) |
         static_cast<uint32_t>(std::max(a, b));
}

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("mesh validation: " + what);
}

}  // namespace

void check_positive_areas(const TriMesh& m) {
  for (size_t t = 0; t < m.triangles.size(); ++t)
    if (!(signed_area(m, static_cast<int>(t)) > 0.0))
      fail("positive-orientation violation at triangle " + std::to_string(t));
}

void check_conforming(const TriMesh& m) {
  const int v = static_cast<int>(m.nodes.size());
  std::unordered_map<uint64_t, int> undirected;
  std::unordered_set<uint64_t> directed;
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    for (int e = 0; e < 3; ++e) {
      int a = m.triangles[t][e];
      int b = m.triangles[t][(e + 1) % 3];
      if (a < 0 || b < 0 || a >= v || b >= v)
        fail("triangle " + std::to_string(t) + " references a missing node");
      if (a == b) fail("degenerate edge in triangle " + std::to_string(t));
      uint64_t dir = (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
      if (!directed.insert(dir).second)
        fail("conformity violation: directed edge (" + std::to_string(a) +
             "," + std::to_string(b) + ") appears twice");
      if (++undirected[edge_key(a, b)] > 2)
        fail("conformity violation: edge (" + std::to_string(a) + "," +
             std::to_string(b) + ") shared by more than two triangles");
    }
  }
  std::vector<char> boundary(v, 0);
  for (int i : m.gamma_nodes) boundary[i] = 1;
  for (int i : m.gamma0_nodes) boundary[i] = 1;
  for (const auto& [key, count] : undirected) {
    if (count != 1) continue;
    int a = static_cast<int>(key >> 32);
    int b = static_cast<int>(key & 0xffffffffu);
    if (!boundary[a] || !boundary[b])
      fail("conformity violation: hanging edge (" + std::to_string(a) + "," +
           std::to_string(b) + ") off the boundary");
  }
}

void check_euler(const TriMesh& m) {
  std::unordered_set<uint64_t> edges;
  for (const auto& tri : m.triangles)
    for (int e = 0; e < 3; ++e)
      edges.insert(edge_key(tri[e], tri[(e + 1) % 3]));
  long v = static_cast<long>(m.nodes.size());
  long ecount = static_cast<long>(edges.size());
  long t = static_cast<long>(m.triangles.size());
  if (v - ecount + t != 0)
    fail("Euler-characteristic violation for the annulus: V-E+T = " +
         std::to_string(v - ecount + t));
}

void check_collocation_alignment(const TriMesh& m, double r0) {
  const int n = static_cast<int>(m.gamma0_nodes.size());
  if (n == 0) fail("gamma0 node set is empty");
  const double tol = 1e-12 * std::max(1.0, r0);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * pi * k / n;
    Vec2 want{r0 * std::cos(t), r0 * std::sin(t)};
    if (norm(m.nodes[m.gamma0_nodes[k]] - want) > tol)
      fail("collocation-alignment violation at gamma0 index " +
           std::to_string(k));
  }
}

void check_boundary_on_curves(const TriMesh& m, const StarBoundary& curve,
                              double r0) {
  for (int i : m.gamma0_nodes)
    if (std::abs(norm(m.nodes[i]) - r0) > 1e-8)
      fail("gamma0 node " + std::to_string(i) +
           " is off the artificial circle");
  for (int i : m.gamma_nodes) {
    Vec2 p = m.nodes[i];
    double want = curve.radius(angle_of(p));
    if (std::abs(norm(p) - want) > 1e-6 * want)
      fail("gamma node " + std::to_string(i) + " is off the inner curve");
  }
}

void check_interior_in_annulus(const TriMesh& m, const StarBoundary& curve,
                               double r0) {
  std::vector<char> boundary(m.nodes.size(), 0);
  for (int i : m.gamma_nodes) boundary[i] = 1;
  for (int i : m.gamma0_nodes) boundary[i] = 1;
  for (size_t i = 0; i < m.nodes.size(); ++i) {
    if (boundary[i]) continue;
    if (!geometry::in_annulus(curve, r0, m.nodes[i]))
      fail("interior node " + std::to_string(i) + " escapes the annulus");
  }
}

void validate_mesh(const TriMesh& m, const StarBoundary& curve, double r0) {
  check_positive_areas(m);
  check_conforming(m);
  check_euler(m);
  check_collocation_alignment(m, r0);
  check_boundary_on_curves(m, curve, r0);
  check_interior_in_annulus(m, curve, r0);
}

TriMesh generate_mapped_mesh(const StarBoundary& curve, double r0, int n,
                             int layers, Grading grading, double ratio) {
  if (n < 8) throw std::invalid_argument("mesh needs at least 8 angular columns");
  if (layers < 2) throw std::invalid_argument("mesh needs at least 2 layers");
  if (!(curve.max_radius() < r0))
    throw std::invalid_argument("curve crosses the artificial boundary");
  if (grading == Grading::geometric && !(ratio > 0.0))
    throw std::invalid_argument("grading ratio must be positive");

  std::vector<double> s(layers + 1);
  if (grading == Grading::uniform || ratio == 1.0) {
    for (int l = 0; l <= layers; ++l) s[l] = static_cast<double>(l) / layers;
  } else {
    double denom = std::pow(ratio, layers) - 1.0;
    for (int l = 0; l <= layers; ++l)
      s[l] = (std::pow(ratio, l) - 1.0) / denom;
  }

  TriMesh m;
  m.nodes.resize(static_cast<size_t>(layers + 1) * n);
  for (int l = 0; l <= layers; ++l) {
    for (int k = 0; k < n; ++k) {
      double t = 2.0 * pi * k / n;
      double r = (1.0 - s[l]) * curve.radius(t) + s[l] * r0;
      m.nodes[static_cast<size_t>(l) * n + k] = {r * std::cos(t),
                                                 r * std::sin(t)};
    }
  }

  auto id = [n](int l, int k) { return l * n + ((k % n + n) % n); };
  m.triangles.reserve(static_cast<size_t>(layers) * n * 2);
  for (int l = 0; l < layers; ++l) {
    for (int k = 0; k < n; ++k) {
      int a = id(l, k), b = id(l + 1, k), c = id(l + 1, k + 1), d = id(l, k + 1);
      double dac = norm(m.nodes[a] - m.nodes[c]);
      double dbd = norm(m.nodes[b] - m.nodes[d]);
      if (dbd < dac) {
        m.triangles.push_back({a, b, d});
        m.triangles.push_back({b, c, d});
      } else {
        m.triangles.push_back({a, b, c});
        m.triangles.push_back({a, c, d});
      }
    }
  }

  m.gamma_nodes.resize(n);
  m.gamma0_nodes.resize(n);
  std::iota(m.gamma_nodes.begin(), m.gamma_nodes.end(), 0);
  std::iota(m.gamma0_nodes.begin(), m.gamma0_nodes.end(), layers * n);
  validate_mesh(m, curve, r0);
  return m;
}

MeshQuality mesh_quality(const TriMesh& m) {
  MeshQuality q;
  q.node_count = static_cast<int>(m.nodes.size());
  q.element_count = static_cast<int>(m.triangles.size());
  q.min_angle_deg = 180.0;
  for (const auto& tri : m.triangles) {
    double len[3];
    for (int e = 0; e < 3; ++e) {
      len[e] = norm(m.nodes[tri[(e + 1) % 3]] - m.nodes[tri[e]]);
      q.h_max = std::max(q.h_max, len[e]);
    }
    for (int corner = 0; corner < 3; ++corner) {
      double opp = len[(corner + 1) % 3];
      double u = len[corner], w = len[(corner + 2) % 3];
      double cosv = (u * u + w * w - opp * opp) / (2.0 * u * w);
      cosv = std::clamp(cosv, -1.0, 1.0);
      q.min_angle_deg = std::min(q.min_angle_deg, std::acos(cosv) * 180.0 / pi);
    }
  }
  return q;
}

int pick_layers(const StarBoundary& curve, double r0, int n, double h_target) {
  double chord = 2.0 * r0 * std::sin(pi / n);
  if (!(chord < h_target))
    throw std::invalid_argument(
        "angular chord already exceeds the target edge length; increase n");
  double depth = r0 - curve.min_radius();
  double dr = std::sqrt(h_target * h_target - chord * chord);
  return std::max(2, static_cast<int>(std::ceil(depth / dr)));
}

void export_mesh(const TriMesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[80];
  out << "nodes " << m.nodes.size() << " triangles " << m.triangles.size()
      << "\n";
  for (const Vec2& p : m.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  for (const auto& tri : m.triangles)
    out << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  out << "gamma:";
  for (int i : m.gamma_nodes) out << " " << i;
  out << "\ngamma0:";
  for (int i : m.gamma0_nodes) out << " " << i;
  out << "\n";
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& why) {
  throw std::runtime_error("parse error in " + path + " at line " +
                           std::to_string(line) + ": " + why);
}

std::vector<int> sorted_by_angle(const TriMesh& m, std::vector<int> idx) {
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return angle_of(m.nodes[a]) < angle_of(m.nodes[b]);
  });
  return idx;
}

}  // namespace

TriMesh import_mesh(const std::string& path, const StarBoundary& curve,
                    double r0, int expected_n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  int lineno = 0;
  std::string line;
  auto next_line = [&]() {
    if (!std::getline(in, line)) parse_fail(path, lineno + 1, "unexpected end of file");
    ++lineno;
    return std::stringstream(line);
  };

  TriMesh m;
  {
    auto ss = next_line();
    std::string knodes, ktris;
    long v = -1, t = -1;
    ss >> knodes >> v >> ktris >> t;
    if (ss.fail() || knodes != "nodes" || ktris != "triangles" || v < 0 || t < 0)
      parse_fail(path, lineno, "expected header 'nodes <V> triangles <T>'");
    m.nodes.resize(v);
    m.triangles.resize(t);
  }
  for (auto& p : m.nodes) {
    auto ss = next_line();
    ss >> p.x >> p.y;
    if (ss.fail()) parse_fail(path, lineno, "expected node line 'x y'");
  }
  for (auto& tri : m.triangles) {
    auto ss = next_line();
    ss >> tri[0] >> tri[1] >> tri[2];
    if (ss.fail()) parse_fail(path, lineno, "expected triangle line 'i j k'");
  }
  auto read_index_line = [&](const char* tag) {
    auto ss = next_line();
    std::string key;
    ss >> key;
    if (key != tag)
      parse_fail(path, lineno, std::string("expected '") + tag + " <indices...>'");
    std::vector<int> idx;
    int i;
    while (ss >> i) idx.push_back(i);
    return idx;
  };
  m.gamma_nodes = read_index_line("gamma:");
  m.gamma0_nodes = read_index_line("gamma0:");

  for (int i : m.gamma_nodes)
    if (i < 0 || i >= static_cast<int>(m.nodes.size()))
      parse_fail(path, lineno, "gamma index out of range");
  for (int i : m.gamma0_nodes)
    if (i < 0 || i >= static_cast<int>(m.nodes.size()))
      parse_fail(path, lineno, "gamma0 index out of range");

  // Re-detect the boundary memberships by radius and cross-check the listing.
  std::vector<int> on_gamma0, on_gamma;
  for (size_t i = 0; i < m.nodes.size(); ++i) {
    Vec2 p = m.nodes[i];
    double r = norm(p);
    if (std::abs(r - r0) <= 1e-8) {
      on_gamma0.push_back(static_cast<int>(i));
    } else {
      double want = curve.radius(angle_of(p));
      if (std::abs(r - want) <= 1e-6 * want)
        on_gamma.push_back(static_cast<int>(i));
    }
  }
  auto as_set = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (as_set(on_gamma0) != as_set(m.gamma0_nodes))
    fail("gamma0 listing disagrees with radial detection at r0");
  if (as_set(on_gamma) != as_set(m.gamma_nodes))
    fail("gamma listing disagrees with curve-distance detection");
  m.gamma0_nodes = sorted_by_angle(m, std::move(on_gamma0));
  m.gamma_nodes = sorted_by_angle(m, std::move(on_gamma));

  if (expected_n > 0 && static_cast<int>(m.gamma0_nodes.size()) != expected_n)
    throw std::runtime_error(
        "count error: mesh has " + std::to_string(m.gamma0_nodes.size()) +
        " gamma0 nodes but the DtN map expects " + std::to_string(expected_n));

  validate_mesh(m, curve, r0);
  return m;
}

}  // namespace helmdtn::mesh
