#include "helmdtn/fem.hpp"

#include <Eigen/SparseLU>

#include <cstdio>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace helmdtn::fem {
namespace {

double tri_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace

Eigen::Matrix3d p1_stiffness(Vec2 a, Vec2 b, Vec2 c) {
  double area = tri_area(a, b, c);
  double bb[3] = {b.y - c.y, c.y - a.y, a.y - b.y};
  double cc[3] = {c.x - b.x, a.x - c.x, b.x - a.x};
  Eigen::Matrix3d k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k(i, j) = (bb[i] * bb[j] + cc[i] * cc[j]) / (4.0 * area);
  return k;
}

Eigen::Matrix3d p1_mass(Vec2 a, Vec2 b, Vec2 c) {
  double area = tri_area(a, b, c);
  Eigen::Matrix3d m;
  m.setConstant(area / 12.0);
  m.diagonal().setConstant(area / 6.0);
  return m;
}

namespace {

int chunk_count(bool parallel, long work) {
  int chunks = 1;
#ifdef _OPENMP
  if (parallel) chunks = std::max(1, omp_get_max_threads());
#endif
  (void)parallel;
  return static_cast<int>(std::min<long>(chunks, std::max<long>(1, work)));
}

}  // namespace

void assemble_volume(const TriMesh& m, SpMatR& stiffness, SpMatR& mass,
                     bool parallel) {
  const int nn = static_cast<int>(m.nodes.size());
  const long nt = static_cast<long>(m.triangles.size());
  using Trip = Eigen::Triplet<double>;
  const int chunks = chunk_count(parallel, nt);
  std::vector<std::vector<Trip>> kt(chunks), mt(chunks);

#pragma omp parallel for schedule(static) if (parallel)
  for (int c = 0; c < chunks; ++c) {
    long lo = nt * c / chunks, hi = nt * (c + 1) / chunks;
    kt[c].reserve(9 * (hi - lo));
    mt[c].reserve(9 * (hi - lo));
    for (long t = lo; t < hi; ++t) {
      const auto& tri = m.triangles[t];
      Vec2 a = m.nodes[tri[0]], b = m.nodes[tri[1]], cc = m.nodes[tri[2]];
      Eigen::Matrix3d ke = p1_stiffness(a, b, cc);
      Eigen::Matrix3d me = p1_mass(a, b, cc);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          kt[c].emplace_back(tri[i], tri[j], ke(i, j));
          mt[c].emplace_back(tri[i], tri[j], me(i, j));
        }
    }
  }

  std::vector<Trip> kall, mall;
  kall.reserve(9 * nt);
  mall.reserve(9 * nt);
  for (int c = 0; c < chunks; ++c) {
    kall.insert(kall.end(), kt[c].begin(), kt[c].end());
    mall.insert(mall.end(), mt[c].begin(), mt[c].end());
  }
  stiffness.resize(nn, nn);
  mass.resize(nn, nn);
  stiffness.setFromTriplets(kall.begin(), kall.end());
  mass.setFromTriplets(mall.begin(), mall.end());
}

namespace {

Eigen::VectorXcd assemble_load(const TriMesh& m, const PointFn& f,
                               LoadRule rule, bool parallel) {
  const int nn = static_cast<int>(m.nodes.size());
  Eigen::VectorXcd load = Eigen::VectorXcd::Zero(nn);
  if (!f) return load;

  const long nt = static_cast<long>(m.triangles.size());
  const int chunks = chunk_count(parallel, nt);
  std::vector<Eigen::VectorXcd> part(chunks,
                                     Eigen::VectorXcd::Zero(nn));

#pragma omp parallel for schedule(static) if (parallel)
  for (int c = 0; c < chunks; ++c) {
    long lo = nt * c / chunks, hi = nt * (c + 1) / chunks;
    for (long t = lo; t < hi; ++t) {
      const auto& tri = m.triangles[t];
      Vec2 a = m.nodes[tri[0]], b = m.nodes[tri[1]], cc = m.nodes[tri[2]];
      if (rule == LoadRule::edge_midpoint) {
        double third = tri_area(a, b, cc) / 3.0;
        cplx fab = f(0.5 * (a + b));
        cplx fbc = f(0.5 * (b + cc));
        cplx fca = f(0.5 * (cc + a));
        part[c][tri[0]] += third * 0.5 * (fab + fca);
        part[c][tri[1]] += third * 0.5 * (fab + fbc);
        part[c][tri[2]] += third * 0.5 * (fbc + fca);
      } else {
        Eigen::Matrix3d me = p1_mass(a, b, cc);
        Eigen::Vector3cd fv{f(a), f(b), f(cc)};
        Eigen::Vector3cd le = me.cast<cplx>() * fv;
        for (int i = 0; i < 3; ++i) part[c][tri[i]] += le[i];
      }
    }
  }
  for (int c = 0; c < chunks; ++c) load += part[c];
  return load;
}

FemSystem assemble_core(const TriMesh& m, double kappa, const PointFn& f,
                        const PointFn& g, const dtn::DtnMap* map,
                        Coupling coupling, LoadRule rule, bool parallel) {
  FemSystem sys;
  sys.coupling = coupling;
  sys.nodes = m.nodes;
  sys.gamma0_nodes = m.gamma0_nodes;

  SpMatR stiffness, mass;
  assemble_volume(m, stiffness, mass, parallel);
  sys.a = stiffness.cast<cplx>() - (kappa * kappa) * mass.cast<cplx>();
  sys.load = assemble_load(m, f, rule, parallel);

  for (int i : m.gamma_nodes)
    sys.dirichlet.emplace_back(i, g ? g(m.nodes[i]) : cplx{0.0, 0.0});

  if (map == nullptr) {
    for (int i : m.gamma0_nodes)
      sys.dirichlet.emplace_back(i, g ? g(m.nodes[i]) : cplx{0.0, 0.0});
    return sys;
  }

  const int n = static_cast<int>(map->rhat.size());
  if (static_cast<int>(m.gamma0_nodes.size()) != n)
    throw std::invalid_argument(
        "mesh/DtN mismatch: " + std::to_string(m.gamma0_nodes.size()) +
        " gamma0 nodes vs N = " + std::to_string(n));
  for (int i : m.gamma0_nodes)
    if (std::abs(norm(m.nodes[i]) - map->geom.r0) > 1e-9 * map->geom.r0)
      throw std::invalid_argument(
          "mesh/DtN mismatch: gamma0 radius differs from the map's r0");

  double ell = 2.0 * map->geom.r0 * std::sin(pi / n);
  sys.m_gamma0 = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    sys.m_gamma0(k, k) = 2.0 * ell / 3.0;
    sys.m_gamma0(k, (k + 1) % n) = ell / 6.0;
    sys.m_gamma0(k, (k + n - 1) % n) = ell / 6.0;
  }

  Eigen::MatrixXcd lambda = dtn::materialize_dtn(*map);
  if (coupling == Coupling::galerkin) {
    sys.dtn_block.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        sys.dtn_block(i, j) = (2.0 * ell / 3.0) * lambda(i, j) +
                              (ell / 6.0) * (lambda((i + 1) % n, j) +
                                             lambda((i + n - 1) % n, j));
  } else {
    sys.dtn_block = std::move(lambda);
  }
  return sys;
}

}  // namespace

FemSystem assemble(const TriMesh& m, double kappa, const PointFn& f,
                   const PointFn& g, const dtn::DtnMap& map, Coupling coupling,
                   LoadRule load_rule, bool parallel) {
  return assemble_core(m, kappa, f, g, &map, coupling, load_rule, parallel);
}

FemSystem assemble_dirichlet(const TriMesh& m, double kappa, const PointFn& f,
                             const PointFn& g, LoadRule load_rule,
                             bool parallel) {
  return assemble_core(m, kappa, f, g, nullptr, Coupling::galerkin, load_rule,
                       parallel);
}

FemSolution solve(const FemSystem& system) {
  const int nn = static_cast<int>(system.nodes.size());
  std::vector<char> is_dirichlet(nn, 0);
  std::vector<cplx> dvalue(nn, cplx{0.0, 0.0});
  for (const auto& [i, v] : system.dirichlet) {
    is_dirichlet[i] = 1;
    dvalue[i] = v;
  }
  std::vector<int> reduced(nn, -1);
  int nfree = 0;
  for (int i = 0; i < nn; ++i)
    if (!is_dirichlet[i]) reduced[i] = nfree++;

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nfree);
  for (int i = 0; i < nn; ++i)
    if (reduced[i] >= 0) rhs[reduced[i]] = system.load[i];

  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(system.a.nonZeros() + system.dtn_block.size());
  for (int col = 0; col < system.a.outerSize(); ++col) {
    for (SpMatC::InnerIterator it(system.a, col); it; ++it) {
      int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
      if (is_dirichlet[j]) {
        if (!is_dirichlet[i]) rhs[reduced[i]] -= it.value() * dvalue[j];
      } else if (!is_dirichlet[i]) {
        trips.emplace_back(reduced[i], reduced[j], it.value());
      }
    }
  }
  const int nb = static_cast<int>(system.dtn_block.rows());
  for (int bi = 0; bi < nb; ++bi) {
    int i = reduced[system.gamma0_nodes[bi]];
    for (int bj = 0; bj < nb; ++bj) {
      int j = reduced[system.gamma0_nodes[bj]];
      trips.emplace_back(i, j, -system.dtn_block(bi, bj));
    }
  }

  SpMatC a_red(nfree, nfree);
  a_red.setFromTriplets(trips.begin(), trips.end());
  a_red.makeCompressed();

  Eigen::SparseLU<SpMatC> lu;
  lu.compute(a_red);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("sparse factorization of the reduced system failed");
  Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("sparse solve of the reduced system failed");

  FemSolution sol;
  sol.nodes = system.nodes;
  double rhs_scale = rhs.lpNorm<Eigen::Infinity>();
  double res = (a_red * x - rhs).lpNorm<Eigen::Infinity>();
  sol.residual = rhs_scale > 0.0 ? res / rhs_scale : res;
  sol.residual_ok = sol.residual <= 1e-8;
  if (!sol.residual_ok)
    std::fprintf(stderr,
                 "warning: reduced-system residual %.3e exceeds 1e-8\n",
                 sol.residual);

  sol.u.resize(nn);
  for (int i = 0; i < nn; ++i)
    sol.u[i] = is_dirichlet[i] ? dvalue[i] : x[reduced[i]];
  return sol;
}

double nodal_max_error(const FemSolution& sol, const PointFn& exact) {
  double worst = 0.0;
  for (int i = 0; i < sol.u.size(); ++i)
    worst = std::max(worst, std::abs(sol.u[i] - exact(sol.nodes[i])));
  return worst;
}

double nodal_max_error_real(const FemSolution& sol, const PointFn& exact) {
  double worst = 0.0;
  for (int i = 0; i < sol.u.size(); ++i)
    worst = std::max(worst,
                     std::abs(sol.u[i].real() - exact(sol.nodes[i]).real()));
  return worst;
}

void export_solution(const FemSolution& sol, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "node_index,x,y,re_u,im_u\n";
  char buf[160];
  for (int i = 0; i < sol.u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", i,
                  sol.nodes[i].x, sol.nodes[i].y, sol.u[i].real(),
                  sol.u[i].imag());
    out << buf;
  }
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace helmdtn::fem
