#pragma once

#include <array>
#include <string>
#include <vector>

#include "helmdtn/geometry.hpp"

namespace helmdtn::mesh {

using geometry::StarBoundary;

/// Conforming triangulation of the annulus between an inner star-shaped
/// boundary (gamma) and the outer circle of radius r0 (gamma0). Triangles are
/// counterclockwise. gamma0_nodes holds exactly the DtN collocation points in
/// angular order starting at theta = 0.
struct TriMesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> gamma_nodes;
  std::vector<int> gamma0_nodes;
};

enum class Grading { uniform, geometric };

/// Mapped structured mesh: nodes ((1-s)R(theta_k) + s*r0)e^{i theta_k} over
/// n angular columns and `layers` radial cells, quads split along the shorter
/// diagonal (ties toward the (k,l)->(k+1,l+1) diagonal). Geometric grading
/// makes layers thinnest at the inner curve with the given cell-size ratio.
TriMesh generate_mapped_mesh(const StarBoundary& curve, double r0, int n,
                             int layers, Grading grading = Grading::uniform,
                             double ratio = 1.2);

/// Validation passes, each throwing std::runtime_error naming the violated
/// invariant. validate_mesh runs all of them.
void check_positive_areas(const TriMesh& m);
void check_conforming(const TriMesh& m);
void check_euler(const TriMesh& m);
void check_collocation_alignment(const TriMesh& m, double r0);
void check_boundary_on_curves(const TriMesh& m, const StarBoundary& curve,
                              double r0);
void check_interior_in_annulus(const TriMesh& m, const StarBoundary& curve,
                               double r0);
void validate_mesh(const TriMesh& m, const StarBoundary& curve, double r0);

struct MeshQuality {
  double h_max = 0.0;
  double min_angle_deg = 0.0;
  int node_count = 0;
  int element_count = 0;
};

MeshQuality mesh_quality(const TriMesh& m);

/// Smallest layer count whose structured cells keep every edge (sides and the
/// split diagonal) at or under h_target; throws when the angular chord alone
/// already exceeds h_target.
int pick_layers(const StarBoundary& curve, double r0, int n, double h_target);

/// Text format: `nodes <V> triangles <T>`, V lines `x y`, T lines `i j k`
/// (zero-based), one line `gamma: <indices...>`, one line
/// `gamma0: <indices...>`. Whitespace-delimited, UTF-8, LF.
void export_mesh(const TriMesh& m, const std::string& path);

/// Parses, re-detects the boundary sets by radius (|.|=r0 within 1e-8
/// absolute for gamma0; distance to the curve within 1e-6 relative for
/// gamma), re-sorts them by angle, and validates. expected_n > 0 additionally
/// enforces the gamma0 count.
TriMesh import_mesh(const std::string& path, const StarBoundary& curve,
                    double r0, int expected_n = 0);

}  // namespace helmdtn::mesh
