#pragma once

// P1 finite elements for Steklov and mixed Steklov-Neumann problems on 2D
// structured meshes carrying an arbitrary Riemannian metric.

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace steklov::fem {

enum class BoundaryRole { Steklov, Neumann };

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  int component = 0;
  BoundaryRole role = BoundaryRole::Steklov;
};

struct TriMesh {
  std::vector<Eigen::Vector2d> vertices;
  /// Counter-clockwise vertex triples.
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  /// Identified vertex pairs (periodic seams); each vertex appears at most once.
  std::vector<std::pair<int, int>> periodic_pairs;

  /// Vertex -> degree of freedom after periodic identification.
  std::vector<int> dof_map() const;
  int dof_count() const;
  int component_count() const;
};

/// Concentric rings: R = 4 * 2^(refinement-1) rings, ring i has 6i vertices on
/// radius i/R. Vertices 1 + 3R(R+1), triangles 6R^2, boundary component 0.
TriMesh build_disk_mesh(int refinement);
int disk_ring_count(int refinement);

/// S^1(radius) x [0, L] as a periodic rectangle [0, 2 pi radius] x [0, L] with
/// nx x nt cells, each split into two triangles. Boundary component 0 is
/// t = 0, component 1 is t = L; both Steklov until relabeled.
TriMesh build_cylinder_mesh(double radius, double length, int nx, int nt);

void set_boundary_role(TriMesh& mesh, int component, BoundaryRole role);

/// Throws ConfigError describing the first violated mesh invariant.
void validate_mesh(const TriMesh& mesh);

std::string vertices_csv(const TriMesh& mesh);
std::string triangles_csv(const TriMesh& mesh);

struct MetricField {
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> evaluator;
  double spd_margin = 1e-12;

  Eigen::Matrix2d operator()(const Eigen::Vector2d& p) const { return evaluator(p); }

  static MetricField euclidean();
  /// c(p) * identity.
  static MetricField conformal(std::function<double(const Eigen::Vector2d&)> factor);
  /// c(p) * base(p).
  static MetricField scaled(const MetricField& base, std::function<double(const Eigen::Vector2d&)> factor);
};

using SparseMatrix = Eigen::SparseMatrix<double>;

struct DiscreteOperators {
  SparseMatrix stiffness;
  /// Lumped boundary mass on Steklov-labeled edges.
  SparseMatrix boundary_mass;
  /// Lumped boundary mass on every boundary edge regardless of role.
  SparseMatrix full_boundary_mass;
  std::vector<int> steklov_dofs;
  std::vector<int> boundary_dofs;
  std::vector<int> interior_dofs;
};

/// Barycentric one-point quadrature for the stiffness, metric edge length at
/// the edge midpoint for the trapezoidal boundary mass.
DiscreteOperators assemble(const TriMesh& mesh, const MetricField& metric);

/// Element stiffness of one triangle under a constant metric.
Eigen::Matrix3d element_stiffness(const std::array<Eigen::Vector2d, 3>& p, const Eigen::Matrix2d& g);

/// k smallest eigenvalues with the whole boundary carrying the Steklov condition.
std::vector<double> steklov_solve(const DiscreteOperators& ops, int k);
/// k smallest eigenvalues with Steklov on the Steklov-labeled edges, Neumann elsewhere.
std::vector<double> mixed_solve(const DiscreteOperators& ops, int k);

/// Generalized eigenproblem S u = sigma B u after condensing onto the support
/// of the (diagonal) boundary mass B.
std::vector<double> boundary_eigenvalues(const SparseMatrix& stiffness, const SparseMatrix& mass, int k);

/// Same spectrum from the uncondensed pencil B u = nu (K + B) u, with
/// sigma = 1/nu - 1. Dense; intended for coarse meshes.
std::vector<double> boundary_eigenvalues_full(const SparseMatrix& stiffness, const SparseMatrix& mass, int k);

std::string eigenvalues_csv(const std::vector<double>& values);

struct QuasiIsometryReport {
  /// Smallest A >= 1 with A^-2 g1 <= g2 <= A^2 g1 at every sample point.
  double A = 1.0;
  int exponent = 5;
  int alternative_exponent = 3;
  /// sigma_j(metric2) / sigma_j(metric1) for the nonzero eigenvalues j = 2..k.
  std::vector<double> ratios;
  bool pass = false;
  bool pass_alternative = false;

  std::string to_json() const;
};

QuasiIsometryReport quasi_isometry_experiment(const MetricField& metric1, const MetricField& metric2,
                                              const TriMesh& mesh, int k);

/// Smooth random conformal factor with values in [1/max_ratio, max_ratio],
/// 2^(s(p)) with s a normalized random trigonometric sum.
std::function<double(const Eigen::Vector2d&)> random_conformal_factor(std::uint64_t seed, double max_ratio = 2.0);

}  // namespace steklov::fem
