#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/fem2d.hpp"

namespace steklov::fem {

namespace {

Eigen::Matrix2d checked_metric(const MetricField& metric, const Eigen::Vector2d& p) {
  const Eigen::Matrix2d g = metric(p);
  const Eigen::Matrix2d sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(sym, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues()(0);
  if (!g.allFinite() || (g - sym).norm() > 1e-12 * sym.norm() || !(lo >= metric.spd_margin)) {
    std::ostringstream os;
    os << "metric is not SPD (smallest eigenvalue " << lo << ", margin " << metric.spd_margin << ") at ("
       << p.x() << ", " << p.y() << ")";
    throw NumericError(os.str());
  }
  return sym;
}

std::vector<int> sorted_support(const std::vector<double>& diag) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(diag.size()); ++i)
    if (diag[i] > 0.0) out.push_back(i);
  return out;
}

}  // namespace

MetricField MetricField::euclidean() {
  return {[](const Eigen::Vector2d&) { return Eigen::Matrix2d::Identity().eval(); }, 1e-12};
}

MetricField MetricField::conformal(std::function<double(const Eigen::Vector2d&)> factor) {
  return {[factor](const Eigen::Vector2d& p) { return (factor(p) * Eigen::Matrix2d::Identity()).eval(); }, 1e-12};
}

MetricField MetricField::scaled(const MetricField& base, std::function<double(const Eigen::Vector2d&)> factor) {
  return {[base, factor](const Eigen::Vector2d& p) { return (factor(p) * base(p)).eval(); }, base.spd_margin};
}

Eigen::Matrix3d element_stiffness(const std::array<Eigen::Vector2d, 3>& p, const Eigen::Matrix2d& g) {
  Eigen::Matrix2d J;
  J.col(0) = p[1] - p[0];
  J.col(1) = p[2] - p[0];
  const double det = J.determinant();
  const double area = 0.5 * std::abs(det);
  // Gradients of the barycentric coordinates, one per column.
  Eigen::Matrix<double, 2, 3> grad;
  const Eigen::Matrix2d Jinv_t = J.inverse().transpose();
  grad.col(1) = Jinv_t.col(0);
  grad.col(2) = Jinv_t.col(1);
  grad.col(0) = -grad.col(1) - grad.col(2);
  // G^{-1} sqrt(det G) = adj(G) / sqrt(det G).
  Eigen::Matrix2d adj;
  adj << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  const Eigen::Matrix2d A = adj / std::sqrt(g.determinant());
  Eigen::Matrix3d K;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      K(i, j) = area * grad.col(i).dot(A * grad.col(j));
      K(j, i) = K(i, j);
    }
  }
  return K;
}

DiscreteOperators assemble(const TriMesh& mesh, const MetricField& metric) {
  if (!metric.evaluator) throw ConfigError("metric field has no evaluator");
  const auto dof = mesh.dof_map();
  const int n = mesh.dof_count();

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.triangles.size() * 9);
  for (const auto& tri : mesh.triangles) {
    const std::array<Eigen::Vector2d, 3> p{mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
    const Eigen::Vector2d center = (p[0] + p[1] + p[2]) / 3.0;
    const Eigen::Matrix3d Ke = element_stiffness(p, checked_metric(metric, center));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trip.emplace_back(dof[tri[i]], dof[tri[j]], Ke(i, j));
  }

  DiscreteOperators ops;
  ops.stiffness.resize(n, n);
  ops.stiffness.setFromTriplets(trip.begin(), trip.end());

  std::vector<double> steklov(n, 0.0);
  std::vector<double> full(n, 0.0);
  for (const auto& e : mesh.boundary_edges) {
    const Eigen::Vector2d a = mesh.vertices[e.a];
    const Eigen::Vector2d b = mesh.vertices[e.b];
    const Eigen::Vector2d d = b - a;
    const double len = std::sqrt(d.dot(checked_metric(metric, 0.5 * (a + b)) * d));
    for (int v : {e.a, e.b}) {
      full[dof[v]] += 0.5 * len;
      if (e.role == BoundaryRole::Steklov) steklov[dof[v]] += 0.5 * len;
    }
  }

  const auto diagonal = [n](const std::vector<double>& d) {
    SparseMatrix M(n, n);
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < n; ++i)
      if (d[i] > 0.0) t.emplace_back(i, i, d[i]);
    M.setFromTriplets(t.begin(), t.end());
    return M;
  };
  ops.boundary_mass = diagonal(steklov);
  ops.full_boundary_mass = diagonal(full);
  ops.steklov_dofs = sorted_support(steklov);
  ops.boundary_dofs = sorted_support(full);
  for (int i = 0; i < n; ++i)
    if (!(full[i] > 0.0)) ops.interior_dofs.push_back(i);
  return ops;
}

}  // namespace steklov::fem
