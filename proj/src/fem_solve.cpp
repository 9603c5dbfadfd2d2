#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/fem2d.hpp"

namespace steklov::fem {

namespace {

// Rows/columns `rows` x `cols` of a sparse matrix as a dense block.
Eigen::MatrixXd dense_block(const SparseMatrix& A, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> col_pos(A.cols(), -1);
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) col_pos[cols[j]] = j;
  std::vector<int> row_pos(A.rows(), -1);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) row_pos[rows[i]] = i;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                              static_cast<Eigen::Index>(cols.size()));
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      const int r = row_pos[it.row()];
      const int c = col_pos[it.col()];
      if (r >= 0 && c >= 0) out(r, c) = it.value();
    }
  }
  return out;
}

SparseMatrix sparse_block(const SparseMatrix& A, const std::vector<int>& idx) {
  std::vector<int> pos(A.rows(), -1);
  for (int i = 0; i < static_cast<int>(idx.size()); ++i) pos[idx[i]] = i;
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      const int r = pos[it.row()];
      const int c = pos[it.col()];
      if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
    }
  }
  SparseMatrix out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

void check_k(int k, std::size_t available) {
  if (k < 1 || static_cast<std::size_t>(k) > available) {
    std::ostringstream os;
    os << "requested " << k << " eigenvalues but only " << available << " Steklov degrees of freedom exist";
    throw DomainError(os.str());
  }
}

}  // namespace

std::vector<double> boundary_eigenvalues(const SparseMatrix& stiffness, const SparseMatrix& mass, int k) {
  const int n = static_cast<int>(stiffness.rows());
  const Eigen::VectorXd diag = mass.diagonal();
  std::vector<int> bnd;
  std::vector<int> inner;
  for (int i = 0; i < n; ++i) (diag(i) > 0.0 ? bnd : inner).push_back(i);
  check_k(k, bnd.size());

  Eigen::MatrixXd S = dense_block(stiffness, bnd, bnd);
  if (!inner.empty()) {
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(sparse_block(stiffness, inner));
    if (ldlt.info() != Eigen::Success) throw NumericError("interior stiffness factorization failed");
    const Eigen::MatrixXd KIB = dense_block(stiffness, inner, bnd);
    const Eigen::MatrixXd X = ldlt.solve(KIB);
    if (ldlt.info() != Eigen::Success || !X.allFinite()) throw NumericError("interior stiffness solve failed");
    if ((ldlt.vectorD().array() <= 0.0).any()) throw NumericError("interior stiffness block is not positive definite");
    S.noalias() -= KIB.transpose() * X;
  }

  Eigen::VectorXd scale(static_cast<Eigen::Index>(bnd.size()));
  for (int i = 0; i < static_cast<int>(bnd.size()); ++i) scale(i) = 1.0 / std::sqrt(diag(bnd[i]));
  Eigen::MatrixXd C = scale.asDiagonal() * S * scale.asDiagonal();
  C = 0.5 * (C + C.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericError("dense boundary eigensolve failed");
  std::vector<double> out(eig.eigenvalues().data(), eig.eigenvalues().data() + k);
  return out;
}

std::vector<double> boundary_eigenvalues_full(const SparseMatrix& stiffness, const SparseMatrix& mass, int k) {
  const Eigen::VectorXd diag = mass.diagonal();
  check_k(k, static_cast<std::size_t>((diag.array() > 0.0).count()));
  const Eigen::MatrixXd B = Eigen::MatrixXd(mass);
  const Eigen::MatrixXd KB = Eigen::MatrixXd(stiffness) + B;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(B, KB, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (eig.info() != Eigen::Success) throw NumericError("full generalized eigensolve failed");
  const Eigen::VectorXd nu = eig.eigenvalues();  // ascending
  std::vector<double> out;
  for (int i = 0; i < k; ++i) out.push_back(1.0 / nu(nu.size() - 1 - i) - 1.0);
  return out;
}

std::vector<double> steklov_solve(const DiscreteOperators& ops, int k) {
  return boundary_eigenvalues(ops.stiffness, ops.full_boundary_mass, k);
}

std::vector<double> mixed_solve(const DiscreteOperators& ops, int k) {
  return boundary_eigenvalues(ops.stiffness, ops.boundary_mass, k);
}

std::string eigenvalues_csv(const std::vector<double>& values) {
  std::ostringstream os;
  os << "index,sigma\n";
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12e\n", i + 1, values[i]);
    os << buf;
  }
  return os.str();
}

std::string QuasiIsometryReport::to_json() const {
  nlohmann::json j;
  j["A"] = A;
  j["exponent"] = exponent;
  j["alternative_exponent"] = alternative_exponent;
  j["ratios"] = ratios;
  j["pass"] = pass;
  j["pass_alternative"] = pass_alternative;
  return j.dump(2);
}

QuasiIsometryReport quasi_isometry_experiment(const MetricField& metric1, const MetricField& metric2,
                                              const TriMesh& mesh, int k) {
  if (k < 2) throw DomainError("quasi-isometry experiment needs k >= 2");
  QuasiIsometryReport report;

  // Sample points: triangle barycenters and boundary edge midpoints, the
  // points where the assembly evaluates the metrics.
  std::vector<Eigen::Vector2d> points;
  for (const auto& t : mesh.triangles)
    points.push_back((mesh.vertices[t[0]] + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0);
  for (const auto& e : mesh.boundary_edges) points.push_back(0.5 * (mesh.vertices[e.a] + mesh.vertices[e.b]));
  for (const auto& p : points) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> eig(metric2(p), metric1(p), Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    report.A = std::max({report.A, ev(1), 1.0 / ev(0)});
  }
  // Length distortion: A^-2 g1 <= g2 <= A^2 g1.
  report.A = std::sqrt(report.A);

  const auto s1 = steklov_solve(assemble(mesh, metric1), k);
  const auto s2 = steklov_solve(assemble(mesh, metric2), k);
  const int dim = 2;
  report.exponent = 2 * dim + 1;
  report.alternative_exponent = 2 * (dim - 1) + 1;
  const double slack = 1e-12;
  report.pass = true;
  report.pass_alternative = true;
  for (int j = 1; j < k; ++j) {
    const double r = s2[j] / s1[j];
    report.ratios.push_back(r);
    const auto within = [&](int e) {
      const double b = std::pow(report.A, e);
      return r >= (1.0 - slack) / b && r <= b * (1.0 + slack);
    };
    report.pass = report.pass && within(report.exponent);
    report.pass_alternative = report.pass_alternative && within(report.alternative_exponent);
  }
  return report;
}

std::function<double(const Eigen::Vector2d&)> random_conformal_factor(std::uint64_t seed, double max_ratio) {
  if (!(max_ratio >= 1.0)) throw DomainError("max_ratio must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  struct Term {
    double a, kx, ky, phi;
  };
  std::vector<Term> terms;
  double total = 0.0;
  for (int kx = 0; kx <= 2; ++kx) {
    for (int ky = 0; ky <= 2; ++ky) {
      Term t{coef(rng), static_cast<double>(kx), static_cast<double>(ky), phase(rng)};
      total += std::abs(t.a);
      terms.push_back(t);
    }
  }
  const double log_max = std::log2(max_ratio);
  return [terms, total, log_max](const Eigen::Vector2d& p) {
    double s = 0.0;
    for (const auto& t : terms) s += t.a * std::cos(t.kx * p.x() + t.ky * p.y() + t.phi);
    return std::exp2(log_max * s / total);
  };
}

}  // namespace steklov::fem
