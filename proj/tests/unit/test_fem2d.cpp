#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"
#include "steklov/fem2d.hpp"

using namespace steklov;
using namespace steklov::fem;

namespace {

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
  return (Eigen::MatrixXd(a) - Eigen::MatrixXd(b)).cwiseAbs().maxCoeff();
}

double bump_exponent(double y, double L) {
  // Zero near both ends of [0, L], smooth in between.
  const double s = y / L;
  return s <= 0.1 || s >= 0.9 ? 0.0 : 3.0 * std::pow(std::sin(std::numbers::pi * (s - 0.1) / 0.8), 4);
}

}  // namespace

TEST_SUITE("fem2d") {
  TEST_CASE("reference element stiffness") {
    const std::array<Eigen::Vector2d, 3> p{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    Eigen::Matrix3d expect;
    expect << 1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5;
    CHECK((element_stiffness(p, Eigen::Matrix2d::Identity()) - expect).norm() <= 1e-15);
    // Constant scaling of the metric leaves the 2D element unchanged.
    CHECK((element_stiffness(p, 7.0 * Eigen::Matrix2d::Identity()) - expect).norm() <= 1e-14);
  }

  TEST_CASE("mesh counts and invariants") {
    for (int r = 1; r <= 3; ++r) {
      const auto disk = build_disk_mesh(r);
      const int R = disk_ring_count(r);
      CHECK(R == 4 * (1 << (r - 1)));
      CHECK(disk.vertices.size() == std::size_t(1 + 3 * R * (R + 1)));
      CHECK(disk.triangles.size() == std::size_t(6 * R * R));
      CHECK(disk.boundary_edges.size() == std::size_t(6 * R));
      CHECK_NOTHROW(validate_mesh(disk));
    }
    const auto cyl = build_cylinder_mesh(1.0, 1.0, 4, 4);
    CHECK(cyl.triangles.size() == 32);
    CHECK(cyl.dof_count() == 4 * 5);
    CHECK(cyl.component_count() == 2);
    CHECK_NOTHROW(validate_mesh(cyl));
    CHECK_THROWS_AS(build_disk_mesh(0), ConfigError);
    CHECK_THROWS_AS(build_cylinder_mesh(1.0, 0.0, 4, 4), ConfigError);
  }

  TEST_CASE("validation catches a flipped triangle and a broken seam") {
    auto mesh = build_cylinder_mesh(1.0, 1.0, 6, 4);
    std::swap(mesh.triangles[3][1], mesh.triangles[3][2]);
    CHECK_THROWS_AS(validate_mesh(mesh), ConfigError);
    auto seam = build_cylinder_mesh(1.0, 1.0, 6, 4);
    seam.periodic_pairs.push_back(seam.periodic_pairs.front());
    CHECK_THROWS_AS(validate_mesh(seam), ConfigError);
  }

  TEST_CASE("csv dumps") {
    const auto mesh = build_cylinder_mesh(1.0, 1.0, 4, 4);
    CHECK(vertices_csv(mesh).rfind("index,x,y\n", 0) == 0);
    CHECK(triangles_csv(mesh).rfind("index,v0,v1,v2\n", 0) == 0);
    CHECK(eigenvalues_csv({0.0, 1.5}).rfind("index,sigma\n", 0) == 0);
  }

  TEST_CASE("assembly properties") {
    const auto disk = build_disk_mesh(2);
    const auto ops = assemble(disk, MetricField::euclidean());
    const Eigen::MatrixXd K(ops.stiffness);
    CHECK((K - K.transpose()).norm() <= 1e-12 * K.norm());
    CHECK(K.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12 * K.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues()(0) >= -1e-9 * K.norm());
    CHECK(eig.eigenvalues()(1) > 1e-6);  // kernel is the constants
    // Perimeter of the inscribed polygon.
    const int R = disk_ring_count(2);
    const double perimeter = 6 * R * 2 * std::sin(std::numbers::pi / (6 * R));
    CHECK(Eigen::MatrixXd(ops.boundary_mass).sum() == doctest::Approx(perimeter).epsilon(1e-12));

    // Constant scaling c: stiffness unchanged, boundary mass scaled by sqrt(c).
    const auto scaled = assemble(disk, MetricField::conformal([](const Eigen::Vector2d&) { return 4.0; }));
    CHECK(max_abs_diff(scaled.stiffness, ops.stiffness) <= 1e-12);
    CHECK(max_abs_diff(scaled.boundary_mass, 2.0 * ops.boundary_mass) <= 1e-15);
  }

  TEST_CASE("metric must be SPD") {
    const auto disk = build_disk_mesh(1);
    const MetricField bad{[](const Eigen::Vector2d& p) {
      Eigen::Matrix2d g = Eigen::Matrix2d::Identity();
      if (p.x() > 0.5) g(1, 1) = -1.0;
      return g;
    }};
    CHECK_THROWS_AS(assemble(disk, bad), NumericError);
  }

  TEST_CASE("disk spectrum") {
    const auto sigma = steklov_solve(assemble(build_disk_mesh(3), MetricField::euclidean()), 7);
    const double expect[] = {1, 1, 2, 2, 3, 3};
    CHECK(std::abs(sigma[0]) <= 1e-8 * sigma[1]);
    for (int j = 0; j < 6; ++j) CHECK(sigma[j + 1] == doctest::Approx(expect[j]).epsilon(0.02));
    CHECK_THROWS_AS(steklov_solve(assemble(build_disk_mesh(1), MetricField::euclidean()), 1000), DomainError);
  }

  TEST_CASE("schur complement matches the full pencil") {
    const auto disk_ops = assemble(build_disk_mesh(1), MetricField::conformal(random_conformal_factor(3)));
    auto cyl = build_cylinder_mesh(1.0, 1.0, 8, 4);
    set_boundary_role(cyl, 1, BoundaryRole::Neumann);
    const auto cyl_ops = assemble(cyl, MetricField::euclidean());
    for (const auto* ops : {&disk_ops, &cyl_ops}) {
      const auto a = boundary_eigenvalues(ops->stiffness, ops->boundary_mass, 6);
      const auto b = boundary_eigenvalues_full(ops->stiffness, ops->boundary_mass, 6);
      for (int j = 0; j < 6; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-9 * std::max(1.0, std::abs(a[j])));
    }
  }

  TEST_CASE("flat cylinder against closed forms") {
    const double L = 1.0;
    auto mesh = build_cylinder_mesh(1.0, L, 96, 24);
    const auto both = steklov_solve(assemble(mesh, MetricField::euclidean()), 6);
    // Zero mode {0, 2 / L}, mode k {k tanh(k L / 2), k coth(k L / 2)} twice.
    const double pair[] = {0.0, std::tanh(0.5), std::tanh(0.5), 2 * std::tanh(1.0), 2 * std::tanh(1.0), 2.0};
    for (int j = 1; j < 6; ++j) CHECK(both[j] == doctest::Approx(pair[j]).epsilon(5e-3));

    set_boundary_role(mesh, 1, BoundaryRole::Neumann);
    const auto ops = assemble(mesh, MetricField::euclidean());
    const auto mixed = mixed_solve(ops, 5);
    const double expect[] = {0.0, std::tanh(1.0), std::tanh(1.0), 2 * std::tanh(2.0), 2 * std::tanh(2.0)};
    for (int j = 1; j < 5; ++j) CHECK(mixed[j] == doctest::Approx(expect[j]).epsilon(5e-3));
    // With every edge Steklov the two solvers coincide.
    auto all = build_cylinder_mesh(1.0, L, 24, 8);
    const auto ops_all = assemble(all, MetricField::euclidean());
    const auto s = steklov_solve(ops_all, 8);
    const auto m = mixed_solve(ops_all, 8);
    for (int j = 0; j < 8; ++j) CHECK(s[j] == m[j]);
  }

  TEST_CASE("2D conformal invariance is exact") {
    const double L = 1.0;
    for (bool mixed : {false, true}) {
      auto mesh = build_cylinder_mesh(1.0, L, 32, 12);
      if (mixed) set_boundary_role(mesh, 1, BoundaryRole::Neumann);
      const auto flat = assemble(mesh, MetricField::euclidean());
      const auto bent = assemble(mesh, MetricField::conformal([L](const Eigen::Vector2d& p) {
        return std::exp(2.0 * bump_exponent(p.y(), L));
      }));
      const auto a = mixed ? mixed_solve(flat, 20) : steklov_solve(flat, 20);
      const auto b = mixed ? mixed_solve(bent, 20) : steklov_solve(bent, 20);
      for (int j = 0; j < 20; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-12 * std::max(1.0, a[j]));
    }
  }

  TEST_CASE("quasi-isometry examples") {
    const auto mesh = build_disk_mesh(1);
    const auto g1 = MetricField::conformal(random_conformal_factor(11));
    const auto same = quasi_isometry_experiment(g1, g1, mesh, 8);
    CHECK(same.A == doctest::Approx(1.0).epsilon(1e-14));
    for (double r : same.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.pass);

    const auto g4 = MetricField::scaled(g1, [](const Eigen::Vector2d&) { return 4.0; });
    const auto quad = quasi_isometry_experiment(g1, g4, mesh, 8);
    CHECK(quad.A == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quad.ratios.size() == 7);
    for (double r : quad.ratios) CHECK(r == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(quad.pass);
    CHECK(quad.exponent == 5);
    CHECK(quad.to_json().find("\"ratios\"") != std::string::npos);

    const auto c = random_conformal_factor(5, 2.0);
    for (int i = 0; i < 200; ++i) {
      const Eigen::Vector2d p(std::cos(i * 0.7) * (i % 10) / 10.0, std::sin(i * 1.3) * (i % 7) / 7.0);
      CHECK(c(p) >= 0.5);
      CHECK(c(p) <= 2.0);
    }
  }
}
