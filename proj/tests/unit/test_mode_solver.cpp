#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/mode_solver.hpp"

using namespace steklov;

namespace {

ReducedModeProblem constant_problem(double L, double w, double q, EndCondition right) {
  ReducedModeProblem p;
  p.length = L;
  p.flux_weight = [w](double) { return w; };
  p.potential = [q](double) { return q; };
  p.right = right;
  return p;
}

CollarScenario flat_cylinder(double radius, double L, EndCondition right) {
  return {BoundaryModeFamily::circle(radius),
          ConformalCylinder{ConformalStep(0.5, 0.0, 1.0, 0.0), L, right, false, std::nullopt}};
}

Mode find_mode(const CollarScenario& sc, std::vector<int> label) {
  for (const auto& m : sc.family.enumerate_modes(100.0))
    if (m.label == label) return m;
  throw std::runtime_error("mode not found");
}

}  // namespace

TEST_SUITE("mode_solver") {
  TEST_CASE("dtn closed forms") {
    for (double L : {0.5, 1.0, 2.0})
      for (int k : {1, 3, 7, 20}) {
        const double sigma = dtn_value(constant_problem(L, 1.0, double(k) * k, NeumannEnd{}));
        CHECK(std::abs(sigma - k * std::tanh(k * L)) <= 1e-8 * k);
      }
    CHECK(std::abs(dtn_value(constant_problem(1.3, 2.0, 0.0, NeumannEnd{}))) <= 1e-12);
    CHECK(dtn_value(constant_problem(1.0, 1.0, 1.0, DirichletEnd{})) ==
          doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-9));
    // Flux weight and boundary mass scale the value.
    auto p = constant_problem(1.0, 3.0, 3.0, NeumannEnd{});
    p.left.boundary_mass = 2.0;
    CHECK(dtn_value(p) == doctest::Approx(1.5 * std::tanh(1.0)).epsilon(1e-9));
  }

  TEST_CASE("dtn handles stiff potentials") {
    const double q = 1e8;
    CHECK(dtn_value(constant_problem(1.0, 1.0, q, NeumannEnd{})) == doctest::Approx(1e4).epsilon(1e-9));
  }

  TEST_CASE("two-point closed forms") {
    for (double L : {0.5, 1.0, 2.0}) {
      const auto zero = mode_eigenvalues(constant_problem(L, 1.0, 0.0, SteklovEnd{1.0}));
      CHECK(std::abs(zero[0]) <= 1e-10);
      CHECK(zero[1] == doctest::Approx(2.0 / L).epsilon(1e-9));
      for (int k = 1; k <= 20; ++k) {
        const auto v = mode_eigenvalues(constant_problem(L, 1.0, double(k) * k, SteklovEnd{1.0}));
        CHECK(std::abs(v[0] - k * std::tanh(k * L / 2)) <= 1e-6);
        CHECK(std::abs(v[1] - k / std::tanh(k * L / 2)) <= 1e-6);
      }
    }
  }

  TEST_CASE("symmetric problems have even and odd eigenvectors") {
    auto p = constant_problem(1.0, 1.0, 0.0, SteklovEnd{1.0});
    p.flux_weight = [](double t) { return 1.0 + std::sin(std::numbers::pi * t); };
    p.potential = [](double t) { return 4.0 + t * (1.0 - t); };
    p.grid_size = 256;
    const auto e = mode_eigenpairs(p);
    const std::size_t n = e.nodes.size();
    REQUIRE(n == 257);
    double even = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      even = std::max(even, std::abs(e.vectors[0][i] - e.vectors[0][n - 1 - i]));
      odd = std::max(odd, std::abs(e.vectors[1][i] + e.vectors[1][n - 1 - i]));
    }
    CHECK(even <= 1e-9);
    CHECK(odd <= 1e-9);
    const double norm = e.vectors[0].front() * e.vectors[0].front() + e.vectors[0].back() * e.vectors[0].back();
    CHECK(norm == doctest::Approx(1.0));
  }

  TEST_CASE("raw two-point solve converges at second order") {
    // w = (1 + t)^2, q = 0 on [0, 1]: a = c1 + c2 / (1 + t) gives sigma = 0, 4.
    auto p = constant_problem(1.0, 1.0, 0.0, SteklovEnd{1.0});
    p.flux_weight = [](double t) { return (1 + t) * (1 + t); };
    double prev = 0.0;
    for (int n : {64, 128, 256, 512}) {
      p.grid_size = n;
      const double err = std::abs(mode_eigenpairs(p).values[1] - 4.0);
      if (prev > 0.0) {
        CHECK(prev / err >= 3.2);
        CHECK(prev / err <= 4.8);
      }
      prev = err;
    }
  }

  TEST_CASE("constant coefficient floor") {
    CHECK(constant_coefficient_floor(1.0, 4.0, 1.0, SteklovEnd{1.0}, NeumannEnd{}) ==
          doctest::Approx(2.0 * std::tanh(2.0)));
    CHECK(constant_coefficient_floor(1.0, 4.0, 1.0, SteklovEnd{1.0}, SteklovEnd{1.0}) ==
          doctest::Approx(2.0 * std::tanh(1.0)));
    // Monotone in the coefficients: any w >= w0, q >= q0 problem lies above.
    auto p = constant_problem(1.0, 1.0, 0.0, NeumannEnd{});
    p.flux_weight = [](double t) { return 1.0 + t; };
    p.potential = [](double t) { return 4.0 + 3 * t; };
    CHECK(dtn_value(p) >= constant_coefficient_floor(1.0, 4.0, 1.0, SteklovEnd{1.0}, NeumannEnd{}));
  }

  TEST_CASE("reduce") {
    auto sc = flat_cylinder(1.0, 1.0, NeumannEnd{});
    std::get<ConformalCylinder>(sc.kind).delta = ConformalBump(0.1, 0.1, 0.4, 0.6, 0.9);
    const auto r = reduce(sc, find_mode(sc, {2}));
    for (double t : {0.0, 0.3, 0.5, 0.99}) {
      CHECK(r.flux_weight(t) == 1.0);
      CHECK(r.potential(t) == 4.0);
    }
    const CollarScenario b{BoundaryModeFamily::berger_s3(), BleeckerCollar{BleeckerRamp(0.1), 3.0, NeumannEnd{}}};
    const auto zero = reduce(b, find_mode(b, {0, 0}));
    CHECK(zero.potential(0.5) == 0.0);
    const auto m11 = reduce(b, find_mode(b, {1, 1}));
    CHECK(m11.potential(0.5) == doctest::Approx(2.0 * 501.0 + 1.0 / (501.0 * 501.0)).epsilon(1e-14));
    CHECK(m11.flux_weight(0.5) == 1.0);
  }

  TEST_CASE("family and collar kinds must fit") {
    const CollarScenario bad{BoundaryModeFamily::circle(1.0), BleeckerCollar{BleeckerRamp(0.1), 3.0, NeumannEnd{}}};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    const CollarScenario bad2{BoundaryModeFamily::berger_s3(),
                              ConformalCylinder{ConformalStep(0.1, 0.1, 1.0), 1.0, NeumannEnd{}, false, std::nullopt}};
    CHECK_THROWS_AS(validate(bad2), ConfigError);
  }

  TEST_CASE("flat cylinder spectra") {
    const auto mixed = steklov_spectrum(flat_cylinder(1.0, 1.0, NeumannEnd{}), 6);
    const auto v = mixed.values();
    const double expect[] = {0.0, std::tanh(1.0), std::tanh(1.0), 2 * std::tanh(2.0), 2 * std::tanh(2.0),
                             3 * std::tanh(3.0)};
    REQUIRE(v.size() >= 6);
    for (int i = 0; i < 6; ++i) CHECK(v[i] == doctest::Approx(expect[i]).epsilon(1e-9));
    CHECK(mixed.entries[0].mode_label == BoundaryModeFamily::circle(1.0).enumerate_modes(0.5)[0].label_string());
    CHECK(mixed.entries[0].mode_id == 0);
    for (const auto& e : mixed.entries) CHECK(e.sigma <= mixed.truncation_bound);

    // Thin cross-section: the first nonzero value comes from the zero mode, 2 / L.
    const auto both = steklov_spectrum(flat_cylinder(0.1, 1.0, SteklovEnd{1.0}), 2);
    CHECK(std::abs(both.values()[0]) <= 1e-10);
    CHECK(both.values()[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(both.entries[1].mode_id == 0);
    CHECK(both.entries[1].branch == 1);

    const std::string csv = spectrum_csv(mixed);
    CHECK(csv.rfind("index,sigma,mode_label,multiplicity_slot,truncation_bound\n", 0) == 0);
  }

  TEST_CASE("two-dimensional conformal invariance") {
    auto flat = flat_cylinder(1.0, 2.0, SteklovEnd{1.0});
    auto bent = flat;
    std::get<ConformalCylinder>(bent.kind).delta = ConformalBump(0.05, 0.05, 0.5, 1.5, 1.95);
    const auto a = steklov_spectrum(flat, 30).values();
    const auto b = steklov_spectrum(bent, 30).values();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9 * std::max(1.0, a[i]));
  }

  TEST_CASE("truncation exhaustion is reported") {
    CollarScenario sc{BoundaryModeFamily::berger_s3(), BleeckerCollar{BleeckerRamp(0.05), 3.0, NeumannEnd{}}};
    sc.mode_cap = 4.0;
    CHECK_THROWS_AS(steklov_spectrum(sc, 6), ResourceError);
  }

  TEST_CASE("neumann gap") {
    const auto sc = flat_cylinder(1.0, 1.0, NeumannEnd{});
    CHECK(neumann_gap(sc, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(neumann_gap(sc, 0.0, 1.0, false) == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-5));
    const auto long_sc = flat_cylinder(1.0, 5.0, NeumannEnd{});
    CHECK(neumann_gap(long_sc, 0.0, 5.0) <= std::numbers::pi * std::numbers::pi / 25.0 * (1 + 1e-6));
    CHECK_THROWS_AS(neumann_gap(sc, 0.5, 0.5), DomainError);
  }

  TEST_CASE("collar volume") {
    const double s3 = 2 * std::numbers::pi * std::numbers::pi;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
      const CollarScenario b{BoundaryModeFamily::berger_s3(), BleeckerCollar{BleeckerRamp(eps), 3.0, NeumannEnd{}}};
      CHECK(collar_volume(b) == doctest::Approx(3.0 * s3).epsilon(1e-12));
    }
    CHECK(collar_volume(flat_cylinder(2.0, 1.5, NeumannEnd{})) == doctest::Approx(2 * std::numbers::pi * 2.0 * 1.5));
    // delta rising to 1 within 1e-4 of the boundary over a 2-torus: volume
    // approaches |Sigma| L e^3 (delta must vanish on the Steklov boundary).
    const CollarScenario c{BoundaryModeFamily::flat_torus({1.0, 2.0}),
                           ConformalCylinder{ConformalStep(0.5, 0.0, 1e-4, 1.0), 0.7, NeumannEnd{}, false, std::nullopt}};
    CHECK(collar_volume(c) == doctest::Approx(2.0 * 0.7 * std::exp(3.0)).epsilon(2e-4));
    CHECK(collar_volume(c) < 2.0 * 0.7 * std::exp(3.0));
    // Against composite Simpson for a bump.
    const CollarScenario d{BoundaryModeFamily::flat_torus({1.0, 1.0}),
                           ConformalCylinder{ConformalBump(0.2, 0.2, 0.5, 0.8, 1.2), 2.0, NeumannEnd{}, false,
                                             std::nullopt}};
    const int n = 20000;
    double simpson = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = 2.0 * i / n;
      const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      simpson += w * std::exp(3.0 * d.conformal_exponent(t));
    }
    simpson *= 2.0 / n / 3.0;
    CHECK(collar_volume(d) == doctest::Approx(simpson).epsilon(1e-8));
  }
}
