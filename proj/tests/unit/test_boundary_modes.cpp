#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "steklov/boundary_modes.hpp"
#include "steklov/errors.hpp"

using namespace steklov;

namespace {

// Eigenvalues with multiplicity, sorted.
std::vector<double> expanded(const std::vector<Mode>& modes, double t = 1.0) {
  std::vector<double> out;
  for (const auto& m : modes)
    for (int i = 0; i < m.multiplicity; ++i) out.push_back(m.eigenvalue(t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("boundary_modes") {
  TEST_CASE("circle enumeration") {
    const auto modes = BoundaryModeFamily::circle(1.0).enumerate_modes(4.5);
    const auto v = expanded(modes);
    REQUIRE(v.size() == 5);
    const double expect[] = {0, 1, 1, 4, 4};
    for (int i = 0; i < 5; ++i) CHECK(v[i] == expect[i]);
    CHECK(modes.front().is_zero_mode());
    CHECK(modes.front().multiplicity == 1);
  }

  TEST_CASE("circle and torus match a direct lattice double loop") {
    for (double r : {0.5, 1.0, 2.3}) {
      const double cap = 40.0;
      std::vector<double> direct;
      for (int k = -100; k <= 100; ++k)
        if ((k / r) * (k / r) <= cap) direct.push_back((k / r) * (k / r));
      std::sort(direct.begin(), direct.end());
      const auto v = expanded(BoundaryModeFamily::circle(r).enumerate_modes(cap));
      REQUIRE(v.size() == direct.size());
      for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(direct[i]).epsilon(1e-14));
    }
    const std::vector<double> edges{2.0 * std::numbers::pi, 4.0};
    const double cap = 30.0;
    std::vector<double> direct;
    for (int a = -60; a <= 60; ++a)
      for (int b = -60; b <= 60; ++b) {
        const double wa = 2 * std::numbers::pi * a / edges[0], wb = 2 * std::numbers::pi * b / edges[1];
        if (wa * wa + wb * wb <= cap) direct.push_back(wa * wa + wb * wb);
      }
    std::sort(direct.begin(), direct.end());
    const auto torus = BoundaryModeFamily::flat_torus(edges);
    const auto v = expanded(torus.enumerate_modes(cap));
    REQUIRE(v.size() == direct.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(direct[i]).epsilon(1e-13));
    CHECK(torus.total_volume() == doctest::Approx(8.0 * std::numbers::pi));
  }

  TEST_CASE("unit torus below first eigenvalue has only the zero mode") {
    const auto modes = BoundaryModeFamily::flat_torus({1.0, 1.0}).enumerate_modes(0.5);
    REQUIRE(modes.size() == 1);
    CHECK(modes[0].is_zero_mode());
  }

  TEST_CASE("berger enumeration and mu") {
    const auto fam = BoundaryModeFamily::berger_s3();
    const auto modes = fam.enumerate_modes(3.5);
    int total = 0;
    for (const auto& m : modes) total += m.multiplicity;
    CHECK(modes.size() == 3);
    CHECK(total == 5);  // zero mode plus (1, +-1), each of multiplicity 2
    CHECK(berger_mu(1, 1, 1.0) == 3.0);
    CHECK(berger_mu(0, 0, 17.0) == 0.0);
    CHECK(berger_mu(1, 1, 10.0) == doctest::Approx(20.01).epsilon(1e-15));
    CHECK_THROWS_AS(berger_mu(2, 1, 1.0), DomainError);
    CHECK_THROWS_AS(berger_mu(1, 3, 1.0), DomainError);
    CHECK(fam.dimension() == 3);
    CHECK(fam.total_volume() == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
  }

  TEST_CASE("lambda2 examples and bound") {
    CHECK(lambda2_bleecker(1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(lambda2_bleecker(10.0) == doctest::Approx(20.01).epsilon(1e-15));
    CHECK(lambda2_bleecker(1000.0) == doctest::Approx(2000.000001).epsilon(1e-15));
    for (int i = 0; i < 50; ++i) {
      const double t = std::pow(10.0, 3.0 * i / 49.0);
      CHECK(lambda2_bleecker(t) >= 2.0 * t);
    }
    CHECK_THROWS_AS(lambda2_bleecker(0.5), DomainError);
  }

  TEST_CASE("berger modes: nonnegative, same set at every t, sorted at t = 1") {
    const auto fam = BoundaryModeFamily::berger_s3();
    const auto modes = fam.enumerate_modes(120.0);
    for (std::size_t i = 1; i < modes.size(); ++i) CHECK(modes[i].mu1 >= modes[i - 1].mu1);
    for (const auto& m : modes) {
      for (double t : {1.0, 1.7, 10.0, 100.0}) CHECK(m.eigenvalue(t) >= 0.0);
      CHECK(fam.mode_infimum(m) <= m.mu1);
      CHECK(fam.mode_infimum(m) >= 0.0);
    }
    int zero = 0;
    for (const auto& m : modes) zero += m.is_zero_mode() ? m.multiplicity : 0;
    CHECK(zero == 1);
  }

  TEST_CASE("floor_above is a certified lower bound") {
    const auto fam = BoundaryModeFamily::berger_s3();
    const auto modes = fam.enumerate_modes(2000.0);
    for (double threshold : {3.0, 8.0, 50.0, 300.0, 1000.0}) {
      const double floor = fam.floor_above(threshold);
      for (const auto& m : modes) {
        if (m.mu1 < threshold) continue;
        for (int i = 0; i < 40; ++i) {
          const double t = std::pow(10.0, 4.0 * i / 39.0);
          CHECK(m.eigenvalue(t) >= floor * (1 - 1e-12));
        }
      }
    }
    CHECK(BoundaryModeFamily::circle(1.0).floor_above(9.0) == 9.0);
  }

  TEST_CASE("harmonic polynomial oracle") {
    const auto rows = berger_oracle(8);
    for (int k = 0; k <= 8; ++k) {
      std::vector<int> weights;
      int total = 0;
      for (const auto& r : rows) {
        if (r.k != k) continue;
        weights.push_back(r.m);
        total += r.multiplicity;
        CHECK(r.multiplicity == k + 1);
        CHECK(r.mu1 == doctest::Approx(k * (k + 2)));
      }
      CHECK(total == (k + 1) * (k + 1));
      std::vector<int> expect;
      for (int m = -k; m <= k; m += 2) expect.push_back(m);
      CHECK(weights == expect);
    }
    CHECK_THROWS_AS(berger_oracle(9), ResourceError);
    CHECK(berger_oracle_csv(berger_oracle(1)).rfind("k,m,multiplicity,mu1\n", 0) == 0);
  }

  TEST_CASE("mode budget") {
    CHECK_THROWS_AS(BoundaryModeFamily::flat_torus({10.0, 10.0}).enumerate_modes(1e4, 100), ResourceError);
    CHECK_THROWS_AS(BoundaryModeFamily::circle(-1.0), ConfigError);
  }
}
