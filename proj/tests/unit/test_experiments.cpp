#include <doctest.h>

#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"

using namespace steklov;
using namespace steklov::experiments;

namespace {

CollarScenario torus_cylinder(double L, EndCondition right, Profile delta, bool mirrored = false) {
  return {BoundaryModeFamily::flat_torus({2 * std::numbers::pi, 2 * std::numbers::pi}),
          ConformalCylinder{delta, L, right, mirrored, std::nullopt}};
}

// Dirichlet energy of the quintic cutoff over a transition of width w:
// int_0^1 (30 s^2 (1 - s)^2)^2 ds / w = (900 / 630) / w.
double cutoff_energy(double w) { return 900.0 / 630.0 / w; }

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("fixed-volume certificate") {
    const auto c = certificate_fixed_volume(0.1, 2.0);
    CHECK(c.A == 0.25);
    CHECK(c.bound == doctest::Approx(2.5));
    CHECK(c.is_lower_bound());
    CHECK(certificate_fixed_volume(0.3, 1.0).A == 0.125);
    CHECK(certificate_fixed_volume(0.05, 2.0).bound == doctest::Approx(5.0));
    CHECK_THROWS_AS(certificate_fixed_volume(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(certificate_fixed_volume(0.1, -1.0), DomainError);
  }

  TEST_CASE("mixed certificate") {
    const auto one = certificate_mixed(0.1, 1.0, 1, 1.0, 0.0, {});
    CHECK(one.A == doctest::Approx(1.0 / 16));
    CHECK(one.C == doctest::Approx(1.0 / 16));
    CHECK(one.bound == doctest::Approx(0.625));
    CHECK(certificate_mixed(0.1, 7.0, 1, 1.0, 0.0, {}).A == doctest::Approx(1.0 / 16));
    CHECK(certificate_mixed(0.1, 0.2, 1, 1.0, 0.0, {}).A == doctest::Approx(0.05));

    const auto two = certificate_mixed(0.1, 1.0, 2, 1.0, 1.0, {5.0, 5.0});
    CHECK(two.B == doctest::Approx(1.0 / 128));
    CHECK(two.C == doctest::Approx(1.0 / 256));
    CHECK(two.bound == doctest::Approx(1.0 / 25.6));
    // Volume ratio enters B.
    CHECK(certificate_mixed(0.1, 1.0, 2, 1.0, 1.0, {2.0, 4.0}).B == doctest::Approx(1.0 / 256));
    CHECK_THROWS_AS(certificate_mixed(0.1, 1.0, 2, 1.0, 1.0, {1.0}), ConfigError);
    CHECK_THROWS_AS(certificate_mixed(0.1, 1.0, 0, 1.0, 1.0, {}), DomainError);
  }

  TEST_CASE("component upper bound") {
    const auto plain = torus_cylinder(4.0, SteklovEnd{1.0}, ConformalStep(0.5, 0.0, 1.0, 0.0));
    const auto one = upper_bound_components(plain, {{false, 1.0, 1.5}});
    CHECK(one.C == doctest::Approx(cutoff_energy(0.5)).epsilon(1e-12));
    CHECK(!one.is_lower_bound());

    const auto deformed = torus_cylinder(4.0, SteklovEnd{1.0}, ConformalBump(0.1, 0.1, 0.5, 1.0, 1.4), true);
    const auto two = upper_bound_components(deformed, {{false, 1.5, 2.0}, {true, 1.5, 2.0}});
    REQUIRE(two.component_energies.size() == 2);
    CHECK(two.component_energies[0] == doctest::Approx(two.component_energies[1]).epsilon(1e-14));
    CHECK(two.C == doctest::Approx(20.0 / 7.0).epsilon(1e-12));

    // psi constant everywhere: no transition, zero energy.
    CHECK(upper_bound_components(plain, {{false, 4.0, 5.0}}).C == 0.0);
    CHECK_THROWS_AS(upper_bound_components(plain, {{false, 1.5, 2.5}, {true, 1.5, 2.5}}), ConfigError);
    CHECK_THROWS_AS(upper_bound_components(deformed, {{false, 1.0, 2.0}}), ConfigError);
  }

  TEST_CASE("certificate JSON round trip") {
    auto c = certificate_mixed(0.05, 0.7, 2, 1.3, 0.9, {1.0, 3.0});
    c.divisor = 2;
    const auto back = Certificate::from_json(c.to_json());
    CHECK(back == c);
    const auto u = upper_bound_components(torus_cylinder(3.0, SteklovEnd{1.0}, ConformalStep(0.5, 0.0, 1.0, 0.0)),
                                          {{false, 1.0, 1.2}, {true, 0.5, 1.1}});
    CHECK(Certificate::from_json(u.to_json()) == u);
    CHECK_THROWS_AS(Certificate::from_json("{not json"), ConfigError);
  }

  TEST_CASE("scenario config JSON") {
    for (const auto& name : preset_names()) {
      const auto c = preset(name);
      const auto back = ScenarioConfig::from_json(c.to_json());
      CHECK(back.to_json() == c.to_json());
      CHECK_NOTHROW(validate(back));
    }
    const auto parsed = ScenarioConfig::from_json(R"({
      "name": "custom",
      "geometry": {"family": {"kind": "circle", "radius": 1.0}, "collar": "conformal",
                   "length": 1.0, "right_end": "neumann"},
      "profile": {"kind": "conformal_step", "flat_width": "epsilon", "rise_end": 0.5},
      "targets": [{"k": 3}],
      "sweep": [0.3, 0.1]
    })");
    CHECK(parsed.profile.params.at("flat_width").at(0.3) == doctest::Approx(0.3));
    CHECK(parsed.targets.front().k == 3);
    CHECK_THROWS_AS(preset("nope"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json(R"({"name": "x", "bogus_profile": 1, "profile": {"kind": "zzz"}})"),
                    ConfigError);
  }

  TEST_CASE("config validation") {
    auto c = preset("dim2_contrast");
    c.sweep.clear();
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK_THROWS_AS(sweep(c), ConfigError);
    c.sweep = {0.1, 0.2};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.sweep = {0.5, 1.0};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.sweep = {0.2};
    c.targets.front().k = 1;
    CHECK_THROWS_AS(validate(c), ConfigError);
  }

  TEST_CASE("thm11 preset sweep") {
    const auto table = sweep(preset("thm11_bleecker_cylinder"));
    REQUIRE(table.rows.size() == 4);
    const auto s = table.sigma_column(2);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
    for (const auto& r : table.rows) {
      CHECK(r.holds());
      CHECK(r.volume == doctest::Approx(3 * 2 * std::numbers::pi * std::numbers::pi).epsilon(1e-12));
    }
  }

  TEST_CASE("dim2 preset is constant and fem agrees") {
    auto config = preset("dim2_contrast");
    const auto s = sweep(config).sigma_column(2);
    for (double v : s) CHECK(std::abs(v - s.front()) <= 1e-9 * s.front());
    CHECK(s.front() == doctest::Approx(std::tanh(1.0)).epsilon(1e-9));
    config.solver = "fem";
    config.sweep = {0.2};
    const auto f = run_scenario(config).rows.front().sigma;
    CHECK(f == doctest::Approx(std::tanh(1.0)).epsilon(5e-3));
  }

  TEST_CASE("csv, svg and determinism") {
    const auto config = preset("dim2_contrast");
    const auto a = sweep(config);
    const auto b = sweep(config);
    CHECK(to_csv(a, false) == to_csv(b, false));
    const std::string csv = to_csv(a);
    CHECK(csv.rfind("epsilon,k,sigma_k,certificate_bound,certificate_kind,volume,runtime_ms\n", 0) == 0);
    CHECK(csv.find("4.000000000000e-01,2,") != std::string::npos);
    const std::string svg = to_svg(a);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK_THROWS_AS(emit_csv(a, "/nonexistent_dir/x.csv"), IoError);
    CHECK_THROWS_AS(emit_svg(a, "/nonexistent_dir/x.svg"), IoError);
  }

  TEST_CASE("quasi-isometry runner") {
    QuasiIsometrySpec spec;
    spec.trials = 3;
    spec.refinement = 1;
    spec.k = 6;
    const auto reports = run_quasi_isometry(spec);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
      CHECK(r.pass);
      CHECK(r.A <= std::sqrt(2.0) + 1e-12);
    }
    const auto again = run_quasi_isometry(spec);
    CHECK(quasi_isometry_csv(reports) == quasi_isometry_csv(again));
    CHECK(quasi_isometry_json(reports).find("\"pass\"") != std::string::npos);
  }
}
