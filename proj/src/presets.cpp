#include <cmath>

#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"

namespace steklov::experiments {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

const std::vector<double> kDefaultGrid{0.4, 0.2, 0.1, 0.05};

ParamExpr eps() { return ParamExpr::epsilon_power(1.0, 1.0); }
ParamExpr num(double v) { return ParamExpr::constant(v); }

// Torus cross-section with first nonzero eigenvalue 1.
FamilySpec unit_gap_torus() { return {"flat_torus", 1.0, {kTwoPi, kTwoPi}}; }

// Deformation equal to -2 log(eps) on [0.5, L - 0.5], zero within eps of
// either end of a cylinder of length L.
ProfileSpec middle_plateau(double L) {
  ProfileSpec p{"conformal_bump", {}};
  p.params["flat_width"] = eps();
  p.params["rise_end"] = num(0.5);
  p.params["plateau_end"] = num(L - 0.5);
  p.params["support_end"] = {L, -1.0, 1.0};
  return p;
}

ScenarioConfig thm11() {
  ScenarioConfig c;
  c.name = "thm11_bleecker_cylinder";
  c.family = {"berger_s3", 1.0, {}};
  c.collar = "bleecker";
  c.length = 3.0;
  c.right_end = "neumann";
  c.profile = {"bleecker_ramp", {{"ramp_end", num(1.0)}, {"plateau_start", num(2.0)}}};
  TargetSpec t;
  t.k = 2;
  t.certificate.kind = CertificateKind::FixedVolumeLowerBound;
  t.certificate.delta = 2.0;
  c.targets = {t};
  c.sweep = kDefaultGrid;
  c.mode_cap = 6000.0;
  return c;
}

// The deformation lives in the collar Sigma x [0, l] with l = 2 sqrt(eps):
// zero on [0, eps], -2 log(eps) on [l/2, l], back to zero at 1.25 l.
ScenarioConfig thm12() {
  ScenarioConfig c;
  c.name = "thm12_connected_collar";
  c.family = unit_gap_torus();
  c.length = 2.0;
  c.right_end = "neumann";
  c.profile = {"conformal_bump", {}};
  c.profile.params["flat_width"] = eps();
  c.profile.params["rise_end"] = ParamExpr::epsilon_power(1.0, 0.5);
  c.profile.params["plateau_end"] = ParamExpr::epsilon_power(2.0, 0.5);
  c.profile.params["support_end"] = ParamExpr::epsilon_power(2.5, 0.5);
  TargetSpec t;
  t.k = 2;
  t.certificate.kind = CertificateKind::MixedLowerBound;
  t.certificate.lambda_next = 1.0;
  t.certificate.b = 1;
  t.certificate.collar_length = ParamExpr::epsilon_power(2.0, 0.5);
  c.targets = {t};
  c.sweep = kDefaultGrid;
  c.mode_cap = 2500.0;
  return c;
}

// Two boundary components, each with its own deformed neighborhood
// [eps, 1.4] (mirrored), and an undeformed middle [1.4, 2.6].
ScenarioConfig thm13() {
  ScenarioConfig c;
  c.name = "thm13_disconnected_b2";
  c.family = unit_gap_torus();
  c.length = 4.0;
  c.right_end = "steklov";
  c.mirrored = true;
  c.profile = {"conformal_bump", {}};
  c.profile.params["flat_width"] = eps();
  c.profile.params["rise_end"] = num(0.5);
  c.profile.params["plateau_end"] = num(1.0);
  c.profile.params["support_end"] = num(1.4);

  TargetSpec upper;
  upper.k = 2;
  upper.certificate.kind = CertificateKind::ComponentUpperBound;
  upper.certificate.cutoffs = {{false, 1.5, 2.0}, {true, 1.5, 2.0}};

  TargetSpec lower;
  lower.k = 3;
  lower.certificate.kind = CertificateKind::MixedLowerBound;
  lower.certificate.lambda_next = 1.0;
  lower.certificate.b = 1;
  lower.certificate.divisor = 2;
  lower.certificate.collar_length = num(1.0);

  c.targets = {upper, lower};
  c.sweep = kDefaultGrid;
  c.mode_cap = 2500.0;
  return c;
}

ScenarioConfig lemma31() {
  ScenarioConfig c;
  c.name = "lemma31_mixed";
  c.family = unit_gap_torus();
  c.length = 2.0;
  c.right_end = "steklov";
  c.profile = middle_plateau(c.length);
  TargetSpec t;
  t.k = 2;
  t.certificate.kind = CertificateKind::MixedLowerBound;
  t.certificate.lambda_next = 1.0;
  t.certificate.b = 2;
  t.certificate.collar_length = num(1.0);
  t.certificate.neumann_region = std::make_pair(0.5, 1.5);
  c.targets = {t};
  c.sweep = kDefaultGrid;
  c.mode_cap = 2500.0;
  return c;
}

// Same cylinder and deformation as lemma31_mixed, over a circle.
ScenarioConfig dim2() {
  ScenarioConfig c;
  c.name = "dim2_contrast";
  c.family = {"circle", 1.0, {}};
  c.length = 2.0;
  c.right_end = "steklov";
  c.profile = middle_plateau(c.length);
  TargetSpec t;
  t.k = 2;
  c.targets = {t};
  c.sweep = kDefaultGrid;
  return c;
}

ScenarioConfig quasi_isometry() {
  ScenarioConfig c;
  c.name = "quasi_isometry";
  c.experiment = "quasi_isometry";
  c.solver = "fem";
  c.quasi_isometry = QuasiIsometrySpec{};
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"thm11_bleecker_cylinder", "thm12_connected_collar", "thm13_disconnected_b2",
          "lemma31_mixed",           "dim2_contrast",          "quasi_isometry"};
}

ScenarioConfig preset(const std::string& name) {
  if (name == "thm11_bleecker_cylinder") return thm11();
  if (name == "thm12_connected_collar") return thm12();
  if (name == "thm13_disconnected_b2") return thm13();
  if (name == "lemma31_mixed") return lemma31();
  if (name == "dim2_contrast") return dim2();
  if (name == "quasi_isometry") return quasi_isometry();
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace steklov::experiments
