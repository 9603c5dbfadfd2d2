#pragma once

// Scenario descriptions, bound certificates, epsilon sweeps and reporting.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steklov/fem2d.hpp"
#include "steklov/mode_solver.hpp"

namespace steklov::experiments {

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind { None, FixedVolumeLowerBound, MixedLowerBound, ComponentUpperBound };

std::string certificate_kind_name(CertificateKind kind);
CertificateKind certificate_kind_from_name(const std::string& name);

struct Certificate {
  CertificateKind kind = CertificateKind::None;
  double epsilon = 0.0;
  double A = 0.0;
  /// Only for mixed certificates with b >= 2.
  double B = 0.0;
  /// Final constant: lower bounds assert sigma >= C / (divisor * epsilon),
  /// upper bounds assert sigma <= C.
  double C = 0.0;
  /// Number of components b in the sigma_{b+1} >= sigma_2^N(Omega_1) / b chain.
  int divisor = 1;
  double bound = 0.0;
  bool is_lower_bound() const;
  /// Named scalar inputs (delta, lambda_next, b, L, neumann_gap, ...).
  std::map<std::string, double> inputs;
  std::vector<double> component_volumes;
  std::vector<double> component_energies;

  std::string to_json() const;
  static Certificate from_json(const std::string& text);
  bool operator==(const Certificate&) const = default;
};

/// A = min{1/4, delta/8}; bound A / epsilon.
Certificate certificate_fixed_volume(double epsilon, double delta_bleecker);

/// A = min{lambda_next, 1/4} / 4 and, for b >= 2,
///   B = min{mu b L, 1/(2b)} / (32 (b-1)^2) * min|Sigma_j| / max|Sigma_j|,
/// with final constant A (b = 1) or min{A, B/2} (b >= 2); bound C / epsilon.
Certificate certificate_mixed(double epsilon, double lambda_next, int b, double collar_length,
                              double neumann_gap_value, const std::vector<double>& component_volumes);

/// Collar cutoff for one boundary component: psi = |Sigma_i|^{-1/2} on the
/// first plateau_end units of collar, smoothstep down to 0 at support_end.
struct ComponentCutoff {
  /// The component sits at t = 0 (left) or at t = L (right).
  bool at_right_end = false;
  double plateau_end = 0.0;
  double support_end = 0.0;
};

/// C = max_i Dirichlet energy of psi_i. Evaluated in the scenario metric and
/// in the undeformed metric; a mismatch (deformation reaching the cutoff
/// transition) or overlapping supports raise ConfigError.
Certificate upper_bound_components(const CollarScenario& scenario, const std::vector<ComponentCutoff>& cutoffs);

// ---------------------------------------------------------------------------
// Scenario configuration

/// offset + coef * epsilon^power.
struct ParamExpr {
  double offset = 0.0;
  double coef = 0.0;
  double power = 0.0;

  double at(double epsilon) const;
  static ParamExpr constant(double v) { return {v, 0.0, 0.0}; }
  static ParamExpr epsilon_power(double coef, double power) { return {0.0, coef, power}; }
};

struct ProfileSpec {
  std::string kind = "conformal_step";
  std::map<std::string, ParamExpr> params;

  Profile build(double epsilon) const;
};

struct FamilySpec {
  std::string kind = "circle";
  double radius = 1.0;
  std::vector<double> edges;

  BoundaryModeFamily build() const;
};

struct CertificateSpec {
  CertificateKind kind = CertificateKind::None;
  double delta = 2.0;
  double lambda_next = 1.0;
  int b = 1;
  int divisor = 1;
  /// Length of the product collar the certificate is built on.
  ParamExpr collar_length = ParamExpr::constant(1.0);
  /// Sub-interval whose undeformed Neumann gap enters B (mixed, b >= 2).
  std::optional<std::pair<double, double>> neumann_region;
  /// Defaults to b copies of the cross-section volume.
  std::vector<double> component_volumes;
  std::vector<ComponentCutoff> cutoffs;
};

struct TargetSpec {
  int k = 2;
  CertificateSpec certificate;
};

struct QuasiIsometrySpec {
  int trials = 20;
  int refinement = 2;
  int k = 10;
  std::uint64_t seed = 1;
  double max_ratio = 2.0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  /// "collar" (epsilon sweep) or "quasi_isometry".
  std::string experiment = "collar";
  /// "mode" or "fem" (fem only for circle cross-sections).
  std::string solver = "mode";
  FamilySpec family;
  /// "bleecker" or "conformal".
  std::string collar = "conformal";
  double length = 1.0;
  /// "neumann", "dirichlet" or "steklov".
  std::string right_end = "neumann";
  bool mirrored = false;
  std::optional<int> ambient_dim;
  ProfileSpec profile;
  std::vector<TargetSpec> targets;
  std::vector<double> sweep;
  double mode_cap = 400.0;
  int grid_size = kDefaultGridSize;
  int fem_nx = 96;
  int fem_nt = 32;
  QuasiIsometrySpec quasi_isometry;
  std::string csv_path;
  std::string svg_path;

  CollarScenario scenario(double epsilon) const;

  static ScenarioConfig from_json(const std::string& text);
  std::string to_json() const;
};

/// Throws ConfigError on an invalid configuration.
void validate(const ScenarioConfig& config);

// ---------------------------------------------------------------------------
// Results

struct ResultRow {
  double epsilon = 0.0;
  int k = 0;
  double sigma = 0.0;
  double certificate_bound = 0.0;
  CertificateKind certificate_kind = CertificateKind::None;
  double volume = 0.0;
  double runtime_ms = 0.0;
  Certificate certificate;
  /// sigma satisfies the certificate (always true for kind None).
  bool holds() const;
};

struct ResultTable {
  std::string name;
  std::vector<ResultRow> rows;

  std::vector<double> sigma_column(int k) const;
};

/// Rows for a single epsilon (the first sweep value).
ResultTable run_scenario(const ScenarioConfig& config);
ResultTable run_scenario(const ScenarioConfig& config, double epsilon);
/// Rows for every epsilon of the sweep, ordered as the sweep.
ResultTable sweep(const ScenarioConfig& config);

/// Columns epsilon,k,sigma_k,certificate_bound,certificate_kind,volume,runtime_ms.
std::string to_csv(const ResultTable& table, bool include_runtime = true);
std::string to_svg(const ResultTable& table);
void emit_csv(const ResultTable& table, const std::string& path);
void emit_svg(const ResultTable& table, const std::string& path);

std::vector<fem::QuasiIsometryReport> run_quasi_isometry(const QuasiIsometrySpec& spec);
std::string quasi_isometry_csv(const std::vector<fem::QuasiIsometryReport>& reports);
std::string quasi_isometry_json(const std::vector<fem::QuasiIsometryReport>& reports);

void write_text(const std::string& path, const std::string& text);

// ---------------------------------------------------------------------------
// Presets

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

}  // namespace steklov::experiments
