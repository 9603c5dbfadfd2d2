#pragma once

// Separable collar problems. On Sigma x [0, L] with a metric whose
// cross-section eigenfunctions do not depend on t, a function
// u(x, t) = a(t) phi(x) has energy  int_0^L (w a'^2 + q a^2) dt  and boundary
// mass  m a(0)^2, so every mode of Sigma contributes the eigenvalues of a
// weighted Sturm-Liouville problem with a Steklov condition at t = 0.
//
//   Bleecker collar    g = g_Sigma(f(t)) + dt^2      w = 1,            q = mu(f(t))
//   conformal cylinder g = e^{2 delta(t)} (g + dt^2)  w = e^{(n-1)delta}, q = lambda w
//
// The fixed-volume 4-manifold construction is studied through its collar:
// a Berger-S^3 cylinder with Steklov data at t = 0 and Neumann data at t = L.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "steklov/boundary_modes.hpp"
#include "steklov/profiles.hpp"

namespace steklov {

struct NeumannEnd {};
struct DirichletEnd {};
struct SteklovEnd {
  double boundary_mass = 1.0;
};
using EndCondition = std::variant<NeumannEnd, DirichletEnd, SteklovEnd>;

std::string end_condition_name(const EndCondition& end);

inline constexpr int kDefaultGridSize = 2048;
inline constexpr int kMinimumGridSize = 64;

struct ReducedModeProblem {
  double length = 1.0;
  std::function<double(double)> flux_weight;  // w(t) > 0
  std::function<double(double)> potential;    // q(t) >= 0
  SteklovEnd left{};
  EndCondition right = NeumannEnd{};
  int grid_size = kDefaultGridSize;
  /// Coefficient knots inside (0, L); the ODE integrator never steps across one.
  std::vector<double> breakpoints;
  double rel_tol = 1e-10;
};

/// Dirichlet-to-Neumann value sigma = -(w a'/a)(0) / m for a right end that is
/// Neumann or Dirichlet, via the Riccati variable r = w a'/a integrated from
/// t = L down to t = 0 (r' = q - r^2/w) with adaptive Dormand-Prince steps.
double dtn_value(const ReducedModeProblem& problem);

/// Both eigenvalues of the two-point problem (Steklov at both ends), from a P1
/// finite element discretization condensed onto the two end nodes, Richardson
/// extrapolated from grid_size and grid_size / 2 cells. Sorted ascending.
std::array<double, 2> mode_eigenvalues(const ReducedModeProblem& problem);

struct ModeEigenpairs {
  std::array<double, 2> values{};
  std::vector<double> nodes;
  /// Nodal eigenvectors, normalized so that sum_ends m a^2 = 1.
  std::array<std::vector<double>, 2> vectors;
};

/// Unextrapolated P1 solution on grid_size cells (second order).
ModeEigenpairs mode_eigenpairs(const ReducedModeProblem& problem);

/// Smallest eigenvalue(s) of the constant-coefficient problem w = w0, q = q0
/// with the given end conditions (closed form). Used as the per-mode lower
/// bound behind the truncation certificate.
double constant_coefficient_floor(double w0, double q0, double length, const SteklovEnd& left,
                                  const EndCondition& right);

// ---------------------------------------------------------------------------

struct BleeckerCollar {
  BleeckerRamp ramp;
  double length = 3.0;
  EndCondition right_end = NeumannEnd{};
};

struct ConformalCylinder {
  /// Conformal exponent delta(t); the metric is e^{2 delta} (g_Sigma + dt^2).
  Profile delta;
  double length = 1.0;
  EndCondition right_end = NeumannEnd{};
  /// Add delta(L - t), so the deformation is placed symmetrically at both ends.
  bool mirrored = false;
  /// dim M = n + 1; checked against the family when given.
  std::optional<int> ambient_dim;
};

using CollarKind = std::variant<BleeckerCollar, ConformalCylinder>;

struct CollarScenario {
  BoundaryModeFamily family;
  CollarKind kind;
  double mode_cap = 400.0;
  std::size_t mode_budget = kDefaultModeBudget;
  int grid_size = kDefaultGridSize;

  double length() const;
  const EndCondition& right_end() const;
  /// Dimension of the collar, dim Sigma + 1.
  int ambient_dim() const { return family.dimension() + 1; }
  /// Conformal exponent at t (0 for Bleecker collars).
  double conformal_exponent(double t) const;
  std::vector<double> breakpoints() const;
};

/// Throws ConfigError when family and collar kind do not fit together.
void validate(const CollarScenario& scenario);

ReducedModeProblem reduce(const CollarScenario& scenario, const Mode& mode);

struct SpectrumEntry {
  double sigma = 0.0;
  int mode_id = 0;
  std::string mode_label;
  int multiplicity_slot = 0;
  /// 0 for the first eigenvalue of the mode's radial problem, 1 for the second.
  int branch = 0;
};

struct SteklovSpectrum {
  std::vector<SpectrumEntry> entries;
  /// Every eigenvalue not listed (from modes that were not solved) is >= this.
  double truncation_bound = 0.0;
  int modes_solved = 0;

  std::vector<double> values() const;
};

/// The k smallest Steklov (or mixed Steklov-Neumann) eigenvalues of the
/// collar, with per-value mode provenance and a truncation certificate.
SteklovSpectrum steklov_spectrum(const CollarScenario& scenario, int count);

/// CSV with columns index,sigma,mode_label,multiplicity_slot,truncation_bound.
std::string spectrum_csv(const SteklovSpectrum& spectrum);

/// First positive Neumann eigenvalue of the Laplacian on Sigma x [t0, t1] in
/// the scenario metric. With include_cross_modes = false only the axial
/// (constant cross-section) problem is solved.
double neumann_gap(const CollarScenario& scenario, double t0, double t1,
                   bool include_cross_modes = true);

/// Volume of Sigma x [0, L] in the scenario metric.
double collar_volume(const CollarScenario& scenario);

// ---------------------------------------------------------------------------
// 1D Neumann eigenproblem  -(w a')' + q a = mu rho a  on [t0, t1].

struct SturmLiouvilleNeumann {
  double t0 = 0.0;
  double t1 = 1.0;
  std::function<double(double)> flux_weight;
  std::function<double(double)> potential;
  std::function<double(double)> density;
  int grid_size = kDefaultGridSize;
};

/// The index-th smallest eigenvalue (0-based), by Sturm-sequence bisection on
/// the tridiagonal finite element pencil.
double neumann_eigenvalue(const SturmLiouvilleNeumann& problem, int index);

}  // namespace steklov
