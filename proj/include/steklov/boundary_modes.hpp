#pragma once

// Spectral data of a closed cross-section Sigma. Every family here has
// eigenfunctions that do not depend on the family parameter t, so a collar
// Sigma x [0, L] separates into one radial problem per mode.
//
// Shipped families:
//   Circle     S^1 of radius r, eigenvalues (k/r)^2, multiplicity 2 for k >= 1
//   FlatTorus  R^d / (a_1 Z x ... x a_d Z), one mode per lattice vector j
//   BergerS3   S^3 with the volume-preserving Hopf deformation
//              t^-1 g + (t^2 - t^-1) eta (x) eta; mode (k, m) has
//              mu(t) = t (k(k+2) - m^2) + t^-2 m^2 and multiplicity k + 1

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace steklov {

inline constexpr std::size_t kDefaultModeBudget = 100000;

enum class FamilyKind { Circle, FlatTorus, BergerS3 };

struct Mode {
  FamilyKind family = FamilyKind::Circle;
  int id = 0;
  /// Circle: {k}; FlatTorus: frequency vector j; BergerS3: {k, m}.
  std::vector<int> label;
  int multiplicity = 1;
  int component = 0;
  /// Eigenvalue at the reference parameter t = 1.
  double mu1 = 0.0;
  std::function<double(double)> eigenvalue_fn;

  double eigenvalue(double t) const { return eigenvalue_fn(t); }
  bool is_zero_mode() const { return mu1 == 0.0; }
  std::string label_string() const;
};

class BoundaryModeFamily {
 public:
  static BoundaryModeFamily circle(double radius);
  static BoundaryModeFamily flat_torus(std::vector<double> edge_lengths);
  static BoundaryModeFamily berger_s3();

  FamilyKind kind() const { return kind_; }
  std::string kind_name() const;
  /// Dimension of Sigma.
  int dimension() const { return dimension_; }
  double total_volume() const { return total_volume_; }
  const std::vector<double>& component_volumes() const { return component_volumes_; }
  double radius() const { return radius_; }
  const std::vector<double>& edge_lengths() const { return edges_; }

  /// True when eigenvalues move with the family parameter t.
  bool t_dependent() const { return kind_ == FamilyKind::BergerS3; }

  /// All modes with mu(1) <= cap, sorted by (mu(1), label). Throws
  /// ResourceError if more than `budget` modes qualify.
  std::vector<Mode> enumerate_modes(double cap, std::size_t budget = kDefaultModeBudget) const;

  /// Exact inf over t >= 1 of mu(t) for one mode.
  double mode_infimum(const Mode& mode) const;

  /// Certified lower bound on inf_{t >= 1} mu(t) over every mode whose
  /// mu(1) >= threshold (enumerated or not). Nondecreasing in threshold.
  double floor_above(double threshold) const;

 private:
  BoundaryModeFamily() = default;

  FamilyKind kind_ = FamilyKind::Circle;
  int dimension_ = 1;
  double total_volume_ = 0.0;
  std::vector<double> component_volumes_;
  double radius_ = 1.0;
  std::vector<double> edges_;
};

/// Eigenvalue of the Berger mode (k, m) at parameter t:
/// t (k(k+2) - m^2) + m^2 / t^2. Requires k >= 0, |m| <= k, k - m even, t > 0.
double berger_mu(int k, int m, double t);

/// First nonzero eigenvalue of the Berger family at t >= 1, minimized over all
/// (k, m) with a certified stopping rule (mu >= 2 k t for degree k).
double lambda2_bleecker(double t);

struct BergerOracleRow {
  int k = 0;
  int m = 0;
  int multiplicity = 0;
  double mu1 = 0.0;
};

inline constexpr int kBergerOracleMaxDegree = 8;

/// Brute-force decomposition of degree-k harmonic polynomials on C^2 = R^4
/// under the Hopf Killing field, for k = 0..k_max. Rows sorted by (k, m).
std::vector<BergerOracleRow> berger_oracle(int k_max);

/// CSV with header k,m,multiplicity,mu1.
std::string berger_oracle_csv(const std::vector<BergerOracleRow>& rows);

}  // namespace steklov
