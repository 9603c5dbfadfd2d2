#pragma once

// One-dimensional profile functions used to build collar metrics: the
// Bleecker ramp that drives the boundary family parameter, and the conformal
// exponents that switch on away from the boundary. All profiles are immutable
// value types, C^2 at their knots, and exact on their closed-form pieces.

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace steklov {

/// Polynomial smoothstep of continuity class C^order on [lo, hi]:
/// 0 for t <= lo, 1 for t >= hi, strictly increasing in between.
class SmoothStep {
 public:
  SmoothStep(double lo, double hi, int order = 2);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int order() const { return order_; }

  double value(double t) const;
  double derivative(double t) const;

  /// Unit-interval polynomial S(x) and S'(x), x in [0, 1].
  static double unit_value(double x, int order);
  static double unit_derivative(double x, int order);

 private:
  double lo_;
  double hi_;
  int order_;
};

/// The boundary-family parameter f(t) >= 1 of the fixed-volume collar:
///   1 + eps^-3 t                on [0, ramp_end)
///   C^2 quintic Hermite blend   on [ramp_end, plateau_start]
///   1                           on [plateau_start, inf)
/// The blend matches value, slope and curvature of the ramp at ramp_end and
/// of the constant at plateau_start; it stays >= 1 (it is 1 plus a sum of
/// nonnegative Hermite basis terms).
class BleeckerRamp {
 public:
  explicit BleeckerRamp(double epsilon, double ramp_end = 1.0, double plateau_start = 2.0);

  double epsilon() const { return epsilon_; }
  double ramp_end() const { return ramp_end_; }
  double plateau_start() const { return plateau_start_; }
  double slope() const { return slope_; }

  double value(double t) const;
  double derivative(double t) const;

 private:
  double epsilon_;
  double ramp_end_;
  double plateau_start_;
  double slope_;  // eps^-3
};

/// Conformal exponent that is 0 on [0, flat_width] and rises monotonically to
/// `amplitude` at rise_end, constant afterwards.
class ConformalStep {
 public:
  /// Without an explicit amplitude the plateau height is -2 log(epsilon).
  ConformalStep(double epsilon, double flat_width, double rise_end,
                std::optional<double> amplitude = std::nullopt);

  double epsilon() const { return epsilon_; }
  double flat_width() const { return step_.lo(); }
  double rise_end() const { return step_.hi(); }
  double amplitude() const { return amplitude_; }

  double value(double t) const;
  double derivative(double t) const;

 private:
  double epsilon_;
  double amplitude_;
  SmoothStep step_;
};

/// Compactly supported conformal exponent: 0 on [0, flat_width], rises to
/// `amplitude` on [flat_width, rise_end], plateau until plateau_end, falls back
/// to 0 on [plateau_end, support_end], 0 afterwards.
class ConformalBump {
 public:
  ConformalBump(double epsilon, double flat_width, double rise_end, double plateau_end,
                double support_end, std::optional<double> amplitude = std::nullopt);

  double epsilon() const { return epsilon_; }
  double flat_width() const { return up_.lo(); }
  double rise_end() const { return up_.hi(); }
  double plateau_end() const { return down_.lo(); }
  double support_end() const { return down_.hi(); }
  double amplitude() const { return amplitude_; }

  double value(double t) const;
  double derivative(double t) const;

 private:
  double epsilon_;
  double amplitude_;
  SmoothStep up_;
  SmoothStep down_;
};

using Profile = std::variant<SmoothStep, BleeckerRamp, ConformalStep, ConformalBump>;

double eval(const Profile& profile, double t);
double eval_derivative(const Profile& profile, double t);

/// Points where the profile switches closed-form piece.
std::vector<double> knots(const Profile& profile);

/// Exact infimum / supremum over t >= 0.
double min_value(const Profile& profile);
double max_value(const Profile& profile);

std::string kind_name(const Profile& profile);

}  // namespace steklov
