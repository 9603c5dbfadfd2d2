#include "steklov/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_nonnegative(double t) {
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "profile evaluated at t = " << t << " (must be >= 0)";
    throw DomainError(os.str());
  }
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
}

double resolve_amplitude(double epsilon, std::optional<double> amplitude) {
  double a = amplitude.value_or(-2.0 * std::log(epsilon));
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("conformal amplitude must be finite and >= 0");
  return a;
}

// Quintic Hermite basis on [0,1]: H0 carries the left value, H1 the left slope.
// Both vanish with two derivatives at s = 1; H0(0)=1, H1'(0)=1, all other
// left-end data zero.
double hermite_h0(double s) { return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s); }
double hermite_h0_prime(double s) { return -30.0 * s * s * (1.0 - s) * (1.0 - s); }
double hermite_h1(double s) {
  double u = 1.0 - s;
  return s * u * u * u * (1.0 + 3.0 * s);
}
double hermite_h1_prime(double s) {
  double u = 1.0 - s;
  return u * u * (1.0 + 2.0 * s - 15.0 * s * s);
}

}  // namespace

// ---------------------------------------------------------------------------

SmoothStep::SmoothStep(double lo, double hi, int order) : lo_(lo), hi_(hi), order_(order) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("smoothstep requires finite lo < hi");
  if (order < 2 || order > 12) throw DomainError("smoothstep order must be in [2, 12]");
}

double SmoothStep::unit_value(double x, int order) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const int n = order;
  double sum = 0.0;
  double power = 1.0;  // (-x)^j
  for (int j = 0; j <= n; ++j) {
    sum += binomial(n + j, j) * binomial(2 * n + 1, n - j) * power;
    power *= -x;
  }
  return std::pow(x, n + 1) * sum;
}

double SmoothStep::unit_derivative(double x, int order) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const int n = order;
  // (2n+1)! / (n!)^2
  double c = (2 * n + 1) * binomial(2 * n, n);
  return c * std::pow(x * (1.0 - x), n);
}

double SmoothStep::value(double t) const { return unit_value((t - lo_) / (hi_ - lo_), order_); }

double SmoothStep::derivative(double t) const {
  return unit_derivative((t - lo_) / (hi_ - lo_), order_) / (hi_ - lo_);
}

// ---------------------------------------------------------------------------

BleeckerRamp::BleeckerRamp(double epsilon, double ramp_end, double plateau_start)
    : epsilon_(epsilon), ramp_end_(ramp_end), plateau_start_(plateau_start) {
  require_epsilon(epsilon);
  if (!(ramp_end > 0.0) || !(plateau_start > ramp_end))
    throw DomainError("bleecker ramp requires 0 < ramp_end < plateau_start");
  slope_ = 1.0 / (epsilon * epsilon * epsilon);
}

double BleeckerRamp::value(double t) const {
  if (t < ramp_end_) return 1.0 + slope_ * t;
  if (t >= plateau_start_) return 1.0;
  const double h = plateau_start_ - ramp_end_;
  const double s = (t - ramp_end_) / h;
  return 1.0 + slope_ * (ramp_end_ * hermite_h0(s) + h * hermite_h1(s));
}

double BleeckerRamp::derivative(double t) const {
  if (t < ramp_end_) return slope_;
  if (t >= plateau_start_) return 0.0;
  const double h = plateau_start_ - ramp_end_;
  const double s = (t - ramp_end_) / h;
  return slope_ * (ramp_end_ * hermite_h0_prime(s) + h * hermite_h1_prime(s)) / h;
}

// ---------------------------------------------------------------------------

ConformalStep::ConformalStep(double epsilon, double flat_width, double rise_end,
                             std::optional<double> amplitude)
    : epsilon_(epsilon),
      amplitude_(0.0),
      step_((require_epsilon(epsilon), flat_width), rise_end, 2) {
  if (!(flat_width >= 0.0)) throw DomainError("conformal step flat_width must be >= 0");
  amplitude_ = resolve_amplitude(epsilon, amplitude);
}

double ConformalStep::value(double t) const { return amplitude_ * step_.value(t); }

double ConformalStep::derivative(double t) const { return amplitude_ * step_.derivative(t); }

// ---------------------------------------------------------------------------

ConformalBump::ConformalBump(double epsilon, double flat_width, double rise_end, double plateau_end,
                             double support_end, std::optional<double> amplitude)
    : epsilon_(epsilon),
      amplitude_(0.0),
      up_((require_epsilon(epsilon), flat_width), rise_end, 2),
      down_(plateau_end, support_end, 2) {
  if (!(flat_width >= 0.0)) throw DomainError("conformal bump flat_width must be >= 0");
  if (!(plateau_end >= rise_end)) throw DomainError("conformal bump requires rise_end <= plateau_end");
  amplitude_ = resolve_amplitude(epsilon, amplitude);
}

double ConformalBump::value(double t) const {
  if (t <= up_.hi()) return amplitude_ * up_.value(t);
  return amplitude_ * (1.0 - down_.value(t));
}

double ConformalBump::derivative(double t) const {
  if (t <= up_.hi()) return amplitude_ * up_.derivative(t);
  return -amplitude_ * down_.derivative(t);
}

// ---------------------------------------------------------------------------

double eval(const Profile& profile, double t) {
  require_nonnegative(t);
  return std::visit([t](const auto& p) { return p.value(t); }, profile);
}

double eval_derivative(const Profile& profile, double t) {
  require_nonnegative(t);
  return std::visit([t](const auto& p) { return p.derivative(t); }, profile);
}

namespace {

struct KnotsVisitor {
  std::vector<double> operator()(const SmoothStep& p) const { return {p.lo(), p.hi()}; }
  std::vector<double> operator()(const BleeckerRamp& p) const {
    return {p.ramp_end(), p.plateau_start()};
  }
  std::vector<double> operator()(const ConformalStep& p) const {
    return {p.flat_width(), p.rise_end()};
  }
  std::vector<double> operator()(const ConformalBump& p) const {
    return {p.flat_width(), p.rise_end(), p.plateau_end(), p.support_end()};
  }
};

struct RangeVisitor {
  bool want_max;

  double operator()(const SmoothStep& p) const { return want_max ? 1.0 : p.value(0.0); }
  double operator()(const BleeckerRamp& p) const {
    if (!want_max) return 1.0;
    // Interior critical point of the Hermite blend: (1-s)^2 [h(1+2s-15s^2) - 30 r s^2] = 0.
    const double r = p.ramp_end();
    const double h = p.plateau_start() - r;
    const double a = 15.0 * h + 30.0 * r;
    const double s = (2.0 * h + std::sqrt(4.0 * h * h + 4.0 * a * h)) / (2.0 * a);
    return p.value(r + s * h);
  }
  double operator()(const ConformalStep& p) const { return want_max ? p.amplitude() : 0.0; }
  double operator()(const ConformalBump& p) const { return want_max ? p.amplitude() : 0.0; }
};

}  // namespace

std::vector<double> knots(const Profile& profile) { return std::visit(KnotsVisitor{}, profile); }

double min_value(const Profile& profile) { return std::visit(RangeVisitor{false}, profile); }

double max_value(const Profile& profile) { return std::visit(RangeVisitor{true}, profile); }

std::string kind_name(const Profile& profile) {
  switch (profile.index()) {
    case 0: return "smooth_step";
    case 1: return "bleecker_ramp";
    case 2: return "conformal_step";
    default: return "conformal_bump";
  }
}

}  // namespace steklov
