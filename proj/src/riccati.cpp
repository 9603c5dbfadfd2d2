// Dirichlet-to-Neumann values of the radial problem by Riccati integration.
//
// With s = L - t and R = -w a'/a the Neumann problem becomes
//   dR/ds = q - R^2 / w,   R(0) = 0,
// whose solution relaxes to sqrt(q w) instead of growing like exp(sqrt(q) t)
// as a(t) itself does. For a Dirichlet end R starts at +infinity, so we carry
// P = 1/R instead:
//   dP/ds = 1/w - q P^2,   P(0) = 0,
// which stays bounded by int 1/w. In both cases sigma = R(L) / m.

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "steklov/errors.hpp"
#include "internal.hpp"
#include "steklov/mode_solver.hpp"

namespace steklov {

namespace odeint = boost::numeric::odeint;

namespace {

using ScalarStepper =
    odeint::runge_kutta_dopri5<double, double, double, double, odeint::vector_space_algebra>;

struct Coefficients {
  const ReducedModeProblem& problem;

  void at(double t, double& w, double& q) const {
    w = problem.flux_weight(t);
    q = problem.potential(t);
    if (!std::isfinite(w) || !std::isfinite(q) || !(w > 0.0) || q < 0.0) {
      std::ostringstream os;
      os << "invalid radial coefficients at t = " << t << " (w = " << w << ", q = " << q << ")";
      throw NumericError(os.str());
    }
  }
};

std::vector<double> segment_points(const ReducedModeProblem& p) {
  // Knots in s = L - t, ascending, including both ends.
  std::vector<double> s{0.0, p.length};
  for (double b : p.breakpoints)
    if (b > 0.0 && b < p.length) s.push_back(p.length - b);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

namespace detail {

void check_radial_problem(const ReducedModeProblem& p) {
  if (!(p.length > 0.0) || !std::isfinite(p.length)) throw DomainError("radial problem length must be > 0");
  if (p.grid_size < kMinimumGridSize) {
    std::ostringstream os;
    os << "grid_size " << p.grid_size << " is below the minimum of " << kMinimumGridSize;
    throw DomainError(os.str());
  }
  if (!(p.left.boundary_mass > 0.0)) throw DomainError("Steklov boundary mass must be > 0");
  if (const auto* s = std::get_if<SteklovEnd>(&p.right); s && !(s->boundary_mass > 0.0))
    throw DomainError("Steklov boundary mass must be > 0");
  if (!p.flux_weight || !p.potential) throw ConfigError("radial problem coefficients are not set");
}

}  // namespace detail

double dtn_value(const ReducedModeProblem& problem) {
  detail::check_radial_problem(problem);
  const bool dirichlet = std::holds_alternative<DirichletEnd>(problem.right);
  if (!dirichlet && !std::holds_alternative<NeumannEnd>(problem.right))
    throw ConfigError("dtn_value needs a Neumann or Dirichlet right end; use mode_eigenvalues for Steklov");

  const double L = problem.length;
  const Coefficients coef{problem};
  const double max_dt = L / problem.grid_size;
  const double abs_tol = 1e-3 * problem.rel_tol;

  auto rhs = [&](const double& y, double& dyds, double s) {
    double w = 0.0;
    double q = 0.0;
    coef.at(std::max(0.0, L - s), w, q);
    dyds = dirichlet ? 1.0 / w - q * y * y : q - y * y / w;
  };

  double y = 0.0;
  const auto pts = segment_points(problem);
  try {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      auto stepper = odeint::make_controlled(abs_tol, problem.rel_tol, max_dt, ScalarStepper());
      const double dt0 = std::min(max_dt, 0.01 * (pts[i + 1] - pts[i]));
      odeint::integrate_adaptive(stepper, rhs, y, pts[i], pts[i + 1], dt0);
    }
  } catch (const odeint::step_adjustment_error& e) {
    throw NumericError(std::string("Riccati integration failed: ") + e.what());
  }

  double sigma = 0.0;
  if (dirichlet) {
    if (!(y > 0.0)) throw NumericError("Riccati integration produced a nonpositive inverse flux");
    sigma = 1.0 / y;
  } else {
    sigma = y;
  }
  sigma /= problem.left.boundary_mass;
  if (!std::isfinite(sigma) || sigma < 0.0) {
    std::ostringstream os;
    os << "Riccati integration produced sigma = " << sigma;
    throw NumericError(os.str());
  }
  return sigma;
}

}  // namespace steklov
