// P1 finite elements for the radial problems.
//
// Element matrices on a cell of width h with midpoint coefficients:
//   stiffness  w/h [[1,-1],[-1,1]]
//   mass       c h/12 [[5,1],[1,5]]   (average of consistent and lumped mass)
// The blended mass cancels the leading dispersion error for constant
// coefficients; with variable coefficients the midpoint rule makes the scheme
// second order. Steklov boundary masses are point masses at the end nodes.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "internal.hpp"
#include "steklov/errors.hpp"
#include "steklov/mode_solver.hpp"

namespace steklov {

namespace {

// Symmetric tridiagonal matrix: diag[0..n), off[i] couples i and i+1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

double checked(double v, double t, const char* what, bool strictly_positive) {
  const bool ok = std::isfinite(v) && (strictly_positive ? v > 0.0 : v >= 0.0);
  if (!ok) {
    std::ostringstream os;
    os << "invalid " << what << " coefficient " << v << " at t = " << t;
    throw NumericError(os.str());
  }
  return v;
}

// Assemble stiffness + potential mass (K) and, if density is set, the density
// mass (M) on a uniform grid of [t0, t1].
void assemble_radial(double t0, double t1, int cells, const std::function<double(double)>& w,
                     const std::function<double(double)>& q, const std::function<double(double)>* rho,
                     Tridiagonal& K, Tridiagonal* M) {
  const int n = cells + 1;
  const double h = (t1 - t0) / cells;
  K.diag.assign(n, 0.0);
  K.off.assign(n - 1, 0.0);
  if (M) {
    M->diag.assign(n, 0.0);
    M->off.assign(n - 1, 0.0);
  }
  for (int e = 0; e < cells; ++e) {
    const double mid = t0 + (e + 0.5) * h;
    const double ke = checked(w(mid), mid, "flux weight", true) / h;
    const double me = checked(q(mid), mid, "potential", false) * h / 12.0;
    K.diag[e] += ke + 5.0 * me;
    K.diag[e + 1] += ke + 5.0 * me;
    K.off[e] += -ke + me;
    if (M) {
      const double re = checked((*rho)(mid), mid, "density", true) * h / 12.0;
      M->diag[e] += 5.0 * re;
      M->diag[e + 1] += 5.0 * re;
      M->off[e] += re;
    }
  }
}

// Solve T x = b for the principal block rows/cols [first, last] of T.
std::vector<double> solve_block(const Tridiagonal& T, int first, int last, std::vector<double> b) {
  const int n = last - first + 1;
  std::vector<double> d(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = T.diag[first + i];
  // Forward elimination (LDL^T; the block is SPD).
  for (int i = 1; i < n; ++i) {
    const double l = T.off[first + i - 1] / d[i - 1];
    d[i] -= l * T.off[first + i - 1];
    b[i] -= l * b[i - 1];
  }
  for (int i = 0; i < n; ++i)
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) throw NumericError("radial interior block is not positive definite");
  std::vector<double> x(n);
  x[n - 1] = b[n - 1] / d[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = (b[i] - T.off[first + i] * x[i + 1]) / d[i];
  return x;
}

}  // namespace

ModeEigenpairs mode_eigenpairs(const ReducedModeProblem& problem) {
  detail::check_radial_problem(problem);
  const auto* right = std::get_if<SteklovEnd>(&problem.right);
  if (!right) throw ConfigError("mode_eigenvalues needs a Steklov right end; use dtn_value otherwise");

  const int cells = problem.grid_size;
  if (cells < 2) throw DomainError("two-point problem needs at least two cells");
  const int N = cells;  // last node index
  Tridiagonal K;
  assemble_radial(0.0, problem.length, cells, problem.flux_weight, problem.potential, nullptr, K, nullptr);

  // Condense onto the two end nodes: S = K_bb - K_bi K_ii^{-1} K_ib.
  const int interior = N - 1;
  std::vector<double> rhs0(interior, 0.0);
  std::vector<double> rhsN(interior, 0.0);
  rhs0.front() = K.off[0];
  rhsN.back() = K.off[N - 1];
  const auto x = solve_block(K, 1, N - 1, rhs0);
  const auto y = solve_block(K, 1, N - 1, rhsN);

  const double s00 = K.diag[0] - K.off[0] * x.front();
  const double sNN = K.diag[N] - K.off[N - 1] * y.back();
  const double s0N = 0.5 * (-K.off[0] * y.front() - K.off[N - 1] * x.back());

  const double m0 = problem.left.boundary_mass;
  const double mN = right->boundary_mass;
  const double a = s00 / m0;
  const double c = sNN / mN;
  const double b = s0N / std::sqrt(m0 * mN);

  const double mean = 0.5 * (a + c);
  const double radius = std::hypot(0.5 * (a - c), b);
  const double hi = mean + radius;
  double lo = mean - radius;
  if (hi > 0.0) lo = (a * c - b * b) / hi;
  lo = std::max(lo, 0.0);

  ModeEigenpairs out;
  out.values = {lo, hi};
  out.nodes.resize(N + 1);
  for (int i = 0; i <= N; ++i) out.nodes[i] = problem.length * i / N;

  for (int j = 0; j < 2; ++j) {
    const double lam = out.values[j];
    // Null vector of [[a-lam, b],[b, c-lam]], picking the better-conditioned row.
    double v0 = b;
    double v1 = lam - a;
    if (std::hypot(lam - c, b) > std::hypot(v0, v1)) {
      v0 = lam - c;
      v1 = b;
    }
    if (v0 == 0.0 && v1 == 0.0) {
      v0 = j == 0 ? 1.0 : 0.0;
      v1 = j == 0 ? 0.0 : 1.0;
    }
    const double norm = std::hypot(v0, v1);
    const double u0 = v0 / norm / std::sqrt(m0);
    const double uN = v1 / norm / std::sqrt(mN);
    std::vector<double> u(N + 1);
    u[0] = u0;
    u[N] = uN;
    for (int i = 1; i < N; ++i) u[i] = -(u0 * x[i - 1] + uN * y[i - 1]);
    out.vectors[j] = std::move(u);
  }
  return out;
}

std::array<double, 2> mode_eigenvalues(const ReducedModeProblem& problem) {
  // Richardson extrapolation over grid_size and grid_size / 2 cells removes
  // the h^2 term of the error expansion.
  const auto fine = mode_eigenpairs(problem).values;
  ReducedModeProblem half = problem;
  half.grid_size = problem.grid_size / 2;
  if (half.grid_size < kMinimumGridSize) return fine;
  const auto coarse = mode_eigenpairs(half).values;
  std::array<double, 2> out{};
  for (int j = 0; j < 2; ++j) out[j] = std::max(0.0, (4.0 * fine[j] - coarse[j]) / 3.0);
  if (out[0] > out[1]) std::swap(out[0], out[1]);
  return out;
}

double constant_coefficient_floor(double w0, double q0, double length, const SteklovEnd& left,
                                  const EndCondition& right) {
  if (!(w0 > 0.0) || q0 < 0.0 || !(length > 0.0)) throw DomainError("invalid constant coefficients");
  const double m0 = left.boundary_mass;
  const double kappa = std::sqrt(q0 / w0);
  const double kl = kappa * length;
  if (std::holds_alternative<NeumannEnd>(right)) {
    return q0 == 0.0 ? 0.0 : std::sqrt(q0 * w0) * std::tanh(kl) / m0;
  }
  if (std::holds_alternative<DirichletEnd>(right)) {
    return q0 == 0.0 ? w0 / (length * m0) : std::sqrt(q0 * w0) / std::tanh(kl) / m0;
  }
  // Two-point energy matrix w0 kappa [[coth, -csch], [-csch, coth]], or
  // (w0 / L) [[1, -1], [-1, 1]] when q0 = 0.
  const double mN = std::get<SteklovEnd>(right).boundary_mass;
  double diag = w0 / length;
  double off = -w0 / length;
  if (q0 > 0.0) {
    diag = w0 * kappa / std::tanh(kl);
    off = kl > 700.0 ? 0.0 : -w0 * kappa / std::sinh(kl);
  }
  const double a = diag / m0;
  const double c = diag / mN;
  const double b = off / std::sqrt(m0 * mN);
  const double hi = 0.5 * (a + c) + std::hypot(0.5 * (a - c), b);
  return hi > 0.0 ? std::max(0.0, (a * c - b * b) / hi) : 0.0;
}

double neumann_eigenvalue(const SturmLiouvilleNeumann& problem, int index) {
  if (!(problem.t1 > problem.t0)) throw DomainError("neumann eigenproblem needs t0 < t1");
  if (index < 0 || index > problem.grid_size) throw DomainError("neumann eigenvalue index out of range");
  if (problem.grid_size < kMinimumGridSize) throw DomainError("grid_size below minimum");
  Tridiagonal K;
  Tridiagonal M;
  assemble_radial(problem.t0, problem.t1, problem.grid_size, problem.flux_weight, problem.potential,
                  &problem.density, K, &M);

  // Number of eigenvalues of the pencil (K, M) below mu = negative pivots of K - mu M.
  const auto count_below = [&](double mu) {
    int negatives = 0;
    double pivot = 0.0;
    for (std::size_t i = 0; i < K.diag.size(); ++i) {
      const double d = K.diag[i] - mu * M.diag[i];
      if (i == 0) {
        pivot = d;
      } else {
        const double e = K.off[i - 1] - mu * M.off[i - 1];
        pivot = d - e * e / pivot;
      }
      if (pivot == 0.0) pivot = -1e-300;
      if (pivot < 0.0) ++negatives;
    }
    return negatives;
  };

  double lo = -1.0;
  double hi = 1.0;
  while (count_below(hi) <= index) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericError("neumann eigenvalue bracket diverged");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) <= index)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace steklov
