#include "steklov/boundary_modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

void check_budget(std::size_t count, std::size_t budget) {
  if (count > budget) {
    std::ostringstream os;
    os << "mode enumeration exceeds the mode budget of " << budget
       << " modes; lower the eigenvalue cap or raise the budget";
    throw ResourceError(os.str());
  }
}

void sort_and_number(std::vector<Mode>& modes) {
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.mu1 != b.mu1) return a.mu1 < b.mu1;
    return a.label < b.label;
  });
  for (std::size_t i = 0; i < modes.size(); ++i) modes[i].id = static_cast<int>(i);
}

// Smallest k >= 1 with k(k+2) >= x.
int berger_degree_at_least(double x) {
  if (x <= 3.0) return 1;
  int k = static_cast<int>(std::floor(std::sqrt(x + 1.0) - 1.0));
  while (static_cast<double>(k) * (k + 2) < x) ++k;
  while (k > 1 && static_cast<double>(k - 1) * (k + 1) >= x) --k;
  return k;
}

// Lower bound on inf_{t>=1} mu(t; k, m) over all m, increasing in k:
//   mu >= c t >= c >= 2k                     (c = k(k+2) - m^2 >= 2k)
//   m^2 <= k^2/2:  mu >= c >= k^2/2
//   m^2 >  k^2/2:  mu >= 3 2^(-2/3) c^(2/3) m^(2/3) >= 3 2^(-1/3) k^(4/3)
double berger_degree_floor(int k) {
  const double kd = k;
  const double am_gm = 3.0 * std::pow(2.0, -1.0 / 3.0) * std::pow(kd, 4.0 / 3.0);
  return std::max(2.0 * kd, std::min(0.5 * kd * kd, am_gm));
}

}  // namespace

std::string Mode::label_string() const {
  std::ostringstream os;
  if (family == FamilyKind::Circle) {
    os << "k=" << label.at(0);
    return os.str();
  }
  if (family == FamilyKind::BergerS3) {
    os << "k=" << label.at(0) << ";m=" << label.at(1);
    return os.str();
  }
  os << "j=(";
  for (std::size_t i = 0; i < label.size(); ++i) os << (i ? ";" : "") << label[i];
  os << ")";
  return os.str();
}

BoundaryModeFamily BoundaryModeFamily::circle(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("circle radius must be > 0");
  BoundaryModeFamily f;
  f.kind_ = FamilyKind::Circle;
  f.dimension_ = 1;
  f.radius_ = radius;
  f.total_volume_ = 2.0 * std::numbers::pi * radius;
  f.component_volumes_ = {f.total_volume_};
  return f;
}

BoundaryModeFamily BoundaryModeFamily::flat_torus(std::vector<double> edge_lengths) {
  if (edge_lengths.empty()) throw ConfigError("flat torus needs at least one edge length");
  double vol = 1.0;
  for (double a : edge_lengths) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("torus edge lengths must be > 0");
    vol *= a;
  }
  BoundaryModeFamily f;
  f.kind_ = FamilyKind::FlatTorus;
  f.dimension_ = static_cast<int>(edge_lengths.size());
  f.edges_ = std::move(edge_lengths);
  f.total_volume_ = vol;
  f.component_volumes_ = {vol};
  return f;
}

BoundaryModeFamily BoundaryModeFamily::berger_s3() {
  BoundaryModeFamily f;
  f.kind_ = FamilyKind::BergerS3;
  f.dimension_ = 3;
  f.total_volume_ = 2.0 * std::numbers::pi * std::numbers::pi;
  f.component_volumes_ = {f.total_volume_};
  return f;
}

std::string BoundaryModeFamily::kind_name() const {
  switch (kind_) {
    case FamilyKind::Circle: return "circle";
    case FamilyKind::FlatTorus: return "flat_torus";
    case FamilyKind::BergerS3: return "berger_s3";
  }
  return "unknown";
}

std::vector<Mode> BoundaryModeFamily::enumerate_modes(double cap, std::size_t budget) const {
  if (!(cap > 0.0) || !std::isfinite(cap)) throw DomainError("mode cap must be finite and > 0");
  std::vector<Mode> modes;

  switch (kind_) {
    case FamilyKind::Circle: {
      const double r = radius_;
      for (int k = 0;; ++k) {
        const double mu = (k / r) * (k / r);
        if (mu > cap) break;
        Mode m;
        m.family = kind_;
        m.label = {k};
        m.multiplicity = k == 0 ? 1 : 2;
        m.mu1 = mu;
        m.eigenvalue_fn = [mu](double) { return mu; };
        modes.push_back(std::move(m));
        check_budget(modes.size(), budget);
      }
      break;
    }
    case FamilyKind::FlatTorus: {
      const int d = dimension_;
      std::vector<int> bound(d);
      for (int i = 0; i < d; ++i)
        bound[i] = static_cast<int>(std::floor(edges_[i] * std::sqrt(cap) / (2.0 * std::numbers::pi)));
      std::vector<int> j(d);
      for (int i = 0; i < d; ++i) j[i] = -bound[i];
      while (true) {
        double mu = 0.0;
        for (int i = 0; i < d; ++i) {
          const double w = 2.0 * std::numbers::pi * j[i] / edges_[i];
          mu += w * w;
        }
        if (mu <= cap) {
          Mode m;
          m.family = kind_;
          m.label = j;
          m.mu1 = mu;
          m.eigenvalue_fn = [mu](double) { return mu; };
          modes.push_back(std::move(m));
          check_budget(modes.size(), budget);
        }
        int i = 0;
        while (i < d && j[i] == bound[i]) {
          j[i] = -bound[i];
          ++i;
        }
        if (i == d) break;
        ++j[i];
      }
      break;
    }
    case FamilyKind::BergerS3: {
      for (int k = 0; static_cast<double>(k) * (k + 2) <= cap; ++k) {
        for (int m = -k; m <= k; m += 2) {
          Mode mode;
          mode.family = kind_;
          mode.label = {k, m};
          mode.multiplicity = k + 1;
          mode.mu1 = static_cast<double>(k) * (k + 2);
          mode.eigenvalue_fn = [k, m](double t) { return berger_mu(k, m, t); };
          modes.push_back(std::move(mode));
          check_budget(modes.size(), budget);
        }
      }
      break;
    }
  }
  sort_and_number(modes);
  return modes;
}

double BoundaryModeFamily::mode_infimum(const Mode& mode) const {
  if (kind_ != FamilyKind::BergerS3) return mode.mu1;
  const int k = mode.label.at(0);
  const int m = mode.label.at(1);
  if (m == 0) return mode.mu1;
  const double c = static_cast<double>(k) * (k + 2) - static_cast<double>(m) * m;
  const double t_star = std::cbrt(2.0 * m * m / c);
  if (t_star <= 1.0) return mode.mu1;
  return berger_mu(k, m, t_star);
}

double BoundaryModeFamily::floor_above(double threshold) const {
  if (threshold <= 0.0) return 0.0;
  if (kind_ != FamilyKind::BergerS3) return threshold;
  return berger_degree_floor(berger_degree_at_least(threshold));
}

// ---------------------------------------------------------------------------

double berger_mu(int k, int m, double t) {
  if (k < 0 || std::abs(m) > k || (k - m) % 2 != 0) {
    std::ostringstream os;
    os << "invalid Berger mode (k=" << k << ", m=" << m << "): need |m| <= k and k - m even";
    throw DomainError(os.str());
  }
  if (!(t > 0.0)) throw DomainError("Berger family parameter t must be > 0");
  const double m2 = static_cast<double>(m) * m;
  return t * (static_cast<double>(k) * (k + 2) - m2) + m2 / (t * t);
}

double lambda2_bleecker(double t) {
  if (!(t >= 1.0) || !std::isfinite(t)) throw DomainError("lambda2_bleecker requires t >= 1");
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1;; ++k) {
    // Every mode of degree >= k satisfies mu >= 2 k t at t >= 1.
    if (2.0 * k * t > best) break;
    for (int m = -k; m <= k; m += 2) best = std::min(best, berger_mu(k, m, t));
  }
  return best;
}

std::string berger_oracle_csv(const std::vector<BergerOracleRow>& rows) {
  std::ostringstream os;
  os << "k,m,multiplicity,mu1\n";
  for (const auto& r : rows) os << r.k << ',' << r.m << ',' << r.multiplicity << ',' << r.mu1 << '\n';
  return os.str();
}

}  // namespace steklov
