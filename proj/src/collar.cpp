#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/mode_solver.hpp"

namespace steklov {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Modes with identical radial problems share a key: (mu1, |m|) for Berger
// modes, mu1 for the t-independent families.
std::pair<double, int> radial_key(const Mode& mode) {
  if (mode.family == FamilyKind::BergerS3) return {mode.mu1, std::abs(mode.label.at(1))};
  return {mode.mu1, 0};
}

// Lower bounds used by the certificates: w >= w_floor and, for every mode,
// q >= q_scale * (lower bound on the cross-section eigenvalue).
struct CoefficientFloors {
  double w_floor = 1.0;
  double q_scale = 1.0;
};

CoefficientFloors coefficient_floors(const CollarScenario& s) {
  return std::visit(overloaded{
                        [](const BleeckerCollar&) { return CoefficientFloors{1.0, 1.0}; },
                        [&](const ConformalCylinder& c) {
                          const double lowest = min_value(c.delta) * (c.mirrored ? 2.0 : 1.0);
                          const double e = std::exp((s.ambient_dim() - 2) * lowest);
                          return CoefficientFloors{e, e};
                        },
                    },
                    s.kind);
}

double integrate_segments(const std::function<double(double)>& f, std::vector<double> pts) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 15, 1e-15);
  return total;
}

std::vector<double> with_ends(std::vector<double> interior, double a, double b) {
  interior.push_back(a);
  interior.push_back(b);
  std::vector<double> pts;
  for (double x : interior)
    if (x >= a && x <= b) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::string end_condition_name(const EndCondition& end) {
  return std::visit(overloaded{
                        [](const NeumannEnd&) { return std::string("neumann"); },
                        [](const DirichletEnd&) { return std::string("dirichlet"); },
                        [](const SteklovEnd&) { return std::string("steklov"); },
                    },
                    end);
}

double CollarScenario::length() const {
  return std::visit([](const auto& k) { return k.length; }, kind);
}

const EndCondition& CollarScenario::right_end() const {
  return std::visit([](const auto& k) -> const EndCondition& { return k.right_end; }, kind);
}

double CollarScenario::conformal_exponent(double t) const {
  const auto* c = std::get_if<ConformalCylinder>(&kind);
  if (!c) return 0.0;
  double d = eval(c->delta, std::max(0.0, t));
  if (c->mirrored) d += eval(c->delta, std::max(0.0, c->length - t));
  return d;
}

std::vector<double> CollarScenario::breakpoints() const {
  const double L = length();
  std::vector<double> out;
  std::visit(overloaded{
                 [&](const BleeckerCollar& b) {
                   out = {b.ramp.ramp_end(), b.ramp.plateau_start()};
                 },
                 [&](const ConformalCylinder& c) {
                   for (double k : knots(c.delta)) {
                     out.push_back(k);
                     if (c.mirrored) out.push_back(L - k);
                   }
                 },
             },
             kind);
  std::vector<double> inside;
  for (double x : out)
    if (x > 0.0 && x < L) inside.push_back(x);
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  return inside;
}

void validate(const CollarScenario& s) {
  const double L = s.length();
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("collar length must be > 0");
  if (!(s.mode_cap > 0.0)) throw ConfigError("mode_cap must be > 0");
  if (s.grid_size < kMinimumGridSize) throw ConfigError("grid_size below minimum");
  if (const auto* st = std::get_if<SteklovEnd>(&s.right_end()); st && !(st->boundary_mass > 0.0))
    throw ConfigError("Steklov boundary mass must be > 0");

  std::visit(overloaded{
                 [&](const BleeckerCollar&) {
                   if (!s.family.t_dependent())
                     throw ConfigError("a Bleecker collar needs a family with t-dependent eigenvalues (berger_s3)");
                 },
                 [&](const ConformalCylinder& c) {
                   if (s.family.t_dependent())
                     throw ConfigError("a conformal cylinder needs a t-independent cross-section family");
                   if (std::holds_alternative<BleeckerRamp>(c.delta))
                     throw ConfigError("a Bleecker ramp is not a conformal exponent");
                   if (c.ambient_dim && *c.ambient_dim != s.ambient_dim()) {
                     std::ostringstream os;
                     os << "ambient_dim " << *c.ambient_dim << " does not match the cross-section (dim "
                        << s.family.dimension() << " + 1)";
                     throw ConfigError(os.str());
                   }
                   if (s.conformal_exponent(0.0) != 0.0)
                     throw ConfigError("conformal exponent must vanish on the Steklov boundary t = 0");
                   if (std::holds_alternative<SteklovEnd>(c.right_end) && s.conformal_exponent(L) != 0.0)
                     throw ConfigError("conformal exponent must vanish on the Steklov boundary t = L");
                 },
             },
             s.kind);
}

ReducedModeProblem reduce(const CollarScenario& scenario, const Mode& mode) {
  validate(scenario);
  if (mode.family != scenario.family.kind())
    throw ConfigError("mode " + mode.label_string() + " does not belong to the scenario family " +
                      scenario.family.kind_name());

  ReducedModeProblem p;
  p.length = scenario.length();
  p.right = scenario.right_end();
  p.grid_size = scenario.grid_size;
  p.breakpoints = scenario.breakpoints();

  std::visit(overloaded{
                 [&](const BleeckerCollar& b) {
                   p.flux_weight = [](double) { return 1.0; };
                   if (mode.is_zero_mode()) {
                     p.potential = [](double) { return 0.0; };
                   } else {
                     p.potential = [ramp = b.ramp, mu = mode.eigenvalue_fn](double t) {
                       return mu(ramp.value(t));
                     };
                   }
                 },
                 [&](const ConformalCylinder&) {
                   const int weight_exponent = scenario.ambient_dim() - 2;  // n - 1
                   const double lambda = mode.mu1;
                   if (weight_exponent == 0) {
                     p.flux_weight = [](double) { return 1.0; };
                     p.potential = [lambda](double) { return lambda; };
                   } else {
                     auto w = [scenario, weight_exponent](double t) {
                       return std::exp(weight_exponent * scenario.conformal_exponent(t));
                     };
                     p.flux_weight = w;
                     p.potential = [w, lambda](double t) { return lambda * w(t); };
                   }
                 },
             },
             scenario.kind);
  return p;
}

std::vector<double> SteklovSpectrum::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.sigma);
  return v;
}

SteklovSpectrum steklov_spectrum(const CollarScenario& scenario, int count) {
  if (count < 1) throw DomainError("steklov_spectrum needs count >= 1");
  validate(scenario);

  const auto modes = scenario.family.enumerate_modes(scenario.mode_cap, scenario.mode_budget);
  const auto floors = coefficient_floors(scenario);
  const double L = scenario.length();
  const EndCondition& right = scenario.right_end();
  const bool two_point = std::holds_alternative<SteklovEnd>(right);
  const SteklovEnd left{};

  const auto certified_floor = [&](double mu_floor) {
    return constant_coefficient_floor(floors.w_floor, floors.q_scale * mu_floor, L, left, right);
  };

  SteklovSpectrum out;
  std::multiset<double> smallest;  // only the `count` smallest values are kept
  std::map<std::pair<double, int>, std::array<double, 2>> cache;
  bool certified = false;

  for (const Mode& mode : modes) {
    const double bound = certified_floor(scenario.family.floor_above(mode.mu1));
    if (static_cast<int>(smallest.size()) >= count && bound > *smallest.rbegin()) {
      out.truncation_bound = bound;
      certified = true;
      break;
    }

    const auto key = radial_key(mode);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const ReducedModeProblem problem = reduce(scenario, mode);
      std::array<double, 2> values{};
      if (two_point) {
        values = mode_eigenvalues(problem);
      } else {
        values = {dtn_value(problem), std::numeric_limits<double>::infinity()};
      }
      it = cache.emplace(key, values).first;
      ++out.modes_solved;
    }

    const int branches = two_point ? 2 : 1;
    for (int br = 0; br < branches; ++br) {
      for (int slot = 0; slot < mode.multiplicity; ++slot) {
        const double sigma = it->second[br];
        out.entries.push_back({sigma, mode.id, mode.label_string(), slot, br});
        smallest.insert(sigma);
        if (static_cast<int>(smallest.size()) > count) smallest.erase(std::prev(smallest.end()));
      }
    }
  }

  if (!certified) {
    out.truncation_bound = certified_floor(scenario.family.floor_above(scenario.mode_cap));
    if (static_cast<int>(smallest.size()) < count || !(*smallest.rbegin() < out.truncation_bound)) {
      std::ostringstream os;
      os << "mode cap " << scenario.mode_cap << " is too small to certify the " << count
         << " smallest eigenvalues (omitted modes only bounded below by " << out.truncation_bound
         << "); increase mode_cap";
      throw ResourceError(os.str());
    }
  }

  std::sort(out.entries.begin(), out.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    if (a.mode_id != b.mode_id) return a.mode_id < b.mode_id;
    if (a.branch != b.branch) return a.branch < b.branch;
    return a.multiplicity_slot < b.multiplicity_slot;
  });
  out.entries.resize(count);
  return out;
}

std::string spectrum_csv(const SteklovSpectrum& spectrum) {
  std::ostringstream os;
  os << "index,sigma,mode_label,multiplicity_slot,truncation_bound\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", spectrum.truncation_bound);
  const std::string bound = buf;
  for (std::size_t i = 0; i < spectrum.entries.size(); ++i) {
    const auto& e = spectrum.entries[i];
    std::snprintf(buf, sizeof buf, "%.12e", e.sigma);
    os << (i + 1) << ',' << buf << ',' << e.mode_label << ',' << e.multiplicity_slot << ',' << bound << '\n';
  }
  return os.str();
}

double neumann_gap(const CollarScenario& scenario, double t0, double t1, bool include_cross_modes) {
  validate(scenario);
  const double L = scenario.length();
  if (!(t0 >= 0.0) || !(t1 <= L) || !(t1 - t0 > 1e-12 * L))
    throw DomainError("neumann_gap needs 0 <= t0 < t1 <= L");

  SturmLiouvilleNeumann base;
  base.t0 = t0;
  base.t1 = t1;
  base.grid_size = scenario.grid_size;

  const int n = scenario.family.dimension();
  double ratio_floor = 1.0;  // inf over [t0,t1] of q / (rho * lambda)
  std::function<double(double)> weight;
  std::function<double(double)> density;
  if (std::holds_alternative<BleeckerCollar>(scenario.kind)) {
    weight = [](double) { return 1.0; };
    density = [](double) { return 1.0; };
  } else {
    const auto& c = std::get<ConformalCylinder>(scenario.kind);
    weight = [scenario, n](double t) { return std::exp((n - 1) * scenario.conformal_exponent(t)); };
    density = [scenario, n](double t) { return std::exp((n + 1) * scenario.conformal_exponent(t)); };
    ratio_floor = std::exp(-2.0 * max_value(c.delta) * (c.mirrored ? 2.0 : 1.0));
  }
  base.flux_weight = weight;
  base.density = density;

  SturmLiouvilleNeumann axial = base;
  axial.potential = [](double) { return 0.0; };
  double best = neumann_eigenvalue(axial, 1);
  if (!include_cross_modes) return best;

  std::set<std::pair<double, int>> seen;
  for (double cap = scenario.mode_cap;; cap *= 2.0) {
    const auto modes = scenario.family.enumerate_modes(cap, scenario.mode_budget);
    for (const Mode& mode : modes) {
      if (mode.is_zero_mode()) continue;
      if (scenario.family.floor_above(mode.mu1) * ratio_floor >= best) return best;
      if (!seen.insert(radial_key(mode)).second) continue;
      const ReducedModeProblem reduced = reduce(scenario, mode);
      SturmLiouvilleNeumann cross = base;
      cross.potential = reduced.potential;
      best = std::min(best, neumann_eigenvalue(cross, 0));
    }
    if (scenario.family.floor_above(cap) * ratio_floor >= best) return best;
  }
}

double collar_volume(const CollarScenario& scenario) {
  validate(scenario);
  const double L = scenario.length();
  const auto pts = with_ends(scenario.breakpoints(), 0.0, L);
  const double sigma_volume = scenario.family.total_volume();
  return std::visit(
      overloaded{
          [&](const BleeckerCollar& b) {
            // The family parameter s scales the horizontal directions by s^-1
            // (dimension h = dim Sigma - 1) and the Hopf fibre by s^h; the
            // volume density is the square root of the determinant ratio.
            const int h = scenario.family.dimension() - 1;
            auto density = [&](double t) {
              const double s = b.ramp.value(t);
              return std::sqrt(std::pow(1.0 / s, h) * std::pow(s, h));
            };
            return sigma_volume * integrate_segments(density, pts);
          },
          [&](const ConformalCylinder&) {
            const int dim = scenario.ambient_dim();
            auto density = [&](double t) { return std::exp(dim * scenario.conformal_exponent(t)); };
            return sigma_volume * integrate_segments(density, pts);
          },
      },
      scenario.kind);
}

}  // namespace steklov
