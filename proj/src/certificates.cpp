#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"

namespace steklov::experiments {

using nlohmann::json;

std::string certificate_kind_name(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::FixedVolumeLowerBound: return "fixed_volume_lower";
    case CertificateKind::MixedLowerBound: return "mixed_lower";
    case CertificateKind::ComponentUpperBound: return "component_upper";
    default: return "none";
  }
}

CertificateKind certificate_kind_from_name(const std::string& name) {
  if (name == "fixed_volume_lower" || name == "fixed_volume") return CertificateKind::FixedVolumeLowerBound;
  if (name == "mixed_lower" || name == "mixed") return CertificateKind::MixedLowerBound;
  if (name == "component_upper") return CertificateKind::ComponentUpperBound;
  if (name == "none") return CertificateKind::None;
  throw ConfigError("unknown certificate kind '" + name + "'");
}

bool Certificate::is_lower_bound() const {
  return kind == CertificateKind::FixedVolumeLowerBound || kind == CertificateKind::MixedLowerBound;
}

std::string Certificate::to_json() const {
  json j;
  j["kind"] = certificate_kind_name(kind);
  j["epsilon"] = epsilon;
  j["A"] = A;
  j["B"] = B;
  j["C"] = C;
  j["divisor"] = divisor;
  j["bound"] = bound;
  j["inputs"] = inputs;
  j["component_volumes"] = component_volumes;
  j["component_energies"] = component_energies;
  return j.dump(2);
}

Certificate Certificate::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Certificate c;
    c.kind = certificate_kind_from_name(j.at("kind").get<std::string>());
    c.epsilon = j.at("epsilon").get<double>();
    c.A = j.at("A").get<double>();
    c.B = j.at("B").get<double>();
    c.C = j.at("C").get<double>();
    c.divisor = j.at("divisor").get<int>();
    c.bound = j.at("bound").get<double>();
    c.inputs = j.at("inputs").get<std::map<std::string, double>>();
    c.component_volumes = j.at("component_volumes").get<std::vector<double>>();
    c.component_energies = j.at("component_energies").get<std::vector<double>>();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid certificate JSON: ") + e.what());
  }
}

Certificate certificate_fixed_volume(double epsilon, double delta_bleecker) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(delta_bleecker > 0.0)) throw DomainError("Bleecker constant delta must be > 0");
  Certificate c;
  c.kind = CertificateKind::FixedVolumeLowerBound;
  c.epsilon = epsilon;
  c.A = std::min(0.25, delta_bleecker / 8.0);
  c.C = c.A;
  c.bound = c.A / epsilon;
  c.inputs["delta"] = delta_bleecker;
  return c;
}

Certificate certificate_mixed(double epsilon, double lambda_next, int b, double collar_length,
                              double neumann_gap_value, const std::vector<double>& component_volumes) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(lambda_next > 0.0)) throw DomainError("lambda_next must be > 0");
  if (b < 1) throw DomainError("number of Steklov components b must be >= 1");
  if (!(collar_length > 0.0)) throw DomainError("collar length must be > 0");

  Certificate c;
  c.kind = CertificateKind::MixedLowerBound;
  c.epsilon = epsilon;
  c.A = 0.25 * std::min(lambda_next, 0.25);
  c.inputs["lambda_next"] = lambda_next;
  c.inputs["b"] = b;
  c.inputs["L"] = collar_length;
  c.C = c.A;
  if (b >= 2) {
    if (component_volumes.size() < static_cast<std::size_t>(b)) {
      std::ostringstream os;
      os << "mixed certificate with b = " << b << " needs " << b << " component volumes, got "
         << component_volumes.size();
      throw ConfigError(os.str());
    }
    if (!(neumann_gap_value > 0.0)) throw DomainError("Neumann gap must be > 0");
    const auto [lo, hi] = std::minmax_element(component_volumes.begin(), component_volumes.begin() + b);
    if (!(*lo > 0.0)) throw DomainError("component volumes must be > 0");
    const double bb = b;
    c.B = std::min(neumann_gap_value * bb * collar_length, 1.0 / (2.0 * bb)) / (32.0 * (bb - 1.0) * (bb - 1.0)) *
          (*lo / *hi);
    c.C = std::min(c.A, 0.5 * c.B);
    c.inputs["neumann_gap"] = neumann_gap_value;
    c.component_volumes.assign(component_volumes.begin(), component_volumes.begin() + b);
  }
  c.bound = c.C / epsilon;
  return c;
}

Certificate upper_bound_components(const CollarScenario& scenario, const std::vector<ComponentCutoff>& cutoffs) {
  validate(scenario);
  if (cutoffs.empty()) throw ConfigError("upper bound certificate needs at least one component cutoff");
  if (!std::holds_alternative<ConformalCylinder>(scenario.kind))
    throw ConfigError("component upper bounds are defined for conformal cylinders");
  const double L = scenario.length();
  const int n = scenario.family.dimension();

  double left_reach = -1.0;
  double right_reach = -1.0;
  for (const auto& c : cutoffs) {
    if (!(c.plateau_end > 0.0) || !(c.support_end > c.plateau_end))
      throw ConfigError("component cutoff needs 0 < plateau_end < support_end");
    double& reach = c.at_right_end ? right_reach : left_reach;
    if (reach >= 0.0) throw ConfigError("two cutoffs for the same boundary component");
    reach = std::min(c.support_end, L);
    if (c.at_right_end && !std::holds_alternative<SteklovEnd>(scenario.right_end()))
      throw ConfigError("right cutoff requires a Steklov boundary at t = L");
  }
  if (left_reach >= 0.0 && right_reach >= 0.0 && left_reach > L - right_reach)
    throw ConfigError("component cutoff neighborhoods overlap");

  using boost::math::quadrature::gauss_kronrod;
  Certificate cert;
  cert.kind = CertificateKind::ComponentUpperBound;
  for (const auto& c : cutoffs) {
    double energy = 0.0;
    double undeformed = 0.0;
    if (c.plateau_end < L) {
      const double h = std::min(c.support_end, L) - c.plateau_end;
      const double width = c.support_end - c.plateau_end;
      const auto position = [&](double x) { return c.at_right_end ? L - x : x; };
      // psi(t) = |Sigma|^{-1/2} (1 - S((x - plateau_end)/width)) in the distance x
      // from the component; |Sigma| cancels against the cross-section integral.
      const auto slope2 = [&](double x) {
        const double d = SmoothStep::unit_derivative((x - c.plateau_end) / width, 2) / width;
        return d * d;
      };
      const auto deformed = [&](double x) {
        return slope2(x) * std::exp((n - 1) * scenario.conformal_exponent(position(x)));
      };
      energy = gauss_kronrod<double, 61>::integrate(deformed, c.plateau_end, c.plateau_end + h, 15, 1e-14);
      undeformed = gauss_kronrod<double, 61>::integrate(slope2, c.plateau_end, c.plateau_end + h, 15, 1e-14);
      if (std::abs(energy - undeformed) > 1e-12 * std::max(1.0, undeformed))
        throw ConfigError("conformal deformation reaches the cutoff transition; the energy bound does not apply");
    }
    cert.component_energies.push_back(undeformed);
    cert.component_volumes.push_back(scenario.family.total_volume());
    cert.C = std::max(cert.C, undeformed);
  }
  cert.bound = cert.C;
  cert.inputs["b"] = static_cast<double>(cutoffs.size());
  cert.inputs["L"] = L;
  return cert;
}

}  // namespace steklov::experiments
