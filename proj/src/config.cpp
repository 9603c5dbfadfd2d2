#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"

namespace steklov::experiments {

using nlohmann::json;

namespace {

const std::map<std::string, std::set<std::string>>& profile_parameters() {
  static const std::map<std::string, std::set<std::string>> table{
      {"smooth_step", {"lo", "hi", "order"}},
      {"bleecker_ramp", {"ramp_end", "plateau_start"}},
      {"conformal_step", {"flat_width", "rise_end", "amplitude"}},
      {"conformal_bump", {"flat_width", "rise_end", "plateau_end", "support_end", "amplitude"}},
  };
  return table;
}

ParamExpr parse_param(const json& j, const std::string& name) {
  if (j.is_number()) return ParamExpr::constant(j.get<double>());
  if (j.is_string() && j.get<std::string>() == "epsilon") return ParamExpr::epsilon_power(1.0, 1.0);
  if (j.is_object()) {
    for (const auto& [key, _] : j.items())
      if (key != "offset" && key != "coef" && key != "power")
        throw ConfigError("parameter '" + name + "': unknown field '" + key + "'");
    return {j.value("offset", 0.0), j.value("coef", 1.0), j.value("power", 1.0)};
  }
  throw ConfigError("parameter '" + name + "' must be a number, \"epsilon\" or {offset, coef, power}");
}

json param_json(const ParamExpr& p) {
  if (p.coef == 0.0) return p.offset;
  if (p.offset == 0.0 && p.coef == 1.0 && p.power == 1.0) return "epsilon";
  return json{{"offset", p.offset}, {"coef", p.coef}, {"power", p.power}};
}

EndCondition end_condition(const std::string& name) {
  if (name == "neumann") return NeumannEnd{};
  if (name == "dirichlet") return DirichletEnd{};
  if (name == "steklov") return SteklovEnd{};
  throw ConfigError("unknown right_end '" + name + "' (neumann, dirichlet, steklov)");
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : j.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError("unknown field '" + key + "' in " + where);
}

}  // namespace

double ParamExpr::at(double epsilon) const {
  return coef == 0.0 ? offset : offset + coef * std::pow(epsilon, power);
}

Profile ProfileSpec::build(double epsilon) const {
  const auto it = profile_parameters().find(kind);
  if (it == profile_parameters().end()) throw ConfigError("unknown profile kind '" + kind + "'");
  for (const auto& [name, _] : params)
    if (!it->second.count(name)) throw ConfigError("profile " + kind + " has no parameter '" + name + "'");
  const auto need = [&](const std::string& name) {
    const auto p = params.find(name);
    if (p == params.end()) throw ConfigError("profile " + kind + " needs parameter '" + name + "'");
    return p->second.at(epsilon);
  };
  const auto opt = [&](const std::string& name) -> std::optional<double> {
    const auto p = params.find(name);
    if (p == params.end()) return std::nullopt;
    return p->second.at(epsilon);
  };
  if (kind == "smooth_step") {
    const auto order = opt("order");
    return SmoothStep(need("lo"), need("hi"), order ? static_cast<int>(std::lround(*order)) : 2);
  }
  if (kind == "bleecker_ramp") return BleeckerRamp(epsilon, opt("ramp_end").value_or(1.0), opt("plateau_start").value_or(2.0));
  if (kind == "conformal_step") return ConformalStep(epsilon, need("flat_width"), need("rise_end"), opt("amplitude"));
  return ConformalBump(epsilon, need("flat_width"), need("rise_end"), need("plateau_end"), need("support_end"),
                       opt("amplitude"));
}

BoundaryModeFamily FamilySpec::build() const {
  if (kind == "circle") return BoundaryModeFamily::circle(radius);
  if (kind == "flat_torus") return BoundaryModeFamily::flat_torus(edges);
  if (kind == "berger_s3") return BoundaryModeFamily::berger_s3();
  throw ConfigError("unknown family kind '" + kind + "' (circle, flat_torus, berger_s3)");
}

CollarScenario ScenarioConfig::scenario(double epsilon) const {
  CollarScenario s{family.build(), BleeckerCollar{BleeckerRamp(0.5)}};
  s.mode_cap = mode_cap;
  s.grid_size = grid_size;
  const Profile p = profile.build(epsilon);
  if (collar == "bleecker") {
    const auto* ramp = std::get_if<BleeckerRamp>(&p);
    if (!ramp) throw ConfigError("a bleecker collar needs a bleecker_ramp profile");
    s.kind = BleeckerCollar{*ramp, length, end_condition(right_end)};
  } else if (collar == "conformal") {
    s.kind = ConformalCylinder{p, length, end_condition(right_end), mirrored, ambient_dim};
  } else {
    throw ConfigError("unknown collar '" + collar + "' (bleecker, conformal)");
  }
  return s;
}

void validate(const ScenarioConfig& c) {
  if (c.name.empty()) throw ConfigError("scenario name is empty");
  if (c.experiment == "quasi_isometry") {
    const auto& q = c.quasi_isometry;
    if (q.trials < 1 || q.k < 2 || q.refinement < 1 || !(q.max_ratio >= 1.0))
      throw ConfigError("quasi_isometry needs trials >= 1, k >= 2, refinement >= 1, max_ratio >= 1");
    return;
  }
  if (c.experiment != "collar") throw ConfigError("unknown experiment '" + c.experiment + "'");
  if (c.solver != "mode" && c.solver != "fem") throw ConfigError("solver must be 'mode' or 'fem'");
  if (c.sweep.empty()) throw ConfigError("sweep list is empty");
  for (std::size_t i = 0; i < c.sweep.size(); ++i) {
    if (!(c.sweep[i] > 0.0 && c.sweep[i] < 1.0)) throw ConfigError("sweep values must lie in (0, 1)");
    if (i > 0 && !(c.sweep[i] < c.sweep[i - 1])) throw ConfigError("sweep values must be strictly decreasing");
  }
  if (c.targets.empty()) throw ConfigError("no target eigenvalues requested");
  for (const auto& t : c.targets) {
    if (t.k < 2) throw ConfigError("target index k must be >= 2");
    const auto& cert = t.certificate;
    if (cert.kind == CertificateKind::MixedLowerBound && cert.b >= 2 && !cert.neumann_region)
      throw ConfigError("mixed certificate with b >= 2 needs a neumann_region");
    if (cert.kind == CertificateKind::ComponentUpperBound && cert.cutoffs.empty())
      throw ConfigError("component_upper certificate needs cutoffs");
  }
  if (c.solver == "fem") {
    if (c.family.kind != "circle" || c.collar != "conformal")
      throw ConfigError("the fem solver handles conformal cylinders over a circle");
    if (c.right_end == "dirichlet") throw ConfigError("the fem solver supports neumann and steklov ends");
  }
  for (double eps : c.sweep) validate(c.scenario(eps));
}

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scenario JSON: ") + e.what());
  }
  try {
    reject_unknown_keys(j,
                        {"name", "experiment", "solver", "geometry", "profile", "targets", "sweep", "mode_cap",
                         "grid_size", "quasi_isometry", "output"},
                        "scenario");
    ScenarioConfig c;
    c.name = get_or<std::string>(j, "name", c.name);
    c.experiment = get_or<std::string>(j, "experiment", c.experiment);
    c.solver = get_or<std::string>(j, "solver", c.solver);
    if (j.contains("geometry")) {
      const json& g = j.at("geometry");
      reject_unknown_keys(g, {"family", "collar", "length", "right_end", "mirrored", "ambient_dim", "fem"}, "geometry");
      if (g.contains("family")) {
        const json& f = g.at("family");
        c.family.kind = f.at("kind").get<std::string>();
        c.family.radius = get_or(f, "radius", 1.0);
        c.family.edges = get_or(f, "edges", std::vector<double>{});
      }
      c.collar = get_or<std::string>(g, "collar", c.collar);
      c.length = get_or(g, "length", c.length);
      c.right_end = get_or<std::string>(g, "right_end", c.right_end);
      c.mirrored = get_or(g, "mirrored", c.mirrored);
      if (g.contains("ambient_dim")) c.ambient_dim = g.at("ambient_dim").get<int>();
      if (g.contains("fem")) {
        c.fem_nx = get_or(g.at("fem"), "nx", c.fem_nx);
        c.fem_nt = get_or(g.at("fem"), "nt", c.fem_nt);
      }
    }
    if (j.contains("profile")) {
      const json& p = j.at("profile");
      c.profile.kind = p.at("kind").get<std::string>();
      for (const auto& [key, value] : p.items())
        if (key != "kind") c.profile.params[key] = parse_param(value, key);
    }
    if (j.contains("targets")) {
      for (const json& t : j.at("targets")) {
        reject_unknown_keys(t, {"k", "certificate"}, "target");
        TargetSpec target;
        target.k = t.at("k").get<int>();
        if (t.contains("certificate")) {
          const json& cj = t.at("certificate");
          auto& cert = target.certificate;
          cert.kind = certificate_kind_from_name(cj.at("kind").get<std::string>());
          cert.delta = get_or(cj, "delta", cert.delta);
          cert.lambda_next = get_or(cj, "lambda_next", cert.lambda_next);
          cert.b = get_or(cj, "b", cert.b);
          cert.divisor = get_or(cj, "divisor", cert.divisor);
          if (cj.contains("collar_length")) cert.collar_length = parse_param(cj.at("collar_length"), "collar_length");
          if (cj.contains("neumann_region")) {
            const auto r = cj.at("neumann_region").get<std::vector<double>>();
            if (r.size() != 2) throw ConfigError("neumann_region must be [t0, t1]");
            cert.neumann_region = std::make_pair(r[0], r[1]);
          }
          cert.component_volumes = get_or(cj, "component_volumes", std::vector<double>{});
          if (cj.contains("cutoffs")) {
            for (const json& cu : cj.at("cutoffs")) {
              const std::string side = get_or<std::string>(cu, "side", "left");
              if (side != "left" && side != "right") throw ConfigError("cutoff side must be left or right");
              cert.cutoffs.push_back(
                  {side == "right", cu.at("plateau_end").get<double>(), cu.at("support_end").get<double>()});
            }
          }
        }
        c.targets.push_back(target);
      }
    }
    c.sweep = get_or(j, "sweep", c.sweep);
    c.mode_cap = get_or(j, "mode_cap", c.mode_cap);
    c.grid_size = get_or(j, "grid_size", c.grid_size);
    if (j.contains("quasi_isometry")) {
      const json& q = j.at("quasi_isometry");
      c.quasi_isometry.trials = get_or(q, "trials", c.quasi_isometry.trials);
      c.quasi_isometry.refinement = get_or(q, "refinement", c.quasi_isometry.refinement);
      c.quasi_isometry.k = get_or(q, "k", c.quasi_isometry.k);
      c.quasi_isometry.seed = get_or(q, "seed", c.quasi_isometry.seed);
      c.quasi_isometry.max_ratio = get_or(q, "max_ratio", c.quasi_isometry.max_ratio);
    }
    if (j.contains("output")) {
      c.csv_path = get_or<std::string>(j.at("output"), "csv", "");
      c.svg_path = get_or<std::string>(j.at("output"), "svg", "");
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scenario field: ") + e.what());
  }
}

std::string ScenarioConfig::to_json() const {
  json j;
  j["name"] = name;
  j["experiment"] = experiment;
  j["solver"] = solver;
  json family_json{{"kind", family.kind}};
  if (family.kind == "circle") family_json["radius"] = family.radius;
  if (family.kind == "flat_torus") family_json["edges"] = family.edges;
  j["geometry"] = {{"family", family_json}, {"collar", collar},         {"length", length},
                   {"right_end", right_end}, {"mirrored", mirrored},    {"fem", {{"nx", fem_nx}, {"nt", fem_nt}}}};
  if (ambient_dim) j["geometry"]["ambient_dim"] = *ambient_dim;
  json pj{{"kind", profile.kind}};
  for (const auto& [key, value] : profile.params) pj[key] = param_json(value);
  j["profile"] = pj;
  j["targets"] = json::array();
  for (const auto& t : targets) {
    const auto& cert = t.certificate;
    json cj{{"kind", certificate_kind_name(cert.kind)}};
    switch (cert.kind) {
      case CertificateKind::FixedVolumeLowerBound: cj["delta"] = cert.delta; break;
      case CertificateKind::MixedLowerBound:
        cj["lambda_next"] = cert.lambda_next;
        cj["b"] = cert.b;
        cj["divisor"] = cert.divisor;
        cj["collar_length"] = param_json(cert.collar_length);
        if (cert.neumann_region) cj["neumann_region"] = {cert.neumann_region->first, cert.neumann_region->second};
        if (!cert.component_volumes.empty()) cj["component_volumes"] = cert.component_volumes;
        break;
      case CertificateKind::ComponentUpperBound:
        cj["cutoffs"] = json::array();
        for (const auto& cu : cert.cutoffs)
          cj["cutoffs"].push_back(
              {{"side", cu.at_right_end ? "right" : "left"}, {"plateau_end", cu.plateau_end}, {"support_end", cu.support_end}});
        break;
      default: break;
    }
    j["targets"].push_back({{"k", t.k}, {"certificate", cj}});
  }
  j["sweep"] = sweep;
  j["mode_cap"] = mode_cap;
  j["grid_size"] = grid_size;
  if (experiment == "quasi_isometry") {
    j["quasi_isometry"] = {{"trials", quasi_isometry.trials},
                           {"refinement", quasi_isometry.refinement},
                           {"k", quasi_isometry.k},
                           {"seed", quasi_isometry.seed},
                           {"max_ratio", quasi_isometry.max_ratio}};
  }
  if (!csv_path.empty() || !svg_path.empty()) j["output"] = {{"csv", csv_path}, {"svg", svg_path}};
  return j.dump(2);
}

}  // namespace steklov::experiments
