#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"

namespace steklov::experiments {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

CollarScenario undeformed(const CollarScenario& s) {
  CollarScenario out = s;
  auto* c = std::get_if<ConformalCylinder>(&out.kind);
  if (!c) throw ConfigError("mixed certificates need a conformal cylinder");
  c->delta = ConformalStep(0.5, 0.0, 1.0, 0.0);
  c->mirrored = false;
  return out;
}

std::vector<double> fem_spectrum(const ScenarioConfig& config, const CollarScenario& scenario, int count) {
  fem::TriMesh mesh = fem::build_cylinder_mesh(config.family.radius, config.length, config.fem_nx, config.fem_nt);
  const bool mixed = config.right_end == "neumann";
  if (mixed) fem::set_boundary_role(mesh, 1, fem::BoundaryRole::Neumann);
  const auto metric = fem::MetricField::conformal(
      [scenario](const Eigen::Vector2d& p) { return std::exp(2.0 * scenario.conformal_exponent(p.y())); });
  const auto ops = fem::assemble(mesh, metric);
  return mixed ? fem::mixed_solve(ops, count) : fem::steklov_solve(ops, count);
}

Certificate make_certificate(const CertificateSpec& spec, const CollarScenario& scenario, double epsilon) {
  switch (spec.kind) {
    case CertificateKind::FixedVolumeLowerBound: return certificate_fixed_volume(epsilon, spec.delta);
    case CertificateKind::MixedLowerBound: {
      double gap = 0.0;
      if (spec.b >= 2)
        gap = neumann_gap(undeformed(scenario), spec.neumann_region->first, spec.neumann_region->second);
      std::vector<double> volumes = spec.component_volumes;
      if (volumes.empty()) volumes.assign(spec.b, scenario.family.total_volume());
      Certificate c = certificate_mixed(epsilon, spec.lambda_next, spec.b, spec.collar_length.at(epsilon), gap, volumes);
      if (spec.divisor < 1) throw ConfigError("certificate divisor must be >= 1");
      c.divisor = spec.divisor;
      c.bound = c.C / (c.divisor * epsilon);
      return c;
    }
    case CertificateKind::ComponentUpperBound: {
      Certificate c = upper_bound_components(scenario, spec.cutoffs);
      c.epsilon = epsilon;
      return c;
    }
    default: {
      Certificate c;
      c.epsilon = epsilon;
      return c;
    }
  }
}

}  // namespace

bool ResultRow::holds() const {
  switch (certificate_kind) {
    case CertificateKind::FixedVolumeLowerBound:
    case CertificateKind::MixedLowerBound: return sigma >= certificate_bound;
    case CertificateKind::ComponentUpperBound: return sigma <= certificate_bound;
    default: return true;
  }
}

std::vector<double> ResultTable::sigma_column(int k) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.k == k) out.push_back(r.sigma);
  return out;
}

ResultTable run_scenario(const ScenarioConfig& config, double epsilon) {
  if (config.experiment != "collar") throw ConfigError("run_scenario handles collar experiments");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (config.targets.empty()) throw ConfigError("no target eigenvalues requested");
  const auto start = std::chrono::steady_clock::now();

  const CollarScenario scenario = config.scenario(epsilon);
  validate(scenario);
  if (const auto* b = std::get_if<BleeckerCollar>(&scenario.kind)) {
    // The boundary metric is g_Sigma(f(0)) = g_Sigma(1) for every epsilon.
    if (b->ramp.value(0.0) != 1.0) throw NumericError("Bleecker ramp does not fix the boundary metric");
    if (b->ramp.slope() > 1e9)
      std::clog << "warning: epsilon^-3 = " << b->ramp.slope() << " exceeds 1e9; the radial problems are stiff\n";
  }

  int count = 0;
  for (const auto& t : config.targets) count = std::max(count, t.k);
  const std::vector<double> sigma =
      config.solver == "fem" ? fem_spectrum(config, scenario, count) : steklov_spectrum(scenario, count).values();
  const double volume = collar_volume(scenario);

  ResultTable table;
  table.name = config.name;
  for (const auto& t : config.targets) {
    ResultRow row;
    row.epsilon = epsilon;
    row.k = t.k;
    row.sigma = sigma.at(t.k - 1);
    row.certificate = make_certificate(t.certificate, scenario, epsilon);
    row.certificate_kind = row.certificate.kind;
    row.certificate_bound = row.certificate.bound;
    row.volume = volume;
    table.rows.push_back(row);
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : table.rows) r.runtime_ms = ms;
  return table;
}

ResultTable run_scenario(const ScenarioConfig& config) {
  validate(config);
  return run_scenario(config, config.sweep.front());
}

ResultTable sweep(const ScenarioConfig& config) {
  validate(config);
  ResultTable table;
  table.name = config.name;
  for (double eps : config.sweep) {
    auto part = run_scenario(config, eps);
    table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
  }
  return table;
}

std::string to_csv(const ResultTable& table, bool include_runtime) {
  std::ostringstream os;
  os << "epsilon,k,sigma_k,certificate_bound,certificate_kind,volume";
  if (include_runtime) os << ",runtime_ms";
  os << '\n';
  for (const auto& r : table.rows) {
    os << fmt(r.epsilon) << ',' << r.k << ',' << fmt(r.sigma) << ',' << fmt(r.certificate_bound) << ','
       << certificate_kind_name(r.certificate_kind) << ',' << fmt(r.volume);
    if (include_runtime) os << ',' << fmt(r.runtime_ms);
    os << '\n';
  }
  return os.str();
}

std::string to_svg(const ResultTable& table) {
  constexpr double W = 640, H = 420, left = 70, right = 150, top = 30, bottom = 50;
  std::vector<int> ks;
  double xmax = 0, ymax = 0;
  for (const auto& r : table.rows) {
    if (std::find(ks.begin(), ks.end(), r.k) == ks.end()) ks.push_back(r.k);
    xmax = std::max(xmax, 1.0 / r.epsilon);
    ymax = std::max({ymax, r.sigma, r.certificate_kind == CertificateKind::None ? 0.0 : r.certificate_bound});
  }
  if (xmax <= 0) xmax = 1;
  if (ymax <= 0) ymax = 1;
  ymax *= 1.05;
  const auto X = [&](double v) { return left + (W - left - right) * v / xmax; };
  const auto Y = [&](double v) { return H - bottom - (H - top - bottom) * v / ymax; };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left << "\" y=\"18\">" << table.name << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << Y(0) << "\" x2=\"" << X(xmax) << "\" y2=\"" << Y(0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << Y(0) << "\" x2=\"" << left << "\" y2=\"" << top << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmax * i / 4, yv = ymax * i / 4;
    os << "<text x=\"" << X(xv) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << Y(yv) + 4 << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">1/epsilon</text>\n";
  os << "<text x=\"16\" y=\"" << (top + H - bottom) / 2 << "\" transform=\"rotate(-90 16 " << (top + H - bottom) / 2 << ")\" text-anchor=\"middle\">sigma_k</text>\n";

  int legend = 0;
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    const char* color = colors[ki % 5];
    std::ostringstream pts, cert;
    bool has_cert = false;
    for (const auto& r : table.rows) {
      if (r.k != ks[ki]) continue;
      pts << X(1.0 / r.epsilon) << ',' << Y(r.sigma) << ' ';
      if (r.certificate_kind != CertificateKind::None) {
        has_cert = true;
        cert << X(1.0 / r.epsilon) << ',' << Y(r.certificate_bound) << ' ';
      }
    }
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
    os << "<text x=\"" << W - right + 10 << "\" y=\"" << top + 16 * legend++ << "\" fill=\"" << color << "\">sigma_" << ks[ki] << "</text>\n";
    if (has_cert) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-dasharray=\"6 4\" points=\"" << cert.str() << "\"/>\n";
      os << "<text x=\"" << W - right + 10 << "\" y=\"" << top + 16 * legend++ << "\" fill=\"" << color << "\">bound k=" << ks[ki] << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void emit_csv(const ResultTable& table, const std::string& path) { write_text(path, to_csv(table)); }

void emit_svg(const ResultTable& table, const std::string& path) { write_text(path, to_svg(table)); }

std::vector<fem::QuasiIsometryReport> run_quasi_isometry(const QuasiIsometrySpec& spec) {
  const fem::TriMesh mesh = fem::build_disk_mesh(spec.refinement);
  std::vector<fem::QuasiIsometryReport> reports;
  for (int i = 0; i < spec.trials; ++i) {
    const std::uint64_t seed = spec.seed + 2 * static_cast<std::uint64_t>(i);
    const auto base = fem::MetricField::conformal(fem::random_conformal_factor(seed, spec.max_ratio));
    const auto other = fem::MetricField::scaled(base, fem::random_conformal_factor(seed + 1, spec.max_ratio));
    reports.push_back(fem::quasi_isometry_experiment(base, other, mesh, spec.k));
  }
  return reports;
}

std::string quasi_isometry_csv(const std::vector<fem::QuasiIsometryReport>& reports) {
  std::ostringstream os;
  os << "trial,A,min_ratio,max_ratio,exponent,pass,alternative_exponent,pass_alternative\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const auto [lo, hi] = std::minmax_element(r.ratios.begin(), r.ratios.end());
    os << i << ',' << fmt(r.A) << ',' << fmt(*lo) << ',' << fmt(*hi) << ',' << r.exponent << ','
       << (r.pass ? "true" : "false") << ',' << r.alternative_exponent << ',' << (r.pass_alternative ? "true" : "false")
       << '\n';
  }
  return os.str();
}

std::string quasi_isometry_json(const std::vector<fem::QuasiIsometryReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(nlohmann::json::parse(r.to_json()));
  return arr.dump(2);
}

}  // namespace steklov::experiments
