// steklov-lab: run scenarios, sweeps, presets, the acceptance suite and the
// Berger oracle from the command line.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "acceptance.hpp"
#include "steklov/boundary_modes.hpp"
#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"

namespace ex = steklov::experiments;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw steklov::IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void report_quasi_isometry(const ex::ScenarioConfig& config, const std::string& csv_path,
                           const std::string& json_path) {
  const auto reports = ex::run_quasi_isometry(config.quasi_isometry);
  const std::string csv = ex::quasi_isometry_csv(reports);
  std::cout << csv;
  if (!csv_path.empty()) ex::write_text(csv_path, csv);
  if (!json_path.empty()) ex::write_text(json_path, ex::quasi_isometry_json(reports));
  for (const auto& r : reports)
    if (!r.pass) throw steklov::NumericError("a quasi-isometry trial violated the A^5 bound");
}

int emit(const ex::ResultTable& table, const std::string& csv_path, const std::string& svg_path) {
  std::cout << ex::to_csv(table);
  if (!csv_path.empty()) ex::emit_csv(table, csv_path);
  if (!svg_path.empty()) ex::emit_svg(table, svg_path);
  int violated = 0;
  for (const auto& r : table.rows)
    if (!r.holds()) {
      std::cerr << "certificate violated at epsilon=" << r.epsilon << " k=" << r.k << '\n';
      ++violated;
    }
  return violated == 0 ? 0 : 1;
}

int run_config(const ex::ScenarioConfig& config, bool full_sweep) {
  ex::validate(config);
  if (config.experiment == "quasi_isometry") {
    const std::string json = config.csv_path.empty() ? "" : fs::path(config.csv_path).replace_extension(".json");
    report_quasi_isometry(config, config.csv_path, json);
    return 0;
  }
  const auto table = full_sweep ? ex::sweep(config) : ex::run_scenario(config);
  return emit(table, config.csv_path, config.svg_path);
}

int run_preset(const std::string& name, const std::vector<double>& grid, const std::string& out_dir) {
  auto config = ex::preset(name);
  if (!grid.empty()) config.sweep = grid;
  std::string csv, svg;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    csv = (fs::path(out_dir) / (name + ".csv")).string();
    svg = (fs::path(out_dir) / (name + ".svg")).string();
    ex::write_text((fs::path(out_dir) / (name + ".config.json")).string(), config.to_json() + "\n");
  }
  ex::validate(config);
  if (config.experiment == "quasi_isometry") {
    report_quasi_isometry(config, csv, out_dir.empty() ? "" : (fs::path(out_dir) / (name + ".json")).string());
    return 0;
  }
  return emit(ex::sweep(config), csv, svg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov eigenvalue experiments on collars and 2D meshes"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a JSON scenario at its first epsilon");
  run->add_option("config", config_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);

  auto* sweep = app.add_subcommand("sweep", "Run a JSON scenario over its epsilon grid");
  sweep->add_option("config", config_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);

  std::string preset_name, out_dir;
  std::vector<double> grid;
  bool list = false;
  auto* preset = app.add_subcommand("preset", "Run a named preset over its epsilon grid");
  preset->add_option("name", preset_name, "Preset name");
  preset->add_option("--epsilon-grid", grid, "Override the epsilon grid (strictly decreasing)")->delimiter(',');
  preset->add_option("--out", out_dir, "Directory for CSV/SVG/JSON outputs");
  preset->add_flag("--list", list, "List preset names");

  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");

  int kmax = 4;
  auto* oracle = app.add_subcommand("oracle", "Brute-force spectral oracles");
  oracle->require_subcommand(1);
  auto* berger = oracle->add_subcommand("berger", "Harmonic-polynomial decomposition for the Berger sphere");
  berger->add_option("--kmax", kmax, "Largest degree (<= 8)")->check(CLI::Range(0, 64));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_config(ex::ScenarioConfig::from_json(read_file(config_path)), false);
    if (*sweep) return run_config(ex::ScenarioConfig::from_json(read_file(config_path)), true);
    if (*preset) {
      if (list || preset_name.empty()) {
        for (const auto& n : ex::preset_names()) std::cout << n << '\n';
        return preset_name.empty() && !list ? 2 : 0;
      }
      return run_preset(preset_name, grid, out_dir);
    }
    if (*validate) return steklov::acceptance::run_all(std::cout) == 0 ? 0 : 1;
    if (*berger) {
      std::cout << steklov::berger_oracle_csv(steklov::berger_oracle(kmax));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
