// Command-line front end: validate plant files, synthesize controllers,
// evaluate costs and ratios, simulate closed loops, and sweep the worst-case
// families. Machine-readable output (JSON or CSV) goes to stdout; human
// summaries go to stderr. Exit codes: 0 success, 1 domain/validation error,
// 2 I/O or parse error, 3 numerical non-convergence.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dac/evaluation.hpp"
#include "dac/model.hpp"
#include "dac/sweep.hpp"
#include "dac/synthesis.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerics = 3;

struct Tolerances {
  double tol_dare = 1e-12;
  double tol_cost = 1e-12;
  double cap = 1e18;
  long horizon_max = 1000000;

  dac::RatioOptions ratio_options() const {
    dac::RatioOptions options;
    options.dare.tol = tol_dare;
    options.cost.rel_tol = tol_cost;
    options.cost.cap = cap;
    options.cost.horizon_max = horizon_max;
    return options;
  }
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw dac::SchemaError(dac::SchemaError::Kind::schema, path, "cannot open file for writing");
  }
  out << text;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

int cmd_validate(const std::string& plant_path) {
  const dac::Plant plant = dac::load_plant(plant_path);
  const dac::ValidationReport report =
      dac::validate_plant(plant, dac::DirectedGraph::from_sparsity(plant.A));

  json doc;
  doc["passed"] = report.ok();
  doc["violations"] = json::array();
  for (const dac::Violation& v : report.violations) {
    doc["violations"].push_back({{"field", v.field}, {"message", v.message}});
  }
  std::cout << doc.dump(2) << "\n";
  std::cerr << report.summary();
  return report.ok() ? kExitOk : kExitDomain;
}

int cmd_synthesize(const std::string& plant_path, const std::string& strategy_name,
                   const std::string& out_path, const std::string& gains_path,
                   const Tolerances& tol) {
  const dac::Plant plant = dac::load_plant(plant_path);
  const dac::Strategy strategy = dac::parse_strategy(strategy_name);
  const dac::Controller controller =
      dac::synthesize(plant, strategy, nullptr, tol.ratio_options().dare);
  dac::save_controller(controller, out_path);

  if (!gains_path.empty()) {
    if (strategy != dac::Strategy::proportional_integral) {
      throw std::invalid_argument("--gains-out is only valid with --strategy pi");
    }
    const dac::PiGains gains = dac::pi_gains(plant);
    json doc;
    doc["Kp"] = json::array();
    doc["Ki"] = json::array();
    for (Eigen::Index i = 0; i < gains.Kp.rows(); ++i) {
      json kp_row = json::array(), ki_row = json::array();
      for (Eigen::Index j = 0; j < gains.Kp.cols(); ++j) {
        kp_row.push_back(gains.Kp(i, j));
        ki_row.push_back(gains.Ki(i, j));
      }
      doc["Kp"].push_back(kp_row);
      doc["Ki"].push_back(ki_row);
    }
    write_text(gains_path, doc.dump(2) + "\n");
  }

  const dac::DirectedGraph pattern = dac::controller_sparsity(controller);
  json doc;
  doc["order"] = controller.order();
  doc["sparsity_edges"] = pattern.adjacency().sum();
  std::cout << doc.dump(2) << "\n";
  std::cerr << "controller order " << controller.order() << ", transfer pattern with "
            << pattern.adjacency().sum() << " of " << pattern.node_count() * pattern.node_count()
            << " entries\n";
  return kExitOk;
}

int cmd_cost(const std::string& plant_path, const std::string& strategy_name,
             const std::string& method, const Tolerances& tol) {
  const dac::Plant plant = dac::load_plant(plant_path);
  const dac::Strategy strategy = dac::parse_strategy(strategy_name);
  const dac::RatioOptions options = tol.ratio_options();

  dac::CostReport report;
  const bool closed_form_available = strategy != dac::Strategy::theta;
  const bool want_closed = method == "closed_form" || (method == "auto" && closed_form_available);
  if (want_closed) {
    if (!closed_form_available) {
      throw std::invalid_argument("no closed-form cost for strategy 'theta'; use simulated");
    }
    if (strategy == dac::Strategy::optimal_centralized) {
      report.value = dac::cost_optimal_closed_form(plant, options.dare);
    } else {
      if (strategy == dac::Strategy::proportional_integral) dac::synth_pi(plant);
      report.value = dac::cost_deadbeat_closed_form(plant);
    }
    report.method = dac::CostMethod::closed_form;
    report.converged = true;
  } else {
    const dac::Controller controller =
        dac::synthesize(plant, strategy, nullptr, options.dare);
    report = dac::cost_simulated(plant, controller, options.cost);
  }

  json doc;
  doc["cost"] = number_or_null(report.value);
  doc["method"] = report.method == dac::CostMethod::closed_form ? "closed_form" : "simulated";
  doc["converged"] = report.converged;
  doc["horizon_used"] = report.horizon_used;
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_ratio(const std::string& plant_path, const std::string& strategy_name,
              const Tolerances& tol) {
  const dac::Plant plant = dac::load_plant(plant_path);
  const dac::RatioReport report =
      dac::evaluate_ratio(plant, dac::parse_strategy(strategy_name), tol.ratio_options());

  json doc;
  doc["cost"] = number_or_null(report.cost_strategy);
  doc["cost_opt"] = number_or_null(report.cost_optimal_centralized);
  doc["ratio"] = number_or_null(report.ratio);
  doc["bound"] = number_or_null(report.bound);
  doc["within_bound"] = report.within_bound;
  doc["converged"] = report.converged;
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_simulate(const std::string& plant_path, const std::string& controller_path,
                 long horizon, const std::string& out_path) {
  const dac::Plant plant = dac::load_plant(plant_path);
  const dac::Controller controller = dac::load_controller(controller_path);
  const dac::Trajectory t = dac::simulate(plant, controller, horizon);

  std::ostringstream csv;
  const Eigen::Index n = plant.n();
  const Eigen::Index m = controller.order();
  csv << "k";
  for (Eigen::Index i = 0; i < n; ++i) csv << ",x" << i + 1;
  for (Eigen::Index i = 0; i < m; ++i) csv << ",xK" << i + 1;
  for (Eigen::Index i = 0; i < n; ++i) csv << ",u" << i + 1;
  for (Eigen::Index i = 0; i < n; ++i) csv << ",w" << i + 1;
  for (Eigen::Index i = 0; i < n; ++i) csv << ",xi" << i + 1;
  csv << ",stage_cost\n";
  for (long k = 0; k <= t.horizon(); ++k) {
    csv << k;
    for (Eigen::Index i = 0; i < n; ++i) csv << ',' << format_double(t.x(k, i));
    for (Eigen::Index i = 0; i < m; ++i) csv << ',' << format_double(t.x_K(k, i));
    for (Eigen::Index i = 0; i < n; ++i) csv << ',' << format_double(t.u(k, i));
    for (Eigen::Index i = 0; i < n; ++i) csv << ',' << format_double(t.w(k, i));
    for (Eigen::Index i = 0; i < n; ++i) csv << ',' << format_double(t.xi(k, i));
    csv << ',' << format_double(t.stage_costs(k)) << '\n';
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_text(out_path, csv.str());
  }
  return kExitOk;
}

std::vector<dac::SweepPoint> parse_grid(const std::string& text, dac::Family family) {
  std::vector<dac::SweepPoint> grid;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    dac::SweepPoint point;
    const auto colon = item.find(':');
    if (colon != std::string::npos) {
      point.r = std::stod(item.substr(0, colon));
      point.s = std::stod(item.substr(colon + 1));
    } else {
      point.r = std::stod(item);
    }
    if (family == dac::Family::path && !point.s) {
      throw std::invalid_argument("path family grid entries must look like r:s");
    }
    grid.push_back(point);
  }
  if (grid.empty()) {
    throw std::invalid_argument("empty sweep grid");
  }
  return grid;
}

int cmd_sweep(const std::string& family_name, double eps, const std::string& grid_text,
              const std::string& strategies_text, const std::string& out_path,
              const std::string& json_path, int jobs, const Tolerances& tol) {
  const dac::Family family = dac::parse_family(family_name);
  const std::vector<dac::SweepPoint> grid = parse_grid(grid_text, family);

  std::vector<dac::Strategy> strategies;
  std::stringstream stream(strategies_text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) strategies.push_back(dac::parse_strategy(item));
  }

  const std::vector<dac::SweepRow> rows =
      dac::run_sweep(family, eps, grid, strategies, jobs, tol.ratio_options());

  std::ostringstream csv;
  dac::write_sweep_csv(csv, rows);
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_text(out_path, csv.str());
  }
  if (!json_path.empty()) {
    std::ostringstream mirror;
    dac::write_sweep_json(mirror, rows);
    write_text(json_path, mirror.str());
  }
  std::cerr << rows.size() << " sweep row(s) evaluated\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disturbance accommodation control design under limited model information"};
  app.require_subcommand(1);

  Tolerances tol;
  app.add_option("--tol-dare", tol.tol_dare, "Riccati iteration stopping tolerance");
  app.add_option("--tol-cost", tol.tol_cost, "relative stage-cost convergence tolerance");
  app.add_option("--cap", tol.cap, "partial-sum divergence cap");
  app.add_option("--horizon-max", tol.horizon_max, "maximum simulated horizon");

  std::string plant_path, controller_path, out_path, gains_path, json_path;
  std::string strategy = "deadbeat", method = "auto", family = "thm1", grid_text,
              strategies_text = "deadbeat";
  long horizon = 0;
  double eps = 1.0;
  int jobs = 1;

  CLI::App* validate = app.add_subcommand("validate", "check a plant file against its class");
  validate->add_option("plant", plant_path, "plant JSON file")->required();

  CLI::App* synthesize = app.add_subcommand("synthesize", "design a controller for a plant");
  synthesize->add_option("plant", plant_path)->required();
  synthesize->add_option("--strategy", strategy, "deadbeat|theta|optimal|pi");
  synthesize->add_option("--out", out_path, "controller JSON output path")->required();
  synthesize->add_option("--gains-out", gains_path, "PI gain export path (pi only)");

  CLI::App* cost = app.add_subcommand("cost", "evaluate a strategy's closed-loop cost");
  cost->add_option("plant", plant_path)->required();
  cost->add_option("--strategy", strategy);
  cost->add_option("--method", method)->check(CLI::IsMember({"auto", "closed_form", "simulated"}));

  CLI::App* ratio = app.add_subcommand("ratio", "cost ratio against the optimal controller");
  ratio->add_option("plant", plant_path)->required();
  ratio->add_option("--strategy", strategy);

  CLI::App* simulate = app.add_subcommand("simulate", "run the closed loop and dump a CSV");
  simulate->add_option("plant", plant_path)->required();
  simulate->add_option("--controller", controller_path)->required();
  simulate->add_option("--horizon", horizon)->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", out_path, "CSV output path (default: stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate worst-case families over a grid");
  sweep->add_option("--family", family, "thm1|sink|path");
  sweep->add_option("--eps", eps, "actuation lower bound of the plant class");
  sweep->add_option("--grid", grid_text, "comma-separated r values (r:s pairs for path)")
      ->required();
  sweep->add_option("--strategies", strategies_text, "comma-separated strategy list");
  sweep->add_option("--strategy", strategies_text, "alias for --strategies");
  sweep->add_option("--out", out_path, "CSV output path (default: stdout)");
  sweep->add_option("--json-out", json_path, "JSON mirror output path");
  sweep->add_option("--jobs", jobs, "worker threads for sweep rows")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(plant_path);
    if (synthesize->parsed())
      return cmd_synthesize(plant_path, strategy, out_path, gains_path, tol);
    if (cost->parsed()) return cmd_cost(plant_path, strategy, method, tol);
    if (ratio->parsed()) return cmd_ratio(plant_path, strategy, tol);
    if (simulate->parsed()) return cmd_simulate(plant_path, controller_path, horizon, out_path);
    if (sweep->parsed())
      return cmd_sweep(family, eps, grid_text, strategies_text, out_path, json_path, jobs, tol);
  } catch (const dac::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const dac::DareError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
