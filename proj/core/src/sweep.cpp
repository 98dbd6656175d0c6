#include "dac/sweep.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace dac {

namespace {

Plant two_node_family(double eps, double r, bool sink_variant) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("family: eps must be positive");
  }
  Plant plant;
  plant.A = Eigen::MatrixXd::Zero(2, 2);
  plant.b_diag = Eigen::VectorXd::Constant(2, eps);
  plant.d_diag = Eigen::VectorXd::Ones(2);
  plant.x0 = Eigen::VectorXd::Zero(2);
  plant.w0 = Eigen::VectorXd::Zero(2);
  plant.epsilon = eps;
  if (sink_variant) {
    plant.A(1, 1) = r;
    plant.w0(1) = 1.0;
  } else {
    plant.A(1, 0) = r;
  }
  return plant;
}

}  // namespace

Plant family_thm1(double eps, double r) {
  if (r == 0.0) {
    throw std::invalid_argument("family_thm1: r must be nonzero");
  }
  Plant plant = two_node_family(eps, r, false);
  const double e2 = eps * eps;
  const double root = std::sqrt(4.0 * e2 + 1.0);
  const double scale = (e2 + 1.0) * (root + 1.0);
  plant.x0(0) = scale / (2.0 * eps * r);
  plant.w0(0) = scale / (2.0 * e2 * r);
  plant.w0(1) = -1.0;
  return plant;
}

Plant family_sink(double eps, double r) { return two_node_family(eps, r, true); }

Plant family_path(double eps, double r, double s) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("family_path: eps must be positive");
  }
  Plant plant;
  plant.A = Eigen::MatrixXd::Zero(3, 3);
  plant.A(1, 0) = r;
  plant.A(2, 1) = s;
  plant.b_diag = Eigen::VectorXd::Constant(3, eps);
  plant.d_diag = Eigen::VectorXd::Ones(3);
  plant.x0 = Eigen::VectorXd::Zero(3);
  plant.w0 = Eigen::VectorXd::Zero(3);
  plant.w0(0) = 1.0;
  plant.epsilon = eps;
  return plant;
}

std::string family_name(Family family) {
  switch (family) {
    case Family::thm1: return "thm1";
    case Family::sink: return "sink";
    case Family::path: return "path";
  }
  throw std::invalid_argument("family_name: bad enum value");
}

Family parse_family(const std::string& name) {
  if (name == "thm1") return Family::thm1;
  if (name == "sink") return Family::sink;
  if (name == "path") return Family::path;
  throw std::invalid_argument("unknown family '" + name + "' (expected thm1, sink, or path)");
}

namespace {

Plant make_family_plant(Family family, double eps, const SweepPoint& point) {
  switch (family) {
    case Family::thm1: return family_thm1(eps, point.r);
    case Family::sink: return family_sink(eps, point.r);
    case Family::path:
      if (!point.s) {
        throw std::invalid_argument("path family requires an s parameter");
      }
      return family_path(eps, point.r, *point.s);
  }
  throw std::invalid_argument("make_family_plant: bad family");
}

SweepRow evaluate_row(Family family, double eps, const SweepPoint& point, Strategy strategy,
                      const RatioOptions& options) {
  SweepRow row;
  row.family = family;
  row.eps = eps;
  row.r = point.r;
  row.s = point.s;
  row.strategy = strategy;
  try {
    const Plant plant = make_family_plant(family, eps, point);
    const RatioReport report = evaluate_ratio(plant, strategy, options);
    row.cost = report.cost_strategy;
    row.cost_opt = report.cost_optimal_centralized;
    row.ratio = report.ratio;
    row.bound = report.bound;
    row.within_bound = report.within_bound;
    row.converged = report.converged;
  } catch (const std::exception& e) {
    row.cost = std::numeric_limits<double>::infinity();
    row.cost_opt = std::numeric_limits<double>::infinity();
    row.ratio = std::numeric_limits<double>::quiet_NaN();
    row.bound = (eps > 0.0) ? ratio_bound(eps) : 0.0;
    row.within_bound = false;
    row.converged = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(Family family, double eps, const std::vector<SweepPoint>& grid,
                                const std::vector<Strategy>& strategies, int jobs,
                                const RatioOptions& options) {
  if (grid.empty()) {
    throw std::invalid_argument("run_sweep: grid must be nonempty");
  }
  std::vector<SweepRow> rows(grid.size() * strategies.size());
  if (rows.empty()) return rows;

  const auto work = [&](std::size_t index) {
    const std::size_t point_index = index / strategies.size();
    const std::size_t strategy_index = index % strategies.size();
    rows[index] = evaluate_row(family, eps, grid[point_index], strategies[strategy_index],
                               options);
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
          work(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

namespace {

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "family,eps,r,s,strategy,cost,cost_opt,ratio,bound,within_bound,converged\n";
  for (const SweepRow& row : rows) {
    out << family_name(row.family) << ',' << format_double(row.eps) << ','
        << format_double(row.r) << ',' << (row.s ? format_double(*row.s) : std::string())
        << ',' << strategy_name(row.strategy) << ',' << format_double(row.cost) << ','
        << format_double(row.cost_opt) << ',' << format_double(row.ratio) << ','
        << format_double(row.bound) << ',' << (row.within_bound ? "true" : "false") << ','
        << (row.converged ? "true" : "false") << '\n';
  }
}

void write_sweep_json(std::ostream& out, const std::vector<SweepRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  const auto number_or_null = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json();
  };
  for (const SweepRow& row : rows) {
    nlohmann::json entry;
    entry["family"] = family_name(row.family);
    entry["eps"] = row.eps;
    entry["r"] = row.r;
    entry["s"] = row.s ? nlohmann::json(*row.s) : nlohmann::json();
    entry["strategy"] = strategy_name(row.strategy);
    entry["cost"] = number_or_null(row.cost);
    entry["cost_opt"] = number_or_null(row.cost_opt);
    entry["ratio"] = number_or_null(row.ratio);
    entry["bound"] = number_or_null(row.bound);
    entry["within_bound"] = row.within_bound;
    entry["converged"] = row.converged;
    if (!row.error.empty()) entry["error"] = row.error;
    doc.push_back(entry);
  }
  out << doc.dump(2) << "\n";
}

}  // namespace dac
