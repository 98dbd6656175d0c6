#include "dac/evaluation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void check_dimensions(const Plant& plant, const Controller& controller) {
  const Eigen::Index n = plant.n();
  const Eigen::Index m = controller.order();
  if (controller.D_K.rows() != n || controller.D_K.cols() != n ||
      controller.C_K.rows() != n || controller.C_K.cols() != m ||
      controller.B_K.rows() != m || controller.B_K.cols() != n ||
      controller.A_K.cols() != m) {
    throw std::invalid_argument("closed loop: controller and plant dimensions disagree");
  }
}

}  // namespace

Trajectory simulate(const Plant& plant, const Controller& controller, long horizon) {
  check_dimensions(plant, controller);
  if (horizon < 0) {
    throw std::invalid_argument("simulate: horizon must be nonnegative");
  }
  const Eigen::Index n = plant.n();
  const Eigen::Index m = controller.order();

  Trajectory t;
  t.x.resize(horizon + 1, n);
  t.x_K.resize(horizon + 1, m);
  t.u.resize(horizon + 1, n);
  t.w.resize(horizon + 1, n);
  t.xi.resize(horizon + 1, n);
  t.stage_costs.resize(horizon + 1);

  Eigen::VectorXd x = plant.x0;
  Eigen::VectorXd w = plant.w0;
  Eigen::VectorXd xK = Eigen::VectorXd::Zero(m);
  for (long k = 0; k <= horizon; ++k) {
    const Eigen::VectorXd u = controller.C_K * xK + controller.D_K * x;
    const Eigen::VectorXd xi = u + w;
    t.x.row(k) = x.transpose();
    t.x_K.row(k) = xK.transpose();
    t.u.row(k) = u.transpose();
    t.w.row(k) = w.transpose();
    t.xi.row(k) = xi.transpose();
    t.stage_costs(k) = x.squaredNorm() + xi.squaredNorm();
    xK = controller.A_K * xK + controller.B_K * x;
    x = plant.A * x + plant.b_diag.cwiseProduct(xi);
    w = plant.d_diag.cwiseProduct(w);
  }
  return t;
}

CostReport cost_simulated(const Plant& plant, const Controller& controller,
                          const CostOptions& options) {
  check_dimensions(plant, controller);
  if (!(options.rel_tol > 0.0)) {
    throw std::invalid_argument("cost_simulated: rel_tol must be positive");
  }

  CostReport report;
  report.method = CostMethod::simulated;

  KahanSum total;
  Eigen::VectorXd x = plant.x0;
  Eigen::VectorXd w = plant.w0;
  Eigen::VectorXd xK = Eigen::VectorXd::Zero(controller.order());
  int quiet = 0;
  for (long k = 0; k <= options.horizon_max; ++k) {
    const Eigen::VectorXd u = controller.C_K * xK + controller.D_K * x;
    const Eigen::VectorXd xi = u + w;
    const double stage = x.squaredNorm() + xi.squaredNorm();
    total.add(stage);
    if (!std::isfinite(total.sum) || total.sum > options.cap) {
      report.value = kInf;
      report.converged = false;
      report.horizon_used = k;
      return report;
    }
    quiet = (stage <= options.rel_tol * std::max(1.0, total.sum)) ? quiet + 1 : 0;
    if (quiet >= options.window) {
      report.value = total.sum;
      report.converged = true;
      report.horizon_used = k;
      return report;
    }
    xK = controller.A_K * xK + controller.B_K * x;
    x = plant.A * x + plant.b_diag.cwiseProduct(xi);
    w = plant.d_diag.cwiseProduct(w);
  }
  report.value = kInf;
  report.converged = false;
  report.horizon_used = options.horizon_max;
  return report;
}

namespace {

double quadratic_form(const Eigen::MatrixXd& top_left, const Eigen::MatrixXd& top_right,
                      const Eigen::MatrixXd& bottom_right, const Eigen::VectorXd& top,
                      const Eigen::VectorXd& bottom) {
  return top.dot(top_left * top) + 2.0 * top.dot(top_right * bottom) +
         bottom.dot(bottom_right * bottom);
}

// diag(v) * M and M * diag(v).
Eigen::MatrixXd row_scaled(Eigen::MatrixXd m, const Eigen::ArrayXd& v) {
  m.array().colwise() *= v;
  return m;
}

Eigen::MatrixXd col_scaled(Eigen::MatrixXd m, const Eigen::ArrayXd& v) {
  m.array().rowwise() *= v.transpose();
  return m;
}

}  // namespace

double cost_deadbeat_closed_form(const Plant& plant) {
  const Eigen::MatrixXd& A = plant.A;
  const Eigen::ArrayXd bi2 = plant.b_diag.array().square().inverse();
  const Eigen::ArrayXd d = plant.d_diag.array();

  const Eigen::MatrixXd AtBi2 = col_scaled(A.transpose(), bi2);  // A' B^-2
  const Eigen::MatrixXd S = AtBi2 * A;                           // A' B^-2 A

  Eigen::MatrixXd Q22 = S;
  Q22.diagonal().array() += bi2 + 1.0;

  Eigen::MatrixXd Q12 = -AtBi2 - row_scaled(S, d);  // -A'B^-2 - D A'B^-2 A
  Q12.diagonal().array() -= d + d * bi2;            // -D - D B^-2

  const Eigen::MatrixXd cross = col_scaled(AtBi2, d);  // A' B^-2 D
  Eigen::MatrixXd Q11 = S + col_scaled(row_scaled(S, d), d) + cross + cross.transpose();
  Q11.diagonal().array() += 1.0 + d.square() * (1.0 + bi2);

  const Eigen::VectorXd scaled_w0 = plant.b_diag.cwiseProduct(plant.w0);
  return quadratic_form(Q11, Q12, Q22, plant.x0, scaled_w0);
}

double cost_optimal_closed_form(const Plant& plant, const DareOptions& options) {
  const DareSolution sol = solve_plant_dare(plant, options);
  const Eigen::MatrixXd X22 = sol.X22();
  const Eigen::ArrayXd bi = plant.b_diag.array().inverse();
  const Eigen::ArrayXd d = plant.d_diag.array();

  Eigen::MatrixXd inner = X22 + col_scaled(row_scaled(X22, d), d);  // X22 + D X22 D
  inner.diagonal().array() -= 1.0;
  const Eigen::MatrixXd top_left = col_scaled(row_scaled(inner, bi), bi);
  const Eigen::MatrixXd top_right = -row_scaled(X22, bi * d);  // -B^-1 D X22
  return quadratic_form(top_left, top_right, X22, plant.x0, plant.w0);
}

double optimal_cost_lower_bound(const Plant& plant) {
  const Eigen::ArrayXd b2 = plant.b_diag.array().square();
  const Eigen::ArrayXd d = plant.d_diag.array();

  // W = A'(I + B^2)^-1 A + I
  Eigen::MatrixXd W = col_scaled(plant.A.transpose(), 1.0 / (1.0 + b2)) * plant.A;
  W.diagonal().array() += 1.0;

  Eigen::MatrixXd W_plus = W;  // W + B^-2
  W_plus.diagonal().array() += 1.0 / b2;

  Eigen::MatrixXd top_left = W + col_scaled(row_scaled(W, d), d);
  top_left.diagonal().array() += d.square() / b2;
  const Eigen::MatrixXd top_right = -row_scaled(W_plus, d);

  const Eigen::VectorXd scaled_w0 = plant.b_diag.cwiseProduct(plant.w0);
  return quadratic_form(top_left, top_right, W_plus, plant.x0, scaled_w0);
}

double ratio_bound(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("ratio_bound: eps must be positive");
  }
  const double e2 = eps * eps;
  return (2.0 * e2 + 1.0 + std::sqrt(4.0 * e2 + 1.0)) / (2.0 * e2);
}

RatioReport evaluate_ratio(const Plant& plant, Strategy strategy, const RatioOptions& options) {
  RatioReport report;
  report.bound = ratio_bound(plant.epsilon);
  report.cost_optimal_centralized = cost_optimal_closed_form(plant, options.dare);

  switch (strategy) {
    case Strategy::deadbeat:
      report.cost_strategy = cost_deadbeat_closed_form(plant);
      break;
    case Strategy::proportional_integral:
      synth_pi(plant);  // enforces D = I
      report.cost_strategy = cost_deadbeat_closed_form(plant);
      break;
    case Strategy::optimal_centralized:
      report.cost_strategy = report.cost_optimal_centralized;
      break;
    case Strategy::theta: {
      const Controller k = synth_theta(plant, DirectedGraph::from_sparsity(plant.A));
      const CostReport cost = cost_simulated(plant, k, options.cost);
      report.cost_strategy = cost.value;
      report.converged = cost.converged;
      break;
    }
  }

  if (report.cost_optimal_centralized == 0.0) {
    report.ratio = (report.cost_strategy == 0.0) ? 1.0 : kInf;
  } else {
    report.ratio = report.cost_strategy / report.cost_optimal_centralized;
  }
  report.within_bound = report.ratio <= report.bound + 1e-9;
  return report;
}

}  // namespace dac
