#include "dac/synthesis.hpp"

#include <cmath>
#include <stdexcept>

namespace dac {

std::string strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::deadbeat: return "deadbeat";
    case Strategy::theta: return "theta";
    case Strategy::optimal_centralized: return "optimal";
    case Strategy::proportional_integral: return "pi";
  }
  throw std::invalid_argument("strategy_name: bad enum value");
}

Strategy parse_strategy(const std::string& name) {
  if (name == "deadbeat") return Strategy::deadbeat;
  if (name == "theta") return Strategy::theta;
  if (name == "optimal") return Strategy::optimal_centralized;
  if (name == "pi") return Strategy::proportional_integral;
  throw std::invalid_argument("unknown strategy '" + name +
                              "' (expected deadbeat, theta, optimal, or pi)");
}

namespace {

// Row-local assembly shared by the deadbeat and sink-aware designs: with a
// per-row gain vector f,
//   D_K row i = (f_i * A_i - d_i e_i) / b_i,
//   B_K row i = (d_i / b_i) * ((f_i + 1) * A_i - d_i e_i).
// Each output row is computed from row i of A and the scalars b_i, d_i only,
// so rows for untouched subsystems are bit-identical under perturbations of
// other rows. The deadbeat is f = -1 everywhere.
Controller row_local_controller(const Plant& plant, const Eigen::ArrayXd& f) {
  const Eigen::Index n = plant.n();
  const Eigen::ArrayXd b = plant.b_diag.array();
  const Eigen::ArrayXd d = plant.d_diag.array();

  Controller k;
  k.A_K = plant.d_diag.asDiagonal();
  k.C_K = Eigen::MatrixXd::Identity(n, n);

  k.D_K = plant.A;
  k.D_K.array().colwise() *= f;
  k.D_K.diagonal() -= plant.d_diag;
  k.D_K.array().colwise() /= b;

  k.B_K = plant.A;
  k.B_K.array().colwise() *= (f + 1.0);
  k.B_K.diagonal() -= plant.d_diag;
  k.B_K.array().colwise() *= (d / b);
  return k;
}

}  // namespace

Controller synth_deadbeat(const Plant& plant) {
  return row_local_controller(plant, Eigen::ArrayXd::Constant(plant.n(), -1.0));
}

double sink_gain(double a_ii, double b_ii) {
  if (b_ii == 0.0) {
    throw std::invalid_argument("sink_gain: b_ii must be nonzero");
  }
  const double a2 = a_ii * a_ii;
  const double b2 = b_ii * b_ii;
  return 2.0 / (b2 + a2 + 1.0 +
                std::sqrt(a2 * a2 + 2.0 * a2 * b2 - 2.0 * a2 + b2 * b2 + 2.0 * b2 + 1.0)) -
         1.0;
}

Eigen::VectorXd sink_gains(const Plant& plant, const DirectedGraph& plant_graph) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(plant.n());
  for (Eigen::Index i : plant_graph.sinks()) {
    f(i) = sink_gain(plant.A(i, i), plant.b_diag(i));
  }
  return f;
}

Controller synth_theta(const Plant& plant, const DirectedGraph& plant_graph) {
  if (plant_graph.node_count() != plant.n()) {
    throw std::invalid_argument("synth_theta: plant graph node count mismatch");
  }
  Eigen::ArrayXd f = Eigen::ArrayXd::Constant(plant.n(), -1.0);
  for (Eigen::Index i : plant_graph.sinks()) {
    f(i) = sink_gain(plant.A(i, i), plant.b_diag(i));
  }
  return row_local_controller(plant, f);
}

Controller synth_optimal_centralized(const Plant& plant, const DareOptions& options) {
  const DareSolution sol = solve_plant_dare(plant, options);
  const Eigen::Index n = plant.n();
  const Eigen::VectorXd b_inv = plant.b_diag.cwiseInverse();

  Controller k;
  k.A_K = plant.d_diag.asDiagonal();
  k.C_K = Eigen::MatrixXd::Identity(n, n);
  k.D_K = sol.G2 * b_inv.asDiagonal();
  k.B_K = sol.G1 + plant.d_diag.asDiagonal() * k.D_K - k.D_K * plant.A;
  return k;
}

namespace {

void require_unit_disturbance_model(const Plant& plant, const char* who) {
  if (!(plant.d_diag.array() == 1.0).all()) {
    throw std::invalid_argument(std::string(who) + ": PI form requires D = I");
  }
}

}  // namespace

Controller synth_pi(const Plant& plant) {
  require_unit_disturbance_model(plant, "synth_pi");
  return synth_deadbeat(plant);
}

PiGains pi_gains(const Plant& plant) {
  require_unit_disturbance_model(plant, "pi_gains");
  PiGains gains;
  gains.Kp = plant.A;
  gains.Kp.array().colwise() /= -plant.b_diag.array();
  gains.Ki = (-plant.b_diag.cwiseInverse()).asDiagonal();
  return gains;
}

Plant reference_to_disturbance(const Eigen::MatrixXd& A, const Eigen::VectorXd& b_diag,
                               const Eigen::VectorXd& r_ref, const Eigen::VectorXd& x0,
                               double epsilon) {
  Plant plant;
  plant.A = A;
  plant.b_diag = b_diag;
  plant.d_diag = Eigen::VectorXd::Ones(A.rows());
  plant.x0 = x0 - r_ref;
  plant.w0 = (A * r_ref - r_ref).cwiseQuotient(b_diag);
  plant.epsilon = epsilon;
  return plant;
}

Controller synthesize(const Plant& plant, Strategy strategy, const DirectedGraph* plant_graph,
                      const DareOptions& options) {
  switch (strategy) {
    case Strategy::deadbeat:
      return synth_deadbeat(plant);
    case Strategy::theta:
      return plant_graph ? synth_theta(plant, *plant_graph)
                         : synth_theta(plant, DirectedGraph::from_sparsity(plant.A));
    case Strategy::optimal_centralized:
      return synth_optimal_centralized(plant, options);
    case Strategy::proportional_integral:
      return synth_pi(plant);
  }
  throw std::invalid_argument("synthesize: bad strategy");
}

}  // namespace dac
