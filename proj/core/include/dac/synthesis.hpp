#pragma once

#include <Eigen/Core>

#include <string>

#include "dac/graph.hpp"
#include "dac/model.hpp"
#include "dac/riccati.hpp"

namespace dac {

enum class Strategy { deadbeat, theta, optimal_centralized, proportional_integral };

std::string strategy_name(Strategy strategy);
// Accepts "deadbeat", "theta", "optimal", "pi". Throws std::invalid_argument.
Strategy parse_strategy(const std::string& name);

// Deadbeat design: A_K = D, B_K = -B^-1 D^2, C_K = I, D_K = -B^-1 (A + D).
// Drives x and u + w to zero in two steps for any initial state and
// disturbance. Row i of every output depends only on row i of A and the
// scalars b_ii, d_ii.
Controller synth_deadbeat(const Plant& plant);

// Scalar gain placed on a sink's own state,
//   f(a, b) = 2 / (b^2 + a^2 + 1 + sqrt(a^4 + 2a^2b^2 - 2a^2 + b^4 + 2b^2 + 1)) - 1,
// the stationary optimal feedback for a single subsystem with its own
// disturbance model. Always in (-1, 0).
double sink_gain(double a_ii, double b_ii);

// Per-node gain table for the sink-aware design: sink_gain(a_ii, b_ii) on
// sinks of the plant graph, zero elsewhere.
Eigen::VectorXd sink_gains(const Plant& plant, const DirectedGraph& plant_graph);

// Sink-aware design: with F diagonal,
//   A_K = D, B_K = B^-1 D (F + I) A - B^-1 D^2, C_K = I, D_K = B^-1 (F A - D),
// where F_ii = sink_gain(a_ii, b_ii) on sinks and F_ii = -1 elsewhere, so the
// strategy reduces exactly to the deadbeat law on every non-sink row and to
// the stationary optimal scalar law on every sink row. Any node ordering is
// accepted; sinks are read from the given plant graph.
Controller synth_theta(const Plant& plant, const DirectedGraph& plant_graph);

// Full-model-information optimum for the augmented state (x, u + w):
//   A_K = D, B_K = G1 + D G2 B^-1 - G2 B^-1 A, C_K = I, D_K = G2 B^-1,
// with (G1, G2) the Riccati feedback gains. Uses the exact closed form when
// A^2 = 0, the iterative solver otherwise.
Controller synth_optimal_centralized(const Plant& plant, const DareOptions& options = {});

struct PiGains {
  Eigen::MatrixXd Kp;  // -B^-1 A
  Eigen::MatrixXd Ki;  // -B^-1
};

// Constant-disturbance specialization (D = I): the deadbeat controller,
// whose input realizes u(k) = -B^-1 A x(k) - B^-1 sum_{i<=k} x(i), a
// proportional-integral law. Throws std::invalid_argument when D != I.
Controller synth_pi(const Plant& plant);
PiGains pi_gains(const Plant& plant);

// Step-reference tracking recast as constant-disturbance rejection: returns
// the plant with state offset x0 - r_ref, D = I, and w0 = B^-1 (A r - r).
// Driving the transformed state to zero tracks r_ref in the original
// coordinates.
Plant reference_to_disturbance(const Eigen::MatrixXd& A, const Eigen::VectorXd& b_diag,
                               const Eigen::VectorXd& r_ref, const Eigen::VectorXd& x0,
                               double epsilon);

// Dispatch by strategy. Theta reads sinks from the plant graph when given,
// else from the sparsity of A.
Controller synthesize(const Plant& plant, Strategy strategy,
                      const DirectedGraph* plant_graph = nullptr,
                      const DareOptions& options = {});

}  // namespace dac
