#pragma once

#include <Eigen/Core>

#include "dac/model.hpp"
#include "dac/riccati.hpp"
#include "dac/synthesis.hpp"

namespace dac {

// Closed-loop signals for k = 0..horizon, one time step per row.
// xi(k) = u(k) + w(k); stage_costs(k) = |x(k)|^2 + |xi(k)|^2.
struct Trajectory {
  Eigen::MatrixXd x;
  Eigen::MatrixXd x_K;
  Eigen::MatrixXd u;
  Eigen::MatrixXd w;
  Eigen::MatrixXd xi;
  Eigen::VectorXd stage_costs;

  long horizon() const { return static_cast<long>(x.rows()) - 1; }
};

// Exact closed-loop recursion with x_K(0) = 0.
Trajectory simulate(const Plant& plant, const Controller& controller, long horizon);

struct CostOptions {
  double rel_tol = 1e-12;  // stage-cost threshold relative to max(1, partial sum)
  double cap = 1e18;       // partial sum above this counts as divergence
  long horizon_max = 1000000;
  int window = 5;          // consecutive negligible stages required to stop
};

// Infinite-horizon cost by summation with compensated accumulation. Converged
// when `window` consecutive stage costs fall below rel_tol * max(1, J); the
// window guards against transient exact zeros. Divergence (sum above cap,
// non-finite values, or horizon_max exceeded) reports value = +infinity with
// converged = false rather than throwing.
CostReport cost_simulated(const Plant& plant, const Controller& controller,
                          const CostOptions& options = {});

// Deadbeat cost as a quadratic form in (x0, B w0); exact because the loop
// closes in two steps.
double cost_deadbeat_closed_form(const Plant& plant);

// Cost of the full-information optimal controller as a quadratic form in
// (x0, w0) built from the Riccati block X22. Uses the exact closed form when
// A^2 = 0, the iterative solver otherwise.
double cost_optimal_closed_form(const Plant& plant, const DareOptions& options = {});

// Lower bound on the optimal cost as a quadratic form in (x0, B w0) built
// from W = A'(I + B^2)^-1 A + I. Coincides with the optimal cost when
// A^2 = 0.
double optimal_cost_lower_bound(const Plant& plant);

// Worst-case cost ratio of the deadbeat design over the plant class with
// sigma_min(B) >= eps:  (2 eps^2 + 1 + sqrt(4 eps^2 + 1)) / (2 eps^2).
double ratio_bound(double eps);

// Per-plant cost ratio of a strategy against the full-information optimal
// cost. 0/0 counts as 1; a zero denominator with a positive numerator is
// reported as +infinity, not thrown.
struct RatioReport {
  double cost_strategy = 0.0;
  double cost_optimal_centralized = 0.0;
  double ratio = 1.0;
  double bound = 0.0;
  bool within_bound = true;
  bool converged = true;  // numerator evaluation converged
};

struct RatioOptions {
  DareOptions dare;
  CostOptions cost;
};

// Numerator: closed form for the deadbeat, PI, and optimal strategies,
// simulation for theta. Denominator: optimal closed form. Theta reads sinks
// from the sparsity of A.
RatioReport evaluate_ratio(const Plant& plant, Strategy strategy,
                           const RatioOptions& options = {});

}  // namespace dac
