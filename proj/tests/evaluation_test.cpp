#include <doctest.h>

#include <cmath>
#include <limits>

#include "dac/evaluation.hpp"
#include "dac/sweep.hpp"
#include "support/generators.hpp"

using dac::Controller;
using dac::Plant;
using dac::testing::Rng;

namespace {

Controller zero_controller(Eigen::Index n) {
  Controller k;
  k.A_K = Eigen::MatrixXd::Zero(n, n);
  k.B_K = Eigen::MatrixXd::Zero(n, n);
  k.C_K = Eigen::MatrixXd::Zero(n, n);
  k.D_K = Eigen::MatrixXd::Zero(n, n);
  return k;
}

}  // namespace

TEST_SUITE_BEGIN("evaluation");

TEST_CASE("closed-loop recursion on the two-node example") {
  const Plant p = dac::testing::example_plant();
  const dac::Trajectory t = dac::simulate(p, dac::synth_deadbeat(p), 4);
  CHECK(t.horizon() == 4);
  // x(1) = -D x0 + B w0 = e1, then the origin from step two on
  CHECK(t.x.row(1)(0) == 1.0);
  CHECK(t.x.row(1)(1) == 0.0);
  CHECK(t.x.row(2).norm() == 0.0);
  CHECK(t.x.row(3).norm() == 0.0);
  CHECK(t.xi.row(2).norm() == 0.0);

  // all-zero plant and controller stay at rest
  Plant still = p;
  still.A.setZero();
  still.w0.setZero();
  const dac::Trajectory rest = dac::simulate(still, zero_controller(2), 3);
  CHECK(rest.x.isZero(0.0));
  CHECK(rest.u.isZero(0.0));
  CHECK(rest.stage_costs.isZero(0.0));
}

TEST_CASE("optimal controller stage costs on the two-node example") {
  const Plant p = dac::testing::example_plant();
  const dac::Trajectory t = dac::simulate(p, dac::synth_optimal_centralized(p), 6);
  CHECK(std::abs(t.stage_costs(0) - 1.0) < 1e-12);
  CHECK(std::abs(t.stage_costs(1) - 2.0) < 1e-12);
  CHECK(std::abs(t.stage_costs(2) - 1.0) < 1e-12);
  CHECK(t.stage_costs.tail(4).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(t.stage_costs.sum() - 4.0) < 1e-12);
}

TEST_CASE("trajectory satisfies the plant recursion exactly") {
  Rng rng(401);
  for (int trial = 0; trial < 20; ++trial) {
    const Plant p = dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5);
    const Controller k = dac::synth_theta(p, dac::DirectedGraph::from_sparsity(p.A));
    const dac::Trajectory t = dac::simulate(p, k, 20);
    for (long step = 0; step < 20; ++step) {
      const Eigen::VectorXd expected =
          p.A * t.x.row(step).transpose() +
          p.b_diag.cwiseProduct(t.xi.row(step).transpose());
      CHECK((t.x.row(step + 1).transpose() - expected).norm() == 0.0);
      const Eigen::VectorXd w_next = p.d_diag.cwiseProduct(t.w.row(step).transpose());
      CHECK((t.w.row(step + 1).transpose() - w_next).norm() == 0.0);
    }
  }
}

TEST_CASE("simulated cost of the deadbeat loop is exact") {
  const Plant p = dac::testing::example_plant();
  const dac::CostReport report = dac::cost_simulated(p, dac::synth_deadbeat(p));
  CHECK(report.converged);
  CHECK(report.value == 6.0);
  CHECK(report.method == dac::CostMethod::simulated);
  CHECK(report.horizon_used >= 2);
  CHECK(report.horizon_used <= 10);
}

TEST_CASE("zero initial data costs nothing") {
  Plant p = dac::testing::example_plant();
  p.w0.setZero();
  const dac::CostReport report = dac::cost_simulated(p, dac::synth_deadbeat(p));
  CHECK(report.converged);
  CHECK(report.value == 0.0);
}

TEST_CASE("divergence is a report state") {
  Plant p;
  p.A = Eigen::MatrixXd::Constant(1, 1, 2.0);
  p.b_diag = Eigen::VectorXd::Ones(1);
  p.d_diag = Eigen::VectorXd::Zero(1);
  p.x0 = Eigen::VectorXd::Ones(1);
  p.w0 = Eigen::VectorXd::Zero(1);
  p.epsilon = 1.0;
  const dac::CostReport report = dac::cost_simulated(p, zero_controller(1));
  CHECK_FALSE(report.converged);
  CHECK(report.value == std::numeric_limits<double>::infinity());
}

TEST_CASE("deadbeat closed form on the two-node example") {
  const Plant p = dac::testing::example_plant();
  CHECK(dac::cost_deadbeat_closed_form(p) == 6.0);

  Plant quiet = p;
  quiet.w0.setZero();
  CHECK(dac::cost_deadbeat_closed_form(quiet) == 0.0);
}

TEST_CASE("deadbeat closed form agrees with simulation") {
  Rng rng(402);
  for (int trial = 0; trial < 100; ++trial) {
    const Plant p = dac::testing::random_plant(rng, rng.uniform_int(2, 6), 0.5);
    const double closed = dac::cost_deadbeat_closed_form(p);
    const dac::CostReport sim = dac::cost_simulated(p, dac::synth_deadbeat(p));
    REQUIRE(sim.converged);
    CHECK(std::abs(closed - sim.value) <= 1e-9 * (1.0 + closed));
  }
}

TEST_CASE("optimal closed form on the two-node example") {
  const Plant p = dac::testing::example_plant();
  CHECK(std::abs(dac::cost_optimal_closed_form(p) - 4.0) < 1e-12);

  Plant quiet = p;
  quiet.w0.setZero();
  CHECK(dac::cost_optimal_closed_form(quiet) == 0.0);
}

TEST_CASE("optimal closed form on the worst-case family point") {
  // Frozen from two independent routes: long-horizon simulation of the
  // synthesized optimal loop and the Riccati-block quadratic form, which
  // agree to 1e-12 relative.
  const Plant family = dac::family_thm1(1.0, 10.0);
  const double expected = 7.3407893370497863;
  const double closed = dac::cost_optimal_closed_form(family);
  CHECK(std::abs(closed - expected) <= 1e-9 * expected);

  const dac::CostReport sim =
      dac::cost_simulated(family, dac::synth_optimal_centralized(family));
  REQUIRE(sim.converged);
  CHECK(std::abs(closed - sim.value) <= 1e-9 * (1.0 + closed));
}

TEST_CASE("optimal cost lower bound") {
  const Plant p = dac::testing::example_plant();
  // nilpotent dynamics make the bound tight
  CHECK(std::abs(dac::optimal_cost_lower_bound(p) - 4.0) < 1e-12);

  Plant still = p;
  still.A.setZero();
  CHECK(std::abs(dac::optimal_cost_lower_bound(still) - 2.0) < 1e-12);

  Rng rng(403);
  for (int trial = 0; trial < 100; ++trial) {
    const Plant random = dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5);
    CHECK(dac::optimal_cost_lower_bound(random) <=
          dac::cost_optimal_closed_form(random) + 1e-8);
  }
  for (int trial = 0; trial < 30; ++trial) {
    const Plant nilpotent = dac::testing::random_bipartite_plant(rng, 0.5);
    const double cost = dac::cost_optimal_closed_form(nilpotent);
    CHECK(std::abs(dac::optimal_cost_lower_bound(nilpotent) - cost) <=
          1e-8 * (1.0 + cost));
  }
}

TEST_CASE("worst-case ratio bound") {
  CHECK(std::abs(dac::ratio_bound(1.0) - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-15);
  CHECK(std::abs(dac::ratio_bound(0.5) - (3.0 + 2.0 * std::sqrt(2.0))) < 1e-12);
  // monotone decreasing toward 1
  double previous = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
    const double bound = dac::ratio_bound(eps);
    CHECK(bound < previous);
    CHECK(bound > 1.0);
    previous = bound;
  }
  CHECK(dac::ratio_bound(1000.0) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK_THROWS_AS(dac::ratio_bound(0.0), std::invalid_argument);
}

TEST_CASE("ratio report on the two-node example") {
  const Plant p = dac::testing::example_plant();
  const dac::RatioReport report = dac::evaluate_ratio(p, dac::Strategy::deadbeat);
  CHECK(report.ratio == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(report.cost_strategy == 6.0);
  CHECK(report.cost_optimal_centralized == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(report.bound == doctest::Approx(2.618033988749895).epsilon(1e-12));
  CHECK(report.within_bound);
  CHECK(report.converged);
}

TEST_CASE("zero-over-zero counts as one") {
  Plant p = dac::testing::example_plant();
  p.w0.setZero();
  const dac::RatioReport report = dac::evaluate_ratio(p, dac::Strategy::deadbeat);
  CHECK(report.ratio == 1.0);
  CHECK(report.within_bound);
}

TEST_CASE("disturbance-driven ratios stay between one and the bound") {
  Rng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const Plant p =
        dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5, /*zero_x0=*/true);
    const dac::RatioReport report = dac::evaluate_ratio(p, dac::Strategy::deadbeat);
    CHECK(report.ratio >= 1.0 - 1e-9);
    CHECK(report.ratio <= report.bound + 1e-6);
  }
}

TEST_CASE("deadbeat ratio respects the bound for any initial state") {
  Rng rng(405);
  for (int trial = 0; trial < 60; ++trial) {
    const Plant p = dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5);
    const dac::RatioReport report = dac::evaluate_ratio(p, dac::Strategy::deadbeat);
    CHECK(report.ratio <= report.bound + 1e-6);
  }
}

TEST_SUITE_END();
