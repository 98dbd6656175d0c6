#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>

#include "dac/riccati.hpp"
#include "support/generators.hpp"

using dac::AugmentedSystem;
using dac::DareSolution;
using dac::Plant;
using dac::testing::Rng;

namespace {

Plant scalar_plant(double a, double b, double d) {
  Plant p;
  p.A = Eigen::MatrixXd::Constant(1, 1, a);
  p.b_diag = Eigen::VectorXd::Constant(1, b);
  p.d_diag = Eigen::VectorXd::Constant(1, d);
  p.x0 = Eigen::VectorXd::Zero(1);
  p.w0 = Eigen::VectorXd::Zero(1);
  p.epsilon = std::abs(b);
  return p;
}

// Smallest singular value of [A~ - lambda I, B~] over the eigenvalues of A~.
double controllability_margin(const AugmentedSystem& aug) {
  const Eigen::Index m = aug.A_tilde.rows();
  const Eigen::EigenSolver<Eigen::MatrixXd> eig(aug.A_tilde);
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::MatrixXcd pencil(m, m + aug.B_tilde.cols());
    pencil.leftCols(m) =
        aug.A_tilde.cast<std::complex<double>>() -
        eig.eigenvalues()(k) * Eigen::MatrixXcd::Identity(m, m);
    pencil.rightCols(aug.B_tilde.cols()) = aug.B_tilde.cast<std::complex<double>>();
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pencil);
    margin = std::min(margin, svd.singularValues().minCoeff());
  }
  return margin;
}

}  // namespace

TEST_SUITE_BEGIN("riccati");

TEST_CASE("augmented system block layout") {
  const AugmentedSystem aug = dac::build_augmented(dac::testing::example_plant());
  Eigen::MatrixXd expected_a(4, 4);
  expected_a << 0, 0, 1, 0,
                2, 0, 0, 1,
                0, 0, 1, 0,
                0, 0, 0, 1;
  Eigen::MatrixXd expected_b(4, 2);
  expected_b << 0, 0, 0, 0, 1, 0, 0, 1;
  CHECK(dac::testing::bit_identical(aug.A_tilde, expected_a));
  CHECK(dac::testing::bit_identical(aug.B_tilde, expected_b));

  const AugmentedSystem scalar = dac::build_augmented(scalar_plant(3.0, 2.0, -1.0));
  Eigen::MatrixXd expected_scalar(2, 2);
  expected_scalar << 3, 2, 0, -1;
  CHECK(dac::testing::bit_identical(scalar.A_tilde, expected_scalar));
}

TEST_CASE("augmented pair is controllable for random plants") {
  Rng rng(201);
  for (int trial = 0; trial < 20; ++trial) {
    const Plant p = dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5);
    const AugmentedSystem aug = dac::build_augmented(p);
    CHECK(controllability_margin(aug) > 1e-8 * std::max(1.0, aug.A_tilde.norm()));
  }
}

TEST_CASE("solver reproduces the known two-node solution") {
  const DareSolution sol = dac::solve_dare(dac::build_augmented(dac::testing::example_plant()));
  Eigen::MatrixXd expected_x(4, 4);
  expected_x << 5, 0, 0, 2,
                0, 1, 0, 0,
                0, 0, 4, 0,
                2, 0, 0, 2;
  CHECK(dac::testing::max_abs_diff(sol.X, expected_x) < 1e-10);
  CHECK(sol.G1.cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXd expected_g2(2, 2);
  expected_g2 << -1, 0, -1, -1;
  CHECK(dac::testing::max_abs_diff(sol.G2, expected_g2) < 1e-12);
  CHECK(sol.residual <= 1e-12);
}

TEST_CASE("solver handles the hand-checked scalar instance") {
  // a = 0, b = 1, d = 0: the fixed point is X = diag(1, 2) with zero gains.
  const DareSolution sol = dac::solve_dare(dac::build_augmented(scalar_plant(0.0, 1.0, 0.0)));
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 0, 0, 2;
  CHECK(dac::testing::max_abs_diff(sol.X, expected) < 1e-14);
  CHECK(std::abs(sol.G1(0, 0)) < 1e-14);
  CHECK(std::abs(sol.G2(0, 0)) < 1e-14);
  CHECK(sol.residual == 0.0);
}

TEST_CASE("solution is symmetric positive definite with a tiny residual") {
  Rng rng(202);
  for (int trial = 0; trial < 25; ++trial) {
    const Plant p = dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5);
    const DareSolution sol = dac::solve_dare(dac::build_augmented(p));
    CHECK(dac::testing::max_abs_diff(sol.X, sol.X.transpose()) == 0.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sol.X);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    CHECK(sol.residual <= 1e-9);
  }
}

TEST_CASE("subsystem partition identity holds") {
  // X11 - X12 X22^-1 X12' = B^-1 (X22 - I) B^-1
  Rng rng(203);
  for (int trial = 0; trial < 20; ++trial) {
    const Plant p = dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5);
    const DareSolution sol = dac::solve_dare(dac::build_augmented(p));
    const Eigen::MatrixXd lhs =
        sol.X11() - sol.X12() * sol.X22().ldlt().solve(sol.X12().transpose());
    Eigen::MatrixXd rhs = sol.X22();
    rhs.diagonal().array() -= 1.0;
    rhs.array().colwise() /= p.b_diag.array();
    rhs.array().rowwise() /= p.b_diag.transpose().array();
    CHECK(dac::testing::max_abs_diff(lhs, rhs) < 1e-8 * std::max(1.0, sol.X.norm()));
  }
}

TEST_CASE("solution dominates the actuation-limited lower bound") {
  // X >= A~' blkdiag(A'(I+B^2)^-1 A + I, 0) A~ + I in the semidefinite order
  Rng rng(204);
  for (int trial = 0; trial < 20; ++trial) {
    const Plant p = dac::testing::random_plant(rng, rng.uniform_int(2, 5), 0.5);
    const AugmentedSystem aug = dac::build_augmented(p);
    const DareSolution sol = dac::solve_dare(aug);

    const Eigen::Index n = p.n();
    Eigen::MatrixXd w = p.A.transpose() *
                        (1.0 / (1.0 + p.b_diag.array().square())).matrix().asDiagonal() * p.A;
    w.diagonal().array() += 1.0;
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    block.topLeftCorner(n, n) = w;
    Eigen::MatrixXd bound = aug.A_tilde.transpose() * block * aug.A_tilde;
    bound.diagonal().array() += 1.0;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sol.X - bound);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * std::max(1.0, sol.X.norm()));
  }
}

TEST_CASE("closed form for two-step-nilpotent dynamics") {
  const Plant example = dac::testing::example_plant();
  const DareSolution sol = dac::nilpotent_closed_form(example);
  CHECK(sol.X22().isApprox(Eigen::Vector2d(4, 2).asDiagonal().toDenseMatrix(), 1e-15));
  Eigen::MatrixXd expected_g2(2, 2);
  expected_g2 << -1, 0, -1, -1;
  CHECK(dac::testing::max_abs_diff(sol.G2, expected_g2) == 0.0);
  CHECK(sol.residual < 1e-12);

  // A = 0 collapses to X = blkdiag(I, I + B^2), G2 = -D
  Plant still = example;
  still.A.setZero();
  still.b_diag << 2.0, 3.0;
  still.d_diag << 0.5, -1.0;
  const DareSolution sol0 = dac::nilpotent_closed_form(still);
  CHECK(sol0.X11().isIdentity(0.0));
  CHECK(sol0.X12().isZero(0.0));
  CHECK(sol0.X22().isApprox(Eigen::Vector2d(5, 10).asDiagonal().toDenseMatrix(), 1e-15));
  CHECK(sol0.G2.isApprox(-Eigen::Vector2d(0.5, -1.0).asDiagonal().toDenseMatrix(), 1e-15));

  // upper-triangular instance with non-unit B, checked against the printed form
  Plant upper = example;
  upper.A << 0, 1, 0, 0;
  upper.b_diag << 2.0, 2.0;
  upper.d_diag << 0.0, 0.0;
  const DareSolution sol_u = dac::nilpotent_closed_form(upper);
  CHECK(sol_u.X11().isApprox(Eigen::Vector2d(1, 2).asDiagonal().toDenseMatrix(), 1e-15));
  Eigen::MatrixXd expected_x12(2, 2);
  expected_x12 << 0, 0, 2, 0;
  CHECK(dac::testing::max_abs_diff(sol_u.X12(), expected_x12) == 0.0);
  CHECK(sol_u.X22().isApprox(Eigen::Vector2d(5, 29.0 / 5.0).asDiagonal().toDenseMatrix(),
                             1e-15));
  Eigen::MatrixXd expected_g2u(2, 2);
  expected_g2u << 0, -0.8, 0, 0;
  CHECK(dac::testing::max_abs_diff(sol_u.G2, expected_g2u) < 1e-15);
  CHECK(sol_u.residual < 1e-12);

  CHECK_THROWS_AS(dac::nilpotent_closed_form(scalar_plant(1.0, 1.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("solver and closed form agree on nilpotent plants") {
  Rng rng(205);
  for (int trial = 0; trial < 25; ++trial) {
    const Plant p = dac::testing::random_bipartite_plant(rng, 0.5);
    REQUIRE(dac::is_nilpotent_degree_two(p.A));
    const DareSolution closed = dac::nilpotent_closed_form(p);
    const DareSolution iterated = dac::solve_dare(dac::build_augmented(p));
    CHECK(dac::testing::max_abs_diff(closed.X, iterated.X) < 1e-8);
    CHECK(dac::testing::max_abs_diff(closed.G1, iterated.G1) < 1e-8);
    CHECK(dac::testing::max_abs_diff(closed.G2, iterated.G2) < 1e-8);
  }
}

TEST_CASE("solver reports non-convergence") {
  dac::DareOptions options;
  options.max_iter = 1;
  CHECK_THROWS_AS(
      dac::solve_dare(dac::build_augmented(dac::testing::example_plant()), options),
      dac::DareError);
}

TEST_SUITE_END();
