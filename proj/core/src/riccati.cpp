#include "dac/riccati.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace dac {

namespace {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// One application of the Riccati operator f(X) = A~'XA~ - A~'XB~ M^-1 B~'XA~ + I
// with M = B~'XB~. M >= I along the iteration (X >= I), so an LLT failure
// signals an implementation fault rather than a bad input.
MatrixXld riccati_step(const MatrixXld& At, const MatrixXld& Bt, const MatrixXld& X) {
  const MatrixXld M = Bt.transpose() * X * Bt;
  Eigen::LLT<MatrixXld> llt(M);
  if (llt.info() != Eigen::Success) {
    throw DareError("solve_dare: B~' X B~ lost positive definiteness");
  }
  const MatrixXld BtXA = Bt.transpose() * X * At;
  MatrixXld next = At.transpose() * X * At - BtXA.transpose() * llt.solve(BtXA) +
                   MatrixXld::Identity(X.rows(), X.cols());
  next = ((next + next.transpose()) / 2.0L).eval();
  return next;
}

long double residual_ld(const MatrixXld& At, const MatrixXld& Bt, const MatrixXld& X) {
  return (riccati_step(At, Bt, X) - X).norm();
}

}  // namespace

AugmentedSystem build_augmented(const Plant& plant) {
  const Eigen::Index n = plant.n();
  AugmentedSystem aug;
  aug.A_tilde = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  aug.A_tilde.topLeftCorner(n, n) = plant.A;
  aug.A_tilde.topRightCorner(n, n) = plant.b_diag.asDiagonal();
  aug.A_tilde.bottomRightCorner(n, n) = plant.d_diag.asDiagonal();
  aug.B_tilde = Eigen::MatrixXd::Zero(2 * n, n);
  aug.B_tilde.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  return aug;
}

DareSolution solve_dare(const AugmentedSystem& aug, const DareOptions& options) {
  const MatrixXld At = aug.A_tilde.cast<long double>();
  const MatrixXld Bt = aug.B_tilde.cast<long double>();
  const Eigen::Index m = At.rows();

  MatrixXld X = MatrixXld::Identity(m, m);
  long iterations = 0;
  bool converged = false;
  while (iterations < options.max_iter) {
    const MatrixXld next = riccati_step(At, Bt, X);
    ++iterations;
    const long double step = (next - X).norm();
    X = next;
    if (step <= options.tol * std::max<long double>(1.0L, X.norm())) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw DareError("solve_dare: no convergence after " + std::to_string(options.max_iter) +
                    " iterations");
  }
  // One polish step, then gains from the final iterate.
  X = riccati_step(At, Bt, X);
  ++iterations;

  const MatrixXld M = Bt.transpose() * X * Bt;
  const MatrixXld G = -Eigen::LLT<MatrixXld>(M).solve(Bt.transpose() * X * At);

  DareSolution solution;
  solution.X = X.cast<double>();
  const Eigen::Index n = aug.plant_dim();
  solution.G1 = G.leftCols(n).cast<double>();
  solution.G2 = G.rightCols(n).cast<double>();
  solution.iterations = iterations;
  // Certified residual of the returned (double) matrix.
  solution.residual =
      static_cast<double>(residual_ld(At, Bt, solution.X.cast<long double>()));
  return solution;
}

bool is_nilpotent_degree_two(const Eigen::MatrixXd& a) {
  const double scale = a.norm();
  return (a * a).norm() <= 1e-12 * std::max(1.0, scale * scale);
}

DareSolution nilpotent_closed_form(const Plant& plant) {
  if (!is_nilpotent_degree_two(plant.A)) {
    throw std::invalid_argument("nilpotent_closed_form: A is not nilpotent of degree 2");
  }
  const Eigen::Index n = plant.n();
  const Eigen::MatrixXd& A = plant.A;
  const Eigen::ArrayXd b = plant.b_diag.array();
  const Eigen::ArrayXd gain = 1.0 / (1.0 + b * b);  // (I + B^2)^-1

  const Eigen::MatrixXd AB = A * plant.b_diag.asDiagonal();
  Eigen::MatrixXd X22 = AB.transpose() * gain.matrix().asDiagonal() * AB;
  X22.diagonal().array() += 1.0 + b * b;

  DareSolution solution;
  solution.X = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  solution.X.topLeftCorner(n, n) = A.transpose() * A + Eigen::MatrixXd::Identity(n, n);
  solution.X.topRightCorner(n, n) = A.transpose() * plant.b_diag.asDiagonal();
  solution.X.bottomLeftCorner(n, n) = solution.X.topRightCorner(n, n).transpose();
  solution.X.bottomRightCorner(n, n) = X22;

  solution.G1 = Eigen::MatrixXd::Zero(n, n);
  solution.G2 = -(gain.matrix().asDiagonal() * (plant.b_diag.asDiagonal() * AB));
  solution.G2 -= Eigen::MatrixXd(plant.d_diag.asDiagonal());
  solution.iterations = 0;
  solution.residual = dare_residual(build_augmented(plant), solution.X);
  return solution;
}

DareSolution solve_plant_dare(const Plant& plant, const DareOptions& options) {
  if (is_nilpotent_degree_two(plant.A)) {
    DareSolution candidate = nilpotent_closed_form(plant);
    if (candidate.residual <= 1e-9 * std::max(1.0, candidate.X.norm())) {
      return candidate;
    }
  }
  return solve_dare(build_augmented(plant), options);
}

double dare_residual(const AugmentedSystem& aug, const Eigen::MatrixXd& X) {
  return static_cast<double>(residual_ld(aug.A_tilde.cast<long double>(),
                                         aug.B_tilde.cast<long double>(),
                                         X.cast<long double>()));
}

}  // namespace dac
