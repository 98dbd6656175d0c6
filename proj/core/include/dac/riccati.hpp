#pragma once

#include <Eigen/Core>

#include <stdexcept>

#include "dac/model.hpp"

namespace dac {

// Disturbance-accommodation state (x, xi) with xi = u + w:
//   A_tilde = [ A  B ]    B_tilde = [ 0 ]
//             [ 0  D ],             [ I ].
// (A_tilde, B_tilde) is controllable for every valid plant because B is
// invertible.
struct AugmentedSystem {
  Eigen::MatrixXd A_tilde;
  Eigen::MatrixXd B_tilde;

  Eigen::Index plant_dim() const { return B_tilde.cols(); }
};

AugmentedSystem build_augmented(const Plant& plant);

// Solution of the Riccati fixed point with unit state weight and no input
// penalty:
//   A~' X B~ (B~' X B~)^-1 B~' X A~ - A~' X A~ + X - I = 0,
// together with the feedback gains [G1 G2] = -(B~' X B~)^-1 B~' X A~.
// X is symmetric positive definite; residual is the Frobenius norm of the
// equation's left-hand side evaluated for the stored X.
struct DareSolution {
  Eigen::MatrixXd X;
  Eigen::MatrixXd G1;
  Eigen::MatrixXd G2;
  double residual = 0.0;
  long iterations = 0;

  Eigen::Index plant_dim() const { return G1.rows(); }
  Eigen::MatrixXd X11() const { const auto n = plant_dim(); return X.topLeftCorner(n, n); }
  Eigen::MatrixXd X12() const { const auto n = plant_dim(); return X.topRightCorner(n, n); }
  Eigen::MatrixXd X22() const { const auto n = plant_dim(); return X.bottomRightCorner(n, n); }
};

struct DareOptions {
  double tol = 1e-12;
  long max_iter = 100000;
};

class DareError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value iteration X <- A~' X A~ - A~' X B~ (B~' X B~)^-1 B~' X A~ + I from
// X = I, symmetrized every step, stopping when the step size drops below
// tol * max(1, ||X||_F). Iterates in extended precision so the residual of
// the returned double matrix is limited by representation, not accumulation.
// Throws DareError on non-convergence or loss of positive definiteness.
DareSolution solve_dare(const AugmentedSystem& aug, const DareOptions& options = {});

// ||A^2||_F <= 1e-12 * max(1, ||A||_F^2).
bool is_nilpotent_degree_two(const Eigen::MatrixXd& a);

// Closed-form candidate for plants with A^2 = 0:
//   X = [ A'A + I              A'B                ]
//       [ B A      (AB)'(I+B^2)^-1(AB) + I + B^2  ]
// with G1 = 0 and G2 = -(I+B^2)^-1 B A B - D. The formula solves the fixed
// point exactly only when additionally A B^2 (I+B^2)^-1 A = 0, which holds
// for uniform actuation (B = b I) and whenever the support of A has no
// length-two path; the residual field reports the defect otherwise.
// Throws std::invalid_argument when A fails the nilpotency test.
DareSolution nilpotent_closed_form(const Plant& plant);

// The closed form when it is exact for this plant, value iteration otherwise.
DareSolution solve_plant_dare(const Plant& plant, const DareOptions& options = {});

// Residual of the fixed-point equation at X, evaluated in extended precision.
double dare_residual(const AugmentedSystem& aug, const Eigen::MatrixXd& X);

}  // namespace dac
