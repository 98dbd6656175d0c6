#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dac/graph.hpp"

namespace dac {

// Interconnected scalar subsystems
//   x(k+1) = A x(k) + B (u(k) + w(k)),   x(0) = x0,
//   w(k+1) = D w(k),                     w(0) = w0,
// with B and D diagonal, stored as their diagonals so non-diagonal values are
// unrepresentable. epsilon is the class-level lower bound on |b_ii|.
struct Plant {
  Eigen::MatrixXd A;
  Eigen::VectorXd b_diag;
  Eigen::VectorXd d_diag;
  Eigen::VectorXd x0;
  Eigen::VectorXd w0;
  double epsilon = 0.0;

  Eigen::Index n() const { return A.rows(); }
};

// Dynamic state-feedback controller
//   x_K(k+1) = A_K x_K(k) + B_K x(k),   x_K(0) = 0,
//   u(k)     = C_K x_K(k) + D_K x(k).
// The internal state always starts at zero; realizations are kept exactly as
// synthesized, with no minimal-realization reduction.
struct Controller {
  Eigen::MatrixXd A_K;
  Eigen::MatrixXd B_K;
  Eigen::MatrixXd C_K;
  Eigen::MatrixXd D_K;

  Eigen::Index order() const { return A_K.rows(); }
  Eigen::Index plant_dim() const { return D_K.rows(); }
};

enum class CostMethod { closed_form, simulated };

struct CostReport {
  double value = 0.0;  // +infinity when not converged
  CostMethod method = CostMethod::closed_form;
  bool converged = true;
  long horizon_used = 0;
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Membership checks for the plant class: min_i |b_ii| >= epsilon > 0, the
// sparsity of A contained in the plant graph, all vectors of length n, and
// every entry finite. Each violation is reported with its field and index.
ValidationReport validate_plant(const Plant& plant, const DirectedGraph& plant_graph);

// Structural pattern of the controller transfer matrix
// K(z) = C_K (zI - A_K)^-1 B_K + D_K: entry (i, j) is present iff
// |D_K(i,j)| > tol or some state reachable into row i of C_K through the
// A_K pattern picks up column j of B_K. No-cancellation assumption.
DirectedGraph controller_sparsity(const Controller& controller, double tol = 0.0);

// File-format failure with the offending field path. Kind distinguishes a
// schema violation (missing/ill-typed field), a non-finite number, and a
// dimension mismatch.
class SchemaError : public std::runtime_error {
 public:
  enum class Kind { schema, non_finite, dimension };

  SchemaError(Kind kind, std::string field, const std::string& message)
      : std::runtime_error(message + " (field: " + field + ")"),
        kind_(kind),
        field_(std::move(field)) {}

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

// JSON de/serialization. Round-trip is bit-exact for finite values; parsing
// rejects NaN and infinities.
Plant load_plant(const std::filesystem::path& path);
void save_plant(const Plant& plant, const std::filesystem::path& path);
Controller load_controller(const std::filesystem::path& path);
void save_controller(const Controller& controller, const std::filesystem::path& path);

Plant parse_plant(const std::string& text);
std::string format_plant(const Plant& plant);
Controller parse_controller(const std::string& text);
std::string format_controller(const Controller& controller);

}  // namespace dac
