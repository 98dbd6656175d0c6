#include "dac/model.hpp"

#include <cmath>
#include <sstream>

namespace dac {

std::string ValidationReport::summary() const {
  if (ok()) return "plant: all checks pass";
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << v.field << ": " << v.message << "\n";
  }
  return out.str();
}

namespace {

void check_length(std::vector<Violation>& violations, const Eigen::VectorXd& v,
                  Eigen::Index n, const char* field) {
  if (v.size() != n) {
    violations.push_back({field, "length " + std::to_string(v.size()) +
                                     " does not match n = " + std::to_string(n)});
  }
}

void check_finite(std::vector<Violation>& violations, const Eigen::MatrixXd& m,
                  const char* field) {
  if (!m.allFinite()) {
    violations.push_back({field, "contains a non-finite entry"});
  }
}

}  // namespace

ValidationReport validate_plant(const Plant& plant, const DirectedGraph& plant_graph) {
  ValidationReport report;
  auto& out = report.violations;
  const Eigen::Index n = plant.n();

  if (plant.A.rows() != plant.A.cols()) {
    out.push_back({"A", "must be square"});
    return report;
  }
  if (plant_graph.node_count() != n) {
    out.push_back({"A", "plant graph has " + std::to_string(plant_graph.node_count()) +
                            " nodes but n = " + std::to_string(n)});
    return report;
  }
  check_length(out, plant.b_diag, n, "b_diag");
  check_length(out, plant.d_diag, n, "d_diag");
  check_length(out, plant.x0, n, "x0");
  check_length(out, plant.w0, n, "w0");
  check_finite(out, plant.A, "A");
  check_finite(out, plant.b_diag, "b_diag");
  check_finite(out, plant.d_diag, "d_diag");
  check_finite(out, plant.x0, "x0");
  check_finite(out, plant.w0, "w0");
  if (!std::isfinite(plant.epsilon) || plant.epsilon <= 0.0) {
    out.push_back({"epsilon", "must be a positive finite number"});
  }

  if (plant.b_diag.size() == n && plant.epsilon > 0.0) {
    // B is diagonal, so sigma_min(B) = min_i |b_ii|.
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(plant.b_diag(i)) < plant.epsilon) {
        out.push_back({"b_diag", "sigma_min(B) < epsilon: |b_" + std::to_string(i) +
                                     std::to_string(i) + "| = " +
                                     std::to_string(std::abs(plant.b_diag(i)))});
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (plant.A(i, j) != 0.0 && !plant_graph.edge(j, i)) {
        out.push_back({"A", "A violates plant graph: a_" + std::to_string(i) +
                                std::to_string(j) + " = " + std::to_string(plant.A(i, j)) +
                                " but edge (" + std::to_string(j) + " -> " +
                                std::to_string(i) + ") is absent"});
      }
    }
  }
  return report;
}

DirectedGraph controller_sparsity(const Controller& controller, double tol) {
  const Eigen::Index n = controller.plant_dim();
  const Eigen::Index m = controller.order();

  // reach(s, t) == true iff state t reaches state s through the A_K pattern
  // (any path length, including zero).
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> reach(m, m);
  for (Eigen::Index s = 0; s < m; ++s) {
    for (Eigen::Index t = 0; t < m; ++t) {
      reach(s, t) = (s == t) || std::abs(controller.A_K(s, t)) > tol;
    }
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index s = 0; s < m; ++s) {
      for (Eigen::Index t = 0; t < m; ++t) {
        reach(s, t) = reach(s, t) || (reach(s, k) && reach(k, t));
      }
    }
  }

  Eigen::MatrixXi pattern = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      bool present = std::abs(controller.D_K(i, j)) > tol;
      for (Eigen::Index s = 0; s < m && !present; ++s) {
        if (std::abs(controller.C_K(i, s)) <= tol) continue;
        for (Eigen::Index t = 0; t < m && !present; ++t) {
          present = reach(s, t) && std::abs(controller.B_K(t, j)) > tol;
        }
      }
      pattern(i, j) = present ? 1 : 0;
    }
  }
  return DirectedGraph(pattern);
}

}  // namespace dac
