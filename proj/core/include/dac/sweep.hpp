#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dac/evaluation.hpp"

namespace dac {

// Two-node family realizing the worst-case deadbeat ratio in the limit
// r -> infinity: A = r e2 e1', B = eps I, D = I, with the matched initial
// state and disturbance
//   x0 = (eps^2+1)(sqrt(4 eps^2+1)+1) / (2 eps r) e1,
//   w0 = (eps^2+1)(sqrt(4 eps^2+1)+1) / (2 eps^2 r) e1 - e2.
// Throws std::invalid_argument for eps <= 0 or r = 0.
Plant family_thm1(double eps, double r);

// Two-node family whose second node is a sink with self-gain r:
// A = r e2 e2', B = eps I, D = I, x0 = 0, w0 = e2. The sink-aware design
// strictly beats the deadbeat on it for r != 0.
Plant family_sink(double eps, double r);

// Three-node path 1 -> 2 -> 3: A = r e2 e1' + s e3 e2', B = eps I, D = I,
// x0 = 0, w0 = e1.
Plant family_path(double eps, double r, double s);

enum class Family { thm1, sink, path };

std::string family_name(Family family);
// Accepts "thm1", "sink", "path". Throws std::invalid_argument.
Family parse_family(const std::string& name);

struct SweepPoint {
  double r = 0.0;
  std::optional<double> s;  // required by the path family only
};

struct SweepRow {
  Family family = Family::thm1;
  double eps = 0.0;
  double r = 0.0;
  std::optional<double> s;
  Strategy strategy = Strategy::deadbeat;
  double cost = 0.0;
  double cost_opt = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  bool within_bound = false;
  bool converged = false;
  std::string error;  // empty when the row evaluated cleanly
};

// One row per (point, strategy), in grid-major order regardless of the
// number of worker threads. Row failures are recorded in the row and never
// abort the sweep.
std::vector<SweepRow> run_sweep(Family family, double eps,
                                const std::vector<SweepPoint>& grid,
                                const std::vector<Strategy>& strategies, int jobs = 1,
                                const RatioOptions& options = {});

// CSV with header
//   family,eps,r,s,strategy,cost,cost_opt,ratio,bound,within_bound,converged
// and floats printed with up to 17 significant digits. The s column is empty
// for families without a second parameter.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// JSON mirror of the CSV; non-finite costs serialize as null and failed rows
// carry an "error" string.
void write_sweep_json(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace dac
