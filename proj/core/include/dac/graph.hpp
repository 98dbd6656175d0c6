#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace dac {

// Directed graph over subsystem indices 0..q-1, possibly with self-loops.
// Adjacency convention: adjacency()(i, j) == 1 iff the edge (j -> i) exists,
// i.e. column = source, row = destination. With this convention a dynamics
// matrix A conforms to a graph when a_ij != 0 implies adjacency()(i, j) == 1.
class DirectedGraph {
 public:
  explicit DirectedGraph(Eigen::Index node_count);

  // Validates that the matrix is square with entries in {0, 1}.
  explicit DirectedGraph(Eigen::MatrixXi adjacency);

  // Complete graph including all self-loops.
  static DirectedGraph complete(Eigen::Index node_count);

  // Structural pattern of A: edge (j -> i) present iff |a_ij| > tol.
  static DirectedGraph from_sparsity(const Eigen::MatrixXd& a, double tol = 0.0);

  Eigen::Index node_count() const { return adjacency_.rows(); }
  const Eigen::MatrixXi& adjacency() const { return adjacency_; }

  bool edge(Eigen::Index from, Eigen::Index to) const { return adjacency_(to, from) != 0; }
  void set_edge(Eigen::Index from, Eigen::Index to, bool present = true);

  // Nodes with no outgoing edge to another node. Self-loops do not prevent
  // sinkness.
  std::vector<Eigen::Index> sinks() const;

  // Nodes with no incident edge to or from another node (self-loops ignored).
  std::vector<Eigen::Index> isolated_nodes() const;

  bool has_all_self_loops() const;

  // True iff other's edge set is a subset of this graph's edge set.
  // Throws std::invalid_argument on node-count mismatch.
  bool is_supergraph_of(const DirectedGraph& other) const;

  // Permutation that renumbers nodes so all sinks come last (stable within
  // the two groups). perm[k] is the original index of the node placed at
  // position k. Synthesis and evaluation accept any node order; this is a
  // convenience for viewing the adjacency in block-triangular form.
  std::vector<Eigen::Index> sink_last_permutation() const;

  bool operator==(const DirectedGraph& other) const = default;

 private:
  Eigen::MatrixXi adjacency_;
};

// Standing-assumption checks for a (plant, control, design) graph triple:
// the plant graph has no isolated node, the control and design graphs carry
// all self-loops, and the control graph is a supergraph of the plant graph.
// Report-style output; callers decide severity.
struct StructureReport {
  std::vector<Eigen::Index> plant_isolated_nodes;
  std::vector<Eigen::Index> control_missing_self_loops;
  std::vector<Eigen::Index> design_missing_self_loops;
  bool control_contains_plant = true;

  bool ok() const {
    return plant_isolated_nodes.empty() && control_missing_self_loops.empty() &&
           design_missing_self_loops.empty() && control_contains_plant;
  }
  std::string summary() const;
};

// Throws std::invalid_argument when the node counts differ.
StructureReport validate_structure(const DirectedGraph& plant_graph,
                                   const DirectedGraph& control_graph,
                                   const DirectedGraph& design_graph);

}  // namespace dac
