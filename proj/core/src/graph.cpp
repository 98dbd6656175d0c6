#include "dac/graph.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dac {

DirectedGraph::DirectedGraph(Eigen::Index node_count)
    : adjacency_(Eigen::MatrixXi::Zero(node_count, node_count)) {
  if (node_count <= 0) {
    throw std::invalid_argument("DirectedGraph: node_count must be positive");
  }
}

DirectedGraph::DirectedGraph(Eigen::MatrixXi adjacency) : adjacency_(std::move(adjacency)) {
  if (adjacency_.rows() == 0 || adjacency_.rows() != adjacency_.cols()) {
    throw std::invalid_argument("DirectedGraph: adjacency must be square and non-empty");
  }
  if (((adjacency_.array() != 0) && (adjacency_.array() != 1)).any()) {
    throw std::invalid_argument("DirectedGraph: adjacency entries must be 0 or 1");
  }
}

DirectedGraph DirectedGraph::complete(Eigen::Index node_count) {
  return DirectedGraph(Eigen::MatrixXi::Ones(node_count, node_count));
}

DirectedGraph DirectedGraph::from_sparsity(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("from_sparsity: matrix must be square");
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("from_sparsity: tol must be nonnegative");
  }
  return DirectedGraph((a.array().abs() > tol).cast<int>().matrix());
}

void DirectedGraph::set_edge(Eigen::Index from, Eigen::Index to, bool present) {
  adjacency_(to, from) = present ? 1 : 0;
}

std::vector<Eigen::Index> DirectedGraph::sinks() const {
  std::vector<Eigen::Index> result;
  const Eigen::Index q = node_count();
  for (Eigen::Index i = 0; i < q; ++i) {
    bool outgoing = false;
    for (Eigen::Index j = 0; j < q && !outgoing; ++j) {
      outgoing = (j != i) && adjacency_(j, i) != 0;
    }
    if (!outgoing) result.push_back(i);
  }
  return result;
}

std::vector<Eigen::Index> DirectedGraph::isolated_nodes() const {
  std::vector<Eigen::Index> result;
  const Eigen::Index q = node_count();
  for (Eigen::Index i = 0; i < q; ++i) {
    bool incident = false;
    for (Eigen::Index j = 0; j < q && !incident; ++j) {
      incident = (j != i) && (adjacency_(j, i) != 0 || adjacency_(i, j) != 0);
    }
    if (!incident) result.push_back(i);
  }
  return result;
}

bool DirectedGraph::has_all_self_loops() const {
  return (adjacency_.diagonal().array() == 1).all();
}

bool DirectedGraph::is_supergraph_of(const DirectedGraph& other) const {
  if (node_count() != other.node_count()) {
    throw std::invalid_argument("is_supergraph_of: node counts differ");
  }
  return (other.adjacency_.array() <= adjacency_.array()).all();
}

std::vector<Eigen::Index> DirectedGraph::sink_last_permutation() const {
  const Eigen::Index q = node_count();
  std::vector<bool> is_sink(static_cast<std::size_t>(q), false);
  for (Eigen::Index i : sinks()) is_sink[static_cast<std::size_t>(i)] = true;
  std::vector<Eigen::Index> perm;
  perm.reserve(static_cast<std::size_t>(q));
  for (Eigen::Index i = 0; i < q; ++i) {
    if (!is_sink[static_cast<std::size_t>(i)]) perm.push_back(i);
  }
  for (Eigen::Index i = 0; i < q; ++i) {
    if (is_sink[static_cast<std::size_t>(i)]) perm.push_back(i);
  }
  return perm;
}

namespace {

void append_nodes(std::ostringstream& out, const std::vector<Eigen::Index>& nodes) {
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    out << (k == 0 ? " " : ", ") << nodes[k];
  }
}

}  // namespace

std::string StructureReport::summary() const {
  if (ok()) return "structure: all checks pass";
  std::ostringstream out;
  if (!plant_isolated_nodes.empty()) {
    out << "plant graph has isolated node(s):";
    append_nodes(out, plant_isolated_nodes);
    out << "\n";
  }
  if (!control_missing_self_loops.empty()) {
    out << "control graph missing self-loop(s) at:";
    append_nodes(out, control_missing_self_loops);
    out << "\n";
  }
  if (!design_missing_self_loops.empty()) {
    out << "design graph missing self-loop(s) at:";
    append_nodes(out, design_missing_self_loops);
    out << "\n";
  }
  if (!control_contains_plant) {
    out << "control graph is not a supergraph of the plant graph\n";
  }
  return out.str();
}

StructureReport validate_structure(const DirectedGraph& plant_graph,
                                   const DirectedGraph& control_graph,
                                   const DirectedGraph& design_graph) {
  if (plant_graph.node_count() != control_graph.node_count() ||
      plant_graph.node_count() != design_graph.node_count()) {
    throw std::invalid_argument("validate_structure: node counts differ");
  }
  StructureReport report;
  report.plant_isolated_nodes = plant_graph.isolated_nodes();
  for (Eigen::Index i = 0; i < control_graph.node_count(); ++i) {
    if (!control_graph.edge(i, i)) report.control_missing_self_loops.push_back(i);
    if (!design_graph.edge(i, i)) report.design_missing_self_loops.push_back(i);
  }
  report.control_contains_plant = control_graph.is_supergraph_of(plant_graph);
  return report;
}

}  // namespace dac
