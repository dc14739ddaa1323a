#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "infocausal/lattice.hpp"

namespace infocausal {

/// Directed acyclic graph over nodes 0..n-1 (n <= 64).
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::size_t node_count);
  /// Throws InputError on self-loops, unknown nodes or cycles.
  Dag(std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t node_count() const { return parents_.size(); }
  NodeSet nodes() const { return IndexSet::range(node_count()); }

  /// Adds parent -> child. Throws InputError if it would close a cycle.
  void add_edge(std::size_t parent, std::size_t child);
  bool has_edge(std::size_t parent, std::size_t child) const;
  bool adjacent(std::size_t a, std::size_t b) const {
    return has_edge(a, b) || has_edge(b, a);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const;

  NodeSet parents(std::size_t v) const;
  NodeSet children(std::size_t v) const;
  /// Proper descendants (v excluded).
  NodeSet descendants(std::size_t v) const;
  /// Proper ancestors (v excluded).
  NodeSet ancestors(std::size_t v) const;
  /// Nodes that are neither v, nor descendants of v, nor parents of v.
  NodeSet non_descendants(std::size_t v) const;
  /// Smallest ancestral set containing s.
  NodeSet ancestral_closure(NodeSet s) const;
  bool is_ancestral(NodeSet s) const;

  /// Nodes in an order where every parent precedes its children
  /// (smallest index first among ready nodes).
  std::vector<std::size_t> topological_order() const;

  friend bool operator==(const Dag&, const Dag&) = default;

 private:
  void check_node(std::size_t v) const;

  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
};

/// d-separation of A and B given C, by reachability along active trails.
/// Throws InputError when the sets overlap or name unknown nodes.
bool d_separated(const Dag& g, NodeSet a, NodeSet b, NodeSet c);

/// Dag with human-readable node names.
struct NamedDag {
  Dag graph;
  std::vector<std::string> names;

  std::size_t index_of(const std::string& name) const;
};

/// Text format: one edge per line "parent -> child"; a line holding a single
/// name declares an isolated node; '#' starts a comment. Nodes are numbered
/// in order of first appearance.
NamedDag parse_dag(std::istream& in);
NamedDag load_dag(const std::string& path);
std::string format_dag(const NamedDag& dag);

/// Base graph plus one parentless noise node n_j -> x_j per base node.
/// Base nodes keep indices 0..k-1; noise for node j is k + j.
struct ExtendedDag {
  Dag graph;
  std::size_t base_count = 0;

  std::size_t noise_of(std::size_t v) const { return base_count + v; }
  NodeSet noise_nodes() const;
};

ExtendedDag extend_graph(const Dag& g);

/// Every DAG on n labelled nodes (n <= 6), in a fixed deterministic order.
std::vector<Dag> enumerate_dags(std::size_t n);

}  // namespace infocausal
