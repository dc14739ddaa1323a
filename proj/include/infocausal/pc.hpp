#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infocausal/dag.hpp"
#include "infocausal/markov.hpp"
#include "infocausal/measure.hpp"

namespace infocausal {

/// Answers "is s independent of t given u" over graph nodes. Implementations
/// must be deterministic, symmetric in s and t, and safe for concurrent use.
class IndependenceOracle {
 public:
  virtual ~IndependenceOracle() = default;
  virtual std::size_t node_count() const = 0;
  virtual IndependenceDecision query(NodeSet s, NodeSet t, NodeSet u) const = 0;
};

/// Perfect oracle from d-separation in a known DAG. The reported value is
/// 0 for separated and 1 for connected sets, with threshold 0.5.
class DSeparationOracle final : public IndependenceOracle {
 public:
  explicit DSeparationOracle(Dag g) : g_(std::move(g)) {}
  std::size_t node_count() const override { return g_.node_count(); }
  IndependenceDecision query(NodeSet s, NodeSet t, NodeSet u) const override;

 private:
  Dag g_;
};

/// Thresholded conditional mutual information. Node j is observation map[j];
/// `background` is joined into every conditioning set.
class MeasureOracle final : public IndependenceOracle {
 public:
  MeasureOracle(std::shared_ptr<const InformationMeasure> m, NodeMap map, double threshold,
                Element background = {});
  std::size_t node_count() const override { return map_.size(); }
  IndependenceDecision query(NodeSet s, NodeSet t, NodeSet u) const override;

 private:
  std::shared_ptr<const InformationMeasure> m_;
  NodeMap map_;
  double threshold_;
  Element background_;
};

struct OracleCall {
  NodeSet s, t, u;
  IndependenceDecision decision;
};

/// Thrown when a LoggingOracle runs past its call budget.
class BudgetExhaustedError : public std::runtime_error {
 public:
  BudgetExhaustedError(std::size_t budget, std::vector<OracleCall> log)
      : std::runtime_error("oracle call budget of " + std::to_string(budget) + " exhausted"),
        log_(std::move(log)) {}
  const std::vector<OracleCall>& log() const { return log_; }

 private:
  std::vector<OracleCall> log_;
};

/// Records every query in call order; optionally enforces a call budget.
class LoggingOracle final : public IndependenceOracle {
 public:
  explicit LoggingOracle(const IndependenceOracle& inner,
                         std::optional<std::size_t> call_budget = std::nullopt)
      : inner_(inner), budget_(call_budget) {}
  std::size_t node_count() const override { return inner_.node_count(); }
  IndependenceDecision query(NodeSet s, NodeSet t, NodeSet u) const override;

  std::vector<OracleCall> log() const;

 private:
  const IndependenceOracle& inner_;
  std::optional<std::size_t> budget_;
  mutable std::mutex mu_;
  mutable std::vector<OracleCall> log_;
};

/// Answers from a recorded log. Queries absent from the log throw InputError.
class ReplayOracle final : public IndependenceOracle {
 public:
  ReplayOracle(std::size_t node_count, const std::vector<OracleCall>& log);
  std::size_t node_count() const override { return n_; }
  IndependenceDecision query(NodeSet s, NodeSet t, NodeSet u) const override;

 private:
  std::size_t n_;
  std::map<std::tuple<NodeSet, NodeSet, NodeSet>, IndependenceDecision> answers_;
};

/// CSV with header "s,t,u,cmi,threshold,independent"; sets are written as
/// space-separated node names.
void write_call_log_csv(std::ostream& out, const std::vector<OracleCall>& log,
                        const std::vector<std::string>& names);

/// Separating set per unordered pair.
class SepsetMap {
 public:
  void set(std::size_t a, std::size_t b, NodeSet u);
  bool contains(std::size_t a, std::size_t b) const;
  /// Throws StructuralError when no set was recorded.
  NodeSet at(std::size_t a, std::size_t b) const;
  const std::map<std::pair<std::size_t, std::size_t>, NodeSet>& entries() const { return map_; }

 private:
  std::map<std::pair<std::size_t, std::size_t>, NodeSet> map_;
};

struct SkeletonOptions {
  /// Largest conditioning set tried; nullopt means |X| - 2.
  std::optional<std::size_t> max_conditioning;
  /// Draw conditioning sets from the current neighbours of a and b instead
  /// of all other nodes. Classic PC behaviour; no minimality guarantee.
  bool adjacency_restricted = false;
};

struct Skeleton {
  std::vector<NodeSet> adjacency;
  SepsetMap sepsets;

  bool adjacent(std::size_t a, std::size_t b) const { return adjacency[a].contains(b); }
};

/// Removes a-b when some conditioning set renders a and b independent. Sets are
/// tried by increasing size, lexicographically within a size, so the recorded
/// sepset is the first cardinality-minimal one.
Skeleton pc_skeleton(const IndependenceOracle& oracle, const SkeletonOptions& opts = {});

/// Partially directed graph. An adjacency is undirected unless oriented.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<NodeSet> adjacency);

  std::size_t node_count() const { return adjacency_.size(); }
  bool adjacent(std::size_t a, std::size_t b) const { return adjacency_[a].contains(b); }
  /// a -> b.
  bool directed(std::size_t a, std::size_t b) const { return children_[a].contains(b); }
  bool undirected(std::size_t a, std::size_t b) const {
    return adjacent(a, b) && !directed(a, b) && !directed(b, a);
  }
  /// Orients a -> b. Throws InputError if not adjacent, InconsistencyError if
  /// already oriented b -> a.
  void orient(std::size_t a, std::size_t b);
  const std::vector<NodeSet>& adjacency() const { return adjacency_; }
  std::size_t edge_count() const;
  std::size_t oriented_count() const;
  bool has_directed_cycle() const;

  /// Orientations that a v-structure proposed but an earlier one contradicted.
  std::vector<std::pair<std::size_t, std::size_t>> conflicts;

  nlohmann::json to_json(const std::vector<std::string>& names = {}) const;
  /// Lines "a -> b" and "a -- b", ordered by (smaller, larger) endpoint.
  std::string to_string(const std::vector<std::string>& names = {}) const;

  friend bool operator==(const Pattern& x, const Pattern& y) {
    return x.adjacency_ == y.adjacency_ && x.children_ == y.children_;
  }

 private:
  std::vector<NodeSet> adjacency_;
  std::vector<NodeSet> children_;
};

/// a -> b <- c for each unshielded a - b - c with b outside sepset(a, c).
/// Orientations contradicting an earlier one are skipped and listed in
/// Pattern::conflicts. A missing sepset is a StructuralError.
Pattern orient_v_structures(const Skeleton& skel);

/// Closes the pattern under the Meek rules R1-R3. Throws InconsistencyError
/// when one edge is forced both ways or a directed cycle appears.
Pattern propagate_orientations(Pattern p);

struct PcResult {
  Skeleton skeleton;
  Pattern pattern;
};

PcResult run_pc(const IndependenceOracle& oracle, const SkeletonOptions& opts = {});

/// Completed pattern of the Markov equivalence class of g.
Pattern cpdag(const Dag& g);

}  // namespace infocausal
