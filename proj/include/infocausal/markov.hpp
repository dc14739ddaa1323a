#pragma once

#include <cstddef>
#include <nlohmann/json.hpp>
#include <vector>

#include "infocausal/dag.hpp"
#include "infocausal/measure.hpp"

namespace infocausal {

/// Graph node index -> ground-set index of the measure.
using NodeMap = std::vector<std::size_t>;

/// Identity map 0..n-1.
NodeMap identity_map(std::size_t n);

/// Join of the ground observations of the given nodes.
Element to_element(NodeSet nodes, const NodeMap& map);

struct LocalMarkovEntry {
  std::size_t node = 0;
  NodeSet parents;
  NodeSet non_descendants;
  double cmi = 0.0;  // I(nd_j : x_j | pa_j)
  bool pass = true;
};

struct LocalMarkovSection {
  double threshold = 0.0;
  std::vector<LocalMarkovEntry> entries;

  bool pass() const;
};

/// I(nd_j : x_j | pa_j) <= threshold for every node j.
LocalMarkovSection local_markov_report(const Dag& g, const InformationMeasure& m,
                                       const NodeMap& map, double threshold);

/// R(A) - sum over x_i in A of R(x_i | pa_i). Throws InputError unless A is
/// ancestral in g.
double decomposition_report(const Dag& g, const InformationMeasure& m, const NodeMap& map,
                            NodeSet ancestral);

struct DecompositionEntry {
  NodeSet set;
  double residual = 0.0;
  bool pass = true;
};

struct DecompositionSection {
  double tolerance = 0.0;
  std::vector<DecompositionEntry> entries;

  bool pass() const;
};

/// Residuals on every ancestral set of g (including the empty set).
DecompositionSection decomposition_section(const Dag& g, const InformationMeasure& m,
                                           const NodeMap& map, double tolerance);

struct GlobalMarkovGuard {
  std::size_t max_nodes = 6;
  std::size_t max_conditioning = 4;
};

struct GlobalMarkovEntry {
  NodeSet a, b, c;
  bool d_separated = true;
  double cmi = 0.0;
  bool pass = true;
};

/// One entry per d-separated triple (A, B nonempty, min A < min B, |C| within
/// the guard). Throws SizeGuardError when the graph exceeds guard.max_nodes.
std::vector<GlobalMarkovEntry> global_markov_report(const Dag& g, const InformationMeasure& m,
                                                    const NodeMap& map, double threshold,
                                                    const GlobalMarkovGuard& guard = {});

struct MarkovReport {
  LocalMarkovSection local;
  DecompositionSection decomposition;
  std::vector<GlobalMarkovEntry> global;

  bool global_pass() const;
  nlohmann::json to_json() const;
};

/// All three sections from one measure (use a CachedMeasure to share work).
MarkovReport markov_report(const Dag& g, const InformationMeasure& m, const NodeMap& map,
                           double tolerance, const GlobalMarkovGuard& guard = {});

struct FunctionalTolerances {
  double premise = 1e-9;       // R(x_j, pa_j, n_j) - R(pa_j, n_j)
  double independence = 1e-9;  // I(n_j : n_-j)
  double cmc = 1e-9;           // local Markov threshold
};

struct FunctionalModelReport {
  std::vector<double> information_gap;
  std::vector<double> noise_dependence;
  bool premises_hold = false;
  LocalMarkovSection local;

  /// Premises imply the local Markov condition.
  bool implication_holds() const { return !premises_hold || local.pass(); }
  nlohmann::json to_json() const;
};

/// Checks the functional-model premises for g with noise observation
/// noise_map[j] for node j, and the local Markov condition.
FunctionalModelReport functional_model_check(const Dag& g, const InformationMeasure& m,
                                             const NodeMap& node_map, const NodeMap& noise_map,
                                             const FunctionalTolerances& tol);

nlohmann::json to_json(NodeSet s);

}  // namespace infocausal
