#include "infocausal/markov.hpp"

#include <algorithm>
#include <cmath>

#include "infocausal/errors.hpp"

namespace infocausal {

NodeMap identity_map(std::size_t n) {
  NodeMap map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i;
  return map;
}

Element to_element(NodeSet nodes, const NodeMap& map) {
  Element out;
  for (std::size_t v : nodes) {
    if (v >= map.size()) throw InputError("node " + std::to_string(v) + " has no observation");
    out = out.with(map[v]);
  }
  return out;
}

namespace {

void check_map(const Dag& g, const NodeMap& map) {
  if (map.size() != g.node_count()) {
    throw InputError("node map has " + std::to_string(map.size()) + " entries for " +
                     std::to_string(g.node_count()) + " nodes");
  }
}

}  // namespace

bool LocalMarkovSection::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

LocalMarkovSection local_markov_report(const Dag& g, const InformationMeasure& m,
                                       const NodeMap& map, double threshold) {
  check_map(g, map);
  LocalMarkovSection section;
  section.threshold = threshold;
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    LocalMarkovEntry e;
    e.node = j;
    e.parents = g.parents(j);
    e.non_descendants = g.non_descendants(j);
    e.cmi = cond_mutual_info(m, to_element(e.non_descendants, map),
                             to_element(NodeSet::single(j), map), to_element(e.parents, map));
    e.pass = e.cmi <= threshold;
    section.entries.push_back(e);
  }
  return section;
}

double decomposition_report(const Dag& g, const InformationMeasure& m, const NodeMap& map,
                            NodeSet ancestral) {
  check_map(g, map);
  if (!g.is_ancestral(ancestral)) {
    throw InputError("set " + ancestral.to_string() + " is not ancestral");
  }
  double sum = 0.0;
  for (std::size_t v : ancestral) {
    sum += cond_info(m, to_element(NodeSet::single(v), map), to_element(g.parents(v), map));
  }
  return joint_info(m, to_element(ancestral, map)) - sum;
}

bool DecompositionSection::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

DecompositionSection decomposition_section(const Dag& g, const InformationMeasure& m,
                                           const NodeMap& map, double tolerance) {
  DecompositionSection section;
  section.tolerance = tolerance;
  for_each_subset(g.nodes(), [&](NodeSet s) {
    if (!g.is_ancestral(s)) return;
    const double r = decomposition_report(g, m, map, s);
    section.entries.push_back({s, r, std::abs(r) <= tolerance});
  });
  return section;
}

std::vector<GlobalMarkovEntry> global_markov_report(const Dag& g, const InformationMeasure& m,
                                                    const NodeMap& map, double threshold,
                                                    const GlobalMarkovGuard& guard) {
  check_map(g, map);
  const std::size_t n = g.node_count();
  if (n > guard.max_nodes) {
    throw SizeGuardError("global Markov enumeration: " + std::to_string(n) +
                         " nodes exceeds guard " + std::to_string(guard.max_nodes));
  }
  std::vector<GlobalMarkovEntry> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  // Assign each node to: unused, A, B, C.
  for (std::size_t code = 0; code < total; ++code) {
    NodeSet part[4];
    std::size_t rest = code;
    for (std::size_t v = 0; v < n; ++v) {
      part[rest % 4] = part[rest % 4].with(v);
      rest /= 4;
    }
    const NodeSet a = part[1], b = part[2], c = part[3];
    if (a.empty() || b.empty() || a.first() > b.first()) continue;
    if (c.size() > guard.max_conditioning) continue;
    if (!d_separated(g, a, b, c)) continue;
    GlobalMarkovEntry e{a, b, c, true, 0.0, true};
    e.cmi = cond_mutual_info(m, to_element(a, map), to_element(b, map), to_element(c, map));
    e.pass = e.cmi <= threshold;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  });
  return out;
}

bool MarkovReport::global_pass() const {
  return std::all_of(global.begin(), global.end(), [](const auto& e) { return e.pass; });
}

MarkovReport markov_report(const Dag& g, const InformationMeasure& m, const NodeMap& map,
                           double tolerance, const GlobalMarkovGuard& guard) {
  MarkovReport report;
  report.local = local_markov_report(g, m, map, tolerance);
  report.decomposition = decomposition_section(g, m, map, tolerance);
  report.global = global_markov_report(g, m, map, tolerance, guard);
  return report;
}

nlohmann::json to_json(NodeSet s) { return s.members(); }

nlohmann::json MarkovReport::to_json() const {
  using nlohmann::json;
  json local_json = json::array();
  for (const auto& e : local.entries) {
    local_json.push_back({{"node", e.node},
                          {"parents", infocausal::to_json(e.parents)},
                          {"non_descendants", infocausal::to_json(e.non_descendants)},
                          {"cmi", e.cmi},
                          {"pass", e.pass}});
  }
  json decomp_json = json::array();
  for (const auto& e : decomposition.entries) {
    decomp_json.push_back(
        {{"set", infocausal::to_json(e.set)}, {"residual", e.residual}, {"pass", e.pass}});
  }
  json global_json = json::array();
  for (const auto& e : global) {
    global_json.push_back({{"a", infocausal::to_json(e.a)},
                           {"b", infocausal::to_json(e.b)},
                           {"c", infocausal::to_json(e.c)},
                           {"d_separated", e.d_separated},
                           {"cmi", e.cmi},
                           {"pass", e.pass}});
  }
  return {{"local", {{"threshold", local.threshold}, {"pass", local.pass()}, {"entries", local_json}}},
          {"decomposition",
           {{"tolerance", decomposition.tolerance},
            {"pass", decomposition.pass()},
            {"entries", decomp_json}}},
          {"global", {{"pass", global_pass()}, {"entries", global_json}}}};
}

FunctionalModelReport functional_model_check(const Dag& g, const InformationMeasure& m,
                                             const NodeMap& node_map, const NodeMap& noise_map,
                                             const FunctionalTolerances& tol) {
  check_map(g, node_map);
  if (noise_map.size() != g.node_count()) {
    throw InputError("noise assignment must name one observation per node");
  }
  FunctionalModelReport rep;
  rep.premises_hold = true;
  Element all_noise;
  for (std::size_t v = 0; v < noise_map.size(); ++v) all_noise = all_noise.with(noise_map[v]);

  for (std::size_t j = 0; j < g.node_count(); ++j) {
    const Element x = Element::single(node_map[j]);
    const Element pa_n = to_element(g.parents(j), node_map).with(noise_map[j]);
    const double gap = joint_info(m, x | pa_n) - joint_info(m, pa_n);
    rep.information_gap.push_back(gap);
    if (gap > tol.premise) rep.premises_hold = false;

    const Element nj = Element::single(noise_map[j]);
    const double dep = mutual_info(m, nj, all_noise.minus(nj));
    rep.noise_dependence.push_back(dep);
    if (dep > tol.independence) rep.premises_hold = false;
  }
  rep.local = local_markov_report(g, m, node_map, tol.cmc);
  return rep;
}

nlohmann::json FunctionalModelReport::to_json() const {
  nlohmann::json local_json = nlohmann::json::array();
  for (const auto& e : local.entries) {
    local_json.push_back({{"node", e.node}, {"cmi", e.cmi}, {"pass", e.pass}});
  }
  return {{"information_gap", information_gap},
          {"noise_dependence", noise_dependence},
          {"premises_hold", premises_hold},
          {"local_pass", local.pass()},
          {"local", local_json},
          {"implication_holds", implication_holds()}};
}

}  // namespace infocausal
