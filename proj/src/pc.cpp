#include "infocausal/pc.hpp"

#include <algorithm>
#include <sstream>

#include "infocausal/errors.hpp"

namespace infocausal {

namespace {

void check_query(std::size_t n, NodeSet s, NodeSet t, NodeSet u) {
  if (s.span() > n || t.span() > n || u.span() > n) {
    throw InputError("oracle query names unknown nodes");
  }
}

std::string node_name(std::size_t v, const std::vector<std::string>& names) {
  return v < names.size() ? names[v] : "x" + std::to_string(v);
}

std::string set_names(NodeSet s, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t v : s) {
    if (!out.empty()) out += ' ';
    out += node_name(v, names);
  }
  return out;
}

}  // namespace

IndependenceDecision DSeparationOracle::query(NodeSet s, NodeSet t, NodeSet u) const {
  check_query(g_.node_count(), s, t, u);
  return make_decision(d_separated(g_, s, t, u) ? 0.0 : 1.0, 0.5);
}

MeasureOracle::MeasureOracle(std::shared_ptr<const InformationMeasure> m, NodeMap map,
                             double threshold, Element background)
    : m_(std::move(m)), map_(std::move(map)), threshold_(threshold), background_(background) {
  if (!m_) throw ConfigError("measure oracle needs a measure");
  if (background_.span() > m_->ground_size()) throw InputError("background outside ground set");
  for (std::size_t g : map_) {
    if (g >= m_->ground_size()) throw InputError("node map outside ground set");
    if (background_.contains(g)) throw InputError("background overlaps a node observation");
  }
  make_decision(0.0, threshold_);  // validates the threshold
}

IndependenceDecision MeasureOracle::query(NodeSet s, NodeSet t, NodeSet u) const {
  check_query(map_.size(), s, t, u);
  return decide_independence(*m_, to_element(s, map_), to_element(t, map_),
                             to_element(u, map_) | background_, threshold_);
}

IndependenceDecision LoggingOracle::query(NodeSet s, NodeSet t, NodeSet u) const {
  {
    std::lock_guard lock(mu_);
    if (budget_ && log_.size() >= *budget_) throw BudgetExhaustedError(*budget_, log_);
  }
  const IndependenceDecision d = inner_.query(s, t, u);
  std::lock_guard lock(mu_);
  log_.push_back({s, t, u, d});
  return d;
}

std::vector<OracleCall> LoggingOracle::log() const {
  std::lock_guard lock(mu_);
  return log_;
}

ReplayOracle::ReplayOracle(std::size_t node_count, const std::vector<OracleCall>& log)
    : n_(node_count) {
  for (const auto& call : log) {
    const auto [lo, hi] = std::minmax(call.s, call.t);
    answers_[{lo, hi, call.u}] = call.decision;
  }
}

IndependenceDecision ReplayOracle::query(NodeSet s, NodeSet t, NodeSet u) const {
  const auto [lo, hi] = std::minmax(s, t);
  const auto it = answers_.find({lo, hi, u});
  if (it == answers_.end()) {
    throw InputError("query " + s.to_string() + " : " + t.to_string() + " | " + u.to_string() +
                     " not in replay log");
  }
  return it->second;
}

void write_call_log_csv(std::ostream& out, const std::vector<OracleCall>& log,
                        const std::vector<std::string>& names) {
  out << "s,t,u,cmi,threshold,independent\n";
  for (const auto& c : log) {
    out << set_names(c.s, names) << ',' << set_names(c.t, names) << ','
        << set_names(c.u, names) << ',' << c.decision.cmi_value << ',' << c.decision.threshold
        << ',' << (c.decision.independent ? 1 : 0) << '\n';
  }
}

void SepsetMap::set(std::size_t a, std::size_t b, NodeSet u) {
  map_[std::minmax(a, b)] = u;
}

bool SepsetMap::contains(std::size_t a, std::size_t b) const {
  return map_.count(std::minmax(a, b)) > 0;
}

NodeSet SepsetMap::at(std::size_t a, std::size_t b) const {
  const auto it = map_.find(std::minmax(a, b));
  if (it == map_.end()) {
    throw StructuralError("no separating set recorded for " + std::to_string(a) + ", " +
                          std::to_string(b));
  }
  return it->second;
}

Skeleton pc_skeleton(const IndependenceOracle& oracle, const SkeletonOptions& opts) {
  const std::size_t n = oracle.node_count();
  if (n < 2) throw InputError("PC needs at least two nodes");
  const NodeSet all = IndexSet::range(n);
  Skeleton skel;
  skel.adjacency.resize(n);
  for (std::size_t v = 0; v < n; ++v) skel.adjacency[v] = all.without(v);

  const std::size_t max_k = opts.max_conditioning.value_or(n - 2);
  for (std::size_t k = 0; k <= max_k && k + 2 <= n; ++k) {
    // Candidate pools come from the adjacencies at the start of the level so
    // the result does not depend on the order pairs are visited.
    const std::vector<NodeSet> frozen = skel.adjacency;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!skel.adjacent(a, b)) continue;
        const NodeSet pool = opts.adjacency_restricted
                                 ? (frozen[a] | frozen[b]).without(a).without(b)
                                 : all.without(a).without(b);
        if (pool.size() < k) continue;
        for (NodeSet u : subsets_of_size(pool, k)) {
          if (oracle.query(NodeSet::single(a), NodeSet::single(b), u).independent) {
            skel.adjacency[a] = skel.adjacency[a].without(b);
            skel.adjacency[b] = skel.adjacency[b].without(a);
            skel.sepsets.set(a, b, u);
            break;
          }
        }
      }
    }
  }
  return skel;
}

Pattern::Pattern(std::vector<NodeSet> adjacency)
    : adjacency_(std::move(adjacency)), children_(adjacency_.size()) {
  for (std::size_t a = 0; a < adjacency_.size(); ++a) {
    for (std::size_t b : adjacency_[a]) {
      if (b >= adjacency_.size() || b == a || !adjacency_[b].contains(a)) {
        throw InputError("adjacency must be symmetric and loop-free");
      }
    }
  }
}

void Pattern::orient(std::size_t a, std::size_t b) {
  if (!adjacent(a, b)) {
    throw InputError("cannot orient non-adjacent " + std::to_string(a) + ", " + std::to_string(b));
  }
  if (directed(b, a)) {
    throw InconsistencyError("edge " + std::to_string(a) + " - " + std::to_string(b) +
                             " forced in both directions");
  }
  children_[a] = children_[a].with(b);
}

std::size_t Pattern::edge_count() const {
  std::size_t twice = 0;
  for (NodeSet s : adjacency_) twice += s.size();
  return twice / 2;
}

std::size_t Pattern::oriented_count() const {
  std::size_t n = 0;
  for (NodeSet s : children_) n += s.size();
  return n;
}

bool Pattern::has_directed_cycle() const {
  // Peel off nodes without incoming oriented edges.
  NodeSet remaining = IndexSet::range(node_count());
  bool progress = true;
  while (progress && !remaining.empty()) {
    progress = false;
    for (std::size_t v : remaining) {
      bool has_parent = false;
      for (std::size_t p : remaining) {
        if (children_[p].contains(v)) has_parent = true;
      }
      if (!has_parent) {
        remaining = remaining.without(v);
        progress = true;
      }
    }
  }
  return !remaining.empty();
}

nlohmann::json Pattern::to_json(const std::vector<std::string>& names) const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t v = 0; v < node_count(); ++v) nodes.push_back(node_name(v, names));
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t a = 0; a < node_count(); ++a) {
    for (std::size_t b : adjacency_[a]) {
      if (b < a) continue;
      if (directed(b, a)) {
        edges.push_back({{"from", node_name(b, names)}, {"to", node_name(a, names)},
                         {"oriented", true}});
      } else {
        edges.push_back({{"from", node_name(a, names)}, {"to", node_name(b, names)},
                         {"oriented", directed(a, b)}});
      }
    }
  }
  nlohmann::json conflict_json = nlohmann::json::array();
  for (const auto& [a, b] : conflicts) {
    conflict_json.push_back({node_name(a, names), node_name(b, names)});
  }
  return {{"nodes", nodes}, {"edges", edges}, {"conflicts", conflict_json}};
}

std::string Pattern::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  for (std::size_t a = 0; a < node_count(); ++a) {
    for (std::size_t b : adjacency_[a]) {
      if (b < a) continue;
      if (directed(a, b)) {
        os << node_name(a, names) << " -> " << node_name(b, names) << '\n';
      } else if (directed(b, a)) {
        os << node_name(b, names) << " -> " << node_name(a, names) << '\n';
      } else {
        os << node_name(a, names) << " -- " << node_name(b, names) << '\n';
      }
    }
  }
  return os.str();
}

Pattern orient_v_structures(const Skeleton& skel) {
  Pattern p(skel.adjacency);
  const std::size_t n = p.node_count();
  for (std::size_t b = 0; b < n; ++b) {
    const std::vector<std::size_t> nb = skel.adjacency[b].members();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const std::size_t a = nb[i], c = nb[j];
        if (skel.adjacent(a, c)) continue;
        if (skel.sepsets.at(a, c).contains(b)) continue;
        for (std::size_t x : {a, c}) {
          if (p.directed(b, x)) {
            p.conflicts.emplace_back(x, b);
          } else {
            p.orient(x, b);
          }
        }
      }
    }
  }
  return p;
}

Pattern propagate_orientations(Pattern p) {
  const std::size_t n = p.node_count();
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> forced;
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c : p.adjacency()[b]) {
        if (!p.undirected(b, c)) continue;
        bool force = false;
        // R1: a -> b - c, a and c non-adjacent.
        for (std::size_t a = 0; a < n && !force; ++a) {
          force = a != c && p.directed(a, b) && !p.adjacent(a, c);
        }
        // R2: b -> m -> c.
        for (std::size_t m = 0; m < n && !force; ++m) {
          force = p.directed(b, m) && p.directed(m, c);
        }
        // R3: b - x -> c, b - y -> c, x and y non-adjacent.
        for (std::size_t x = 0; x < n && !force; ++x) {
          if (!p.undirected(b, x) || !p.directed(x, c)) continue;
          for (std::size_t y = x + 1; y < n && !force; ++y) {
            force = p.undirected(b, y) && p.directed(y, c) && !p.adjacent(x, y);
          }
        }
        if (force) forced.emplace_back(b, c);
      }
    }
    if (forced.empty()) break;
    for (const auto& [b, c] : forced) {
      if (std::find(forced.begin(), forced.end(), std::make_pair(c, b)) != forced.end()) {
        throw InconsistencyError("edge " + std::to_string(std::min(b, c)) + " - " +
                                 std::to_string(std::max(b, c)) + " forced in both directions");
      }
    }
    for (const auto& [b, c] : forced) p.orient(b, c);
  }
  if (p.has_directed_cycle()) throw InconsistencyError("orientation produced a directed cycle");
  return p;
}

PcResult run_pc(const IndependenceOracle& oracle, const SkeletonOptions& opts) {
  PcResult r;
  r.skeleton = pc_skeleton(oracle, opts);
  r.pattern = propagate_orientations(orient_v_structures(r.skeleton));
  return r;
}

Pattern cpdag(const Dag& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeSet> adj(n);
  for (const auto& [a, b] : g.edges()) {
    adj[a] = adj[a].with(b);
    adj[b] = adj[b].with(a);
  }
  Pattern p(adj);
  for (std::size_t b = 0; b < n; ++b) {
    const std::vector<std::size_t> pa = g.parents(b).members();
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (g.adjacent(pa[i], pa[j])) continue;
        if (!p.directed(pa[i], b)) p.orient(pa[i], b);
        if (!p.directed(pa[j], b)) p.orient(pa[j], b);
      }
    }
  }
  return propagate_orientations(std::move(p));
}

}  // namespace infocausal
