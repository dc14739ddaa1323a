#include "infocausal/dag.hpp"

#include <deque>
#include <fstream>
#include <sstream>

#include "infocausal/errors.hpp"

namespace infocausal {

Dag::Dag(std::size_t node_count) : parents_(node_count), children_(node_count) {
  if (node_count > IndexSet::kCapacity) throw InputError("graphs are limited to 64 nodes");
}

Dag::Dag(std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : Dag(node_count) {
  for (const auto& [p, c] : edges) add_edge(p, c);
}

void Dag::check_node(std::size_t v) const {
  if (v >= node_count()) throw InputError("unknown node " + std::to_string(v));
}

void Dag::add_edge(std::size_t parent, std::size_t child) {
  check_node(parent);
  check_node(child);
  if (parent == child) throw InputError("self-loop on node " + std::to_string(parent));
  if (has_edge(parent, child)) return;
  if (parent == child || descendants(child).contains(parent)) {
    throw InputError("edge " + std::to_string(parent) + " -> " + std::to_string(child) +
                     " would create a cycle");
  }
  parents_[child] = parents_[child].with(parent);
  children_[parent] = children_[parent].with(child);
}

bool Dag::has_edge(std::size_t parent, std::size_t child) const {
  check_node(parent);
  check_node(child);
  return children_[parent].contains(child);
}

std::vector<std::pair<std::size_t, std::size_t>> Dag::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < node_count(); ++p) {
    for (std::size_t c : children_[p]) out.emplace_back(p, c);
  }
  return out;
}

std::size_t Dag::edge_count() const {
  std::size_t n = 0;
  for (const auto& ch : children_) n += ch.size();
  return n;
}

NodeSet Dag::parents(std::size_t v) const {
  check_node(v);
  return parents_[v];
}

NodeSet Dag::children(std::size_t v) const {
  check_node(v);
  return children_[v];
}

NodeSet Dag::descendants(std::size_t v) const {
  check_node(v);
  NodeSet seen;
  NodeSet frontier = children_[v];
  while (!frontier.empty()) {
    seen = seen | frontier;
    NodeSet next;
    for (std::size_t u : frontier) next = next | children_[u];
    frontier = next.minus(seen);
  }
  return seen;
}

NodeSet Dag::ancestors(std::size_t v) const {
  check_node(v);
  NodeSet seen;
  NodeSet frontier = parents_[v];
  while (!frontier.empty()) {
    seen = seen | frontier;
    NodeSet next;
    for (std::size_t u : frontier) next = next | parents_[u];
    frontier = next.minus(seen);
  }
  return seen;
}

NodeSet Dag::non_descendants(std::size_t v) const {
  return nodes().minus(descendants(v)).minus(parents(v)).without(v);
}

NodeSet Dag::ancestral_closure(NodeSet s) const {
  if (s.span() > node_count()) throw InputError("set names unknown nodes");
  NodeSet out = s;
  for (std::size_t v : s) out = out | ancestors(v);
  return out;
}

bool Dag::is_ancestral(NodeSet s) const { return ancestral_closure(s) == s; }

std::vector<std::size_t> Dag::topological_order() const {
  std::vector<std::size_t> order;
  NodeSet placed;
  while (order.size() < node_count()) {
    for (std::size_t v = 0; v < node_count(); ++v) {
      if (!placed.contains(v) && parents_[v].subset_of(placed)) {
        order.push_back(v);
        placed = placed.with(v);
        break;
      }
    }
  }
  return order;
}

bool d_separated(const Dag& g, NodeSet a, NodeSet b, NodeSet c) {
  const std::size_t n = g.node_count();
  if (a.span() > n || b.span() > n || c.span() > n) throw InputError("set names unknown nodes");
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) {
    throw InputError("d-separation requires pairwise disjoint sets");
  }
  // Nodes with a descendant in C (including C): colliders there are open.
  const NodeSet c_anc = g.ancestral_closure(c);

  // Reachability over (node, arrived-from-child?) states.
  NodeSet up_seen, down_seen, reached;
  std::deque<std::pair<std::size_t, bool>> queue;
  for (std::size_t v : a) queue.emplace_back(v, true);
  while (!queue.empty()) {
    const auto [v, up] = queue.front();
    queue.pop_front();
    NodeSet& seen = up ? up_seen : down_seen;
    if (seen.contains(v)) continue;
    seen = seen.with(v);
    if (!c.contains(v)) reached = reached.with(v);
    if (up && !c.contains(v)) {
      for (std::size_t p : g.parents(v)) queue.emplace_back(p, true);
      for (std::size_t ch : g.children(v)) queue.emplace_back(ch, false);
    } else if (!up) {
      if (!c.contains(v)) {
        for (std::size_t ch : g.children(v)) queue.emplace_back(ch, false);
      }
      if (c_anc.contains(v)) {
        for (std::size_t p : g.parents(v)) queue.emplace_back(p, true);
      }
    }
  }
  return reached.disjoint(b);
}

std::size_t NamedDag::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw InputError("unknown node '" + name + "'");
}

NamedDag parse_dag(std::istream& in) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto intern = [&](const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    names.push_back(name);
    return names.size() - 1;
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // Accept "a->b" as well as "a -> b".
    for (auto arrow = line.find("->"); arrow != std::string::npos; arrow = line.find("->", arrow + 4)) {
      line.replace(arrow, 2, " -> ");
    }
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() == 1) {
      intern(tokens[0]);
    } else if (tokens.size() == 3 && tokens[1] == "->") {
      const std::size_t p = intern(tokens[0]);
      const std::size_t c = intern(tokens[2]);
      edges.emplace_back(p, c);
    } else {
      throw InputError("dag line " + std::to_string(lineno) + ": expected 'parent -> child'");
    }
  }
  return {Dag(names.size(), edges), names};
}

NamedDag load_dag(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dag file '" + path + "'");
  return parse_dag(in);
}

std::string format_dag(const NamedDag& dag) {
  std::ostringstream os;
  NodeSet mentioned;
  for (const auto& [p, c] : dag.graph.edges()) {
    os << dag.names[p] << " -> " << dag.names[c] << '\n';
    mentioned = mentioned.with(p).with(c);
  }
  for (std::size_t v = 0; v < dag.names.size(); ++v) {
    if (!mentioned.contains(v)) os << dag.names[v] << '\n';
  }
  return os.str();
}

NodeSet ExtendedDag::noise_nodes() const {
  return IndexSet::range(2 * base_count).minus(IndexSet::range(base_count));
}

ExtendedDag extend_graph(const Dag& g) {
  const std::size_t k = g.node_count();
  if (2 * k > IndexSet::kCapacity) throw InputError("extended graph would exceed 64 nodes");
  ExtendedDag ext{Dag(2 * k), k};
  for (const auto& [p, c] : g.edges()) ext.graph.add_edge(p, c);
  for (std::size_t j = 0; j < k; ++j) ext.graph.add_edge(k + j, j);
  return ext;
}

std::vector<Dag> enumerate_dags(std::size_t n) {
  if (n > 5) throw SizeGuardError("DAG enumeration limited to 5 nodes");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  std::vector<Dag> out;
  for (std::size_t code = 0; code < total; ++code) {
    Dag g(n);
    bool ok = true;
    std::size_t rest = code;
    for (const auto& [i, j] : pairs) {
      const std::size_t choice = rest % 3;
      rest /= 3;
      if (choice == 0) continue;
      const std::size_t p = choice == 1 ? i : j;
      const std::size_t c = choice == 1 ? j : i;
      if (g.descendants(c).contains(p)) {
        ok = false;
        break;
      }
      g.add_edge(p, c);
    }
    if (ok) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace infocausal
