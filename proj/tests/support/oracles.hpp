#pragma once

// Brute-force reference implementations shared by the unit and acceptance
// tests. They deliberately avoid the library's graph algorithms.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "infocausal/dag.hpp"
#include "infocausal/pc.hpp"

namespace infocausal::testing {

/// Descendant sets (including the node) by repeated edge relaxation.
inline std::vector<std::uint64_t> naive_descendants(const Dag& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> d(n);
  for (std::size_t v = 0; v < n; ++v) d[v] = std::uint64_t{1} << v;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [p, c] : g.edges()) {
      const std::uint64_t next = d[p] | d[c];
      if (next != d[p]) {
        d[p] = next;
        changed = true;
      }
    }
  }
  return d;
}

/// d-separation by enumerating every simple path between a and b.
inline bool naive_d_separated(const Dag& g, const std::vector<std::uint64_t>& desc, std::size_t a,
                              std::size_t b, std::uint64_t c) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> path{a};
  std::uint64_t visited = std::uint64_t{1} << a;
  bool connected = false;
  std::function<void()> walk = [&] {
    if (connected) return;
    const std::size_t here = path.back();
    if (here == b) {
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        const std::size_t prev = path[i - 1], mid = path[i], next = path[i + 1];
        const bool collider = g.has_edge(prev, mid) && g.has_edge(next, mid);
        if (collider ? (desc[mid] & c) == 0 : ((c >> mid) & 1U) != 0) return;
      }
      connected = true;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (((visited >> v) & 1U) != 0 || !g.adjacent(here, v)) continue;
      visited |= std::uint64_t{1} << v;
      path.push_back(v);
      walk();
      path.pop_back();
      visited &= ~(std::uint64_t{1} << v);
    }
  };
  walk();
  return !connected;
}

inline bool naive_d_separated(const Dag& g, std::size_t a, std::size_t b, std::uint64_t c) {
  return naive_d_separated(g, naive_descendants(g), a, b, c);
}

/// Every pairwise separation statement of g, as a sorted key.
inline std::vector<std::uint64_t> separation_signature(const Dag& g) {
  const std::size_t n = g.node_count();
  const auto desc = naive_descendants(g);
  std::vector<std::uint64_t> sig;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
        if (((c >> a) & 1U) != 0 || ((c >> b) & 1U) != 0) continue;
        if (naive_d_separated(g, desc, a, b, c)) sig.push_back((c << 16) | (a << 8) | b);
      }
    }
  }
  return sig;
}

/// All DAGs on n nodes by filtering every orientation assignment for cycles.
inline std::vector<Dag> naive_all_dags(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<Dag> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t rest = code;
    for (const auto& [a, b] : pairs) {
      const std::size_t state = rest % 3;
      rest /= 3;
      if (state == 1) edges.emplace_back(a, b);
      if (state == 2) edges.emplace_back(b, a);
    }
    // Acyclic iff no node reaches itself through a nonempty path.
    Dag g(n);
    std::vector<std::uint64_t> reach(n, 0);
    for (const auto& [p, c] : edges) reach[p] |= std::uint64_t{1} << c;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t v = 0; v < n; ++v)
        if (((reach[v] >> k) & 1U) != 0) reach[v] |= reach[k];
    bool cyclic = false;
    for (std::size_t v = 0; v < n; ++v) cyclic |= ((reach[v] >> v) & 1U) != 0;
    if (cyclic) continue;
    for (const auto& [p, c] : edges) g.add_edge(p, c);
    out.push_back(g);
  }
  return out;
}

/// Reference CPDAGs: group DAGs by their separation statements, then an edge
/// is directed iff every member of the class orients it the same way.
class BruteForceCpdag {
 public:
  explicit BruteForceCpdag(std::size_t n) {
    for (const Dag& g : naive_all_dags(n)) classes_[separation_signature(g)].push_back(g);
  }

  std::size_t class_count() const { return classes_.size(); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [sig, members] : classes_) {
      const Pattern expected = pattern_of(members);
      for (const Dag& g : members) fn(g, expected);
    }
  }

  static Pattern pattern_of(const std::vector<Dag>& members) {
    const Dag& first = members.front();
    const std::size_t n = first.node_count();
    std::vector<NodeSet> adj(n);
    for (const auto& [p, c] : first.edges()) {
      adj[p] = adj[p].with(c);
      adj[c] = adj[c].with(p);
    }
    Pattern out(adj);
    for (const auto& [p, c] : first.edges()) {
      bool same = true;
      for (const Dag& g : members) same &= g.has_edge(p, c);
      if (same) out.orient(p, c);
    }
    return out;
  }

 private:
  std::map<std::vector<std::uint64_t>, std::vector<Dag>> classes_;
};

}  // namespace infocausal::testing
