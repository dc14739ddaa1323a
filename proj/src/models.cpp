#include "infocausal/models.hpp"

#include <algorithm>
#include <map>

#include "infocausal/errors.hpp"

namespace infocausal {

namespace {

double unit_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> random_distribution(std::size_t size, Rng& rng) {
  std::vector<double> p(size);
  double total = 0.0;
  for (auto& v : p) {
    v = 0.05 + unit_real(rng);
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

std::vector<Variable> make_variables(std::size_t count, std::size_t card, const std::string& prefix,
                                     std::size_t offset = 0) {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < count; ++i) {
    vars.push_back({prefix + std::to_string(i + offset), card});
  }
  return vars;
}

std::size_t table_size(std::size_t vars, std::size_t card) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < vars; ++i) size *= card;
  return size;
}

/// Index of the parents' joint value (parents in ascending order).
std::size_t parent_index(NodeSet parents, const std::vector<std::size_t>& assignment,
                         std::size_t card) {
  std::size_t idx = 0;
  for (std::size_t p : parents) idx = idx * card + assignment[p];
  return idx;
}

/// Product of per-node conditionals; nodes with index >= `observed` are
/// marginalized out.
JointTable product_model(const Dag& g, std::size_t observed, std::size_t card, Rng& rng) {
  const std::size_t n = g.node_count();
  if (table_size(n, card) > (1u << 22)) throw SizeGuardError("structural model table too large");
  std::vector<std::vector<std::vector<double>>> cond(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t rows = table_size(g.parents(v).size(), card);
    for (std::size_t r = 0; r < rows; ++r) cond[v].push_back(random_distribution(card, rng));
  }
  std::vector<double> point(table_size(n, card), 0.0);
  point[0] = 1.0;
  const JointTable full(make_variables(n, card, "x"), std::move(point));  // layout only
  std::vector<double> probs(table_size(n, card), 0.0);
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    const auto a = full.assignment_of(idx);
    double p = 1.0;
    for (std::size_t v = 0; v < n; ++v) p *= cond[v][parent_index(g.parents(v), a, card)][a[v]];
    probs[idx] = p;
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (auto& p : probs) p /= total;
  JointTable joint(make_variables(n, card, "x"), std::move(probs));
  if (observed == n) return joint;
  return JointTable(make_variables(observed, card, "x"), joint.marginal(IndexSet::range(observed)));
}

}  // namespace

JointTable random_joint_table(const std::vector<std::size_t>& cardinalities, Rng& rng) {
  std::vector<Variable> vars;
  std::size_t size = 1;
  for (std::size_t i = 0; i < cardinalities.size(); ++i) {
    vars.push_back({"v" + std::to_string(i), cardinalities[i]});
    size *= cardinalities[i];
  }
  std::vector<double> p(size);
  double total = 0.0;
  for (auto& v : p) {
    v = uniform_index(rng, 0, 9) == 0 ? 0.0 : unit_real(rng);
    total += v;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (auto& v : p) v /= total;
  return JointTable(std::move(vars), std::move(p));
}

JointTable structural_model(const Dag& g, Rng& rng, std::size_t cardinality) {
  return product_model(g, g.node_count(), cardinality, rng);
}

JointTable confounded_model(const Dag& g, std::size_t left, std::size_t right, Rng& rng,
                            std::size_t cardinality) {
  const std::size_t n = g.node_count();
  if (left >= n || right >= n || left == right) throw InputError("invalid confounded pair");
  Dag ext(n + 1);
  for (const auto& [p, c] : g.edges()) ext.add_edge(p, c);
  ext.add_edge(n, left);
  ext.add_edge(n, right);
  return product_model(ext, n, cardinality, rng);
}

JointTable functional_shannon_model(const Dag& g, Rng& rng, std::size_t cardinality) {
  const std::size_t k = g.node_count();
  const std::size_t card = cardinality;
  std::vector<std::vector<double>> noise(k);
  for (auto& d : noise) d = random_distribution(card, rng);
  // f_j indexed by (parent value, noise value).
  std::vector<std::vector<std::size_t>> f(k);
  for (std::size_t v = 0; v < k; ++v) {
    const std::size_t rows = table_size(g.parents(v).size(), card) * card;
    for (std::size_t r = 0; r < rows; ++r) f[v].push_back(uniform_index(rng, 0, card - 1));
  }
  std::vector<Variable> vars = make_variables(k, card, "x");
  for (const auto& v : make_variables(k, card, "n")) vars.push_back(v);
  std::vector<double> probs(table_size(2 * k, card), 0.0);
  JointTable layout(vars, [&] {
    std::vector<double> p(probs.size(), 0.0);
    p[0] = 1.0;
    return p;
  }());
  const auto order = g.topological_order();
  for (std::size_t code = 0; code < table_size(k, card); ++code) {
    std::vector<std::size_t> a(2 * k, 0);
    std::size_t rest = code;
    double p = 1.0;
    for (std::size_t j = k; j-- > 0;) {
      a[k + j] = rest % card;
      rest /= card;
      p *= noise[j][a[k + j]];
    }
    for (std::size_t v : order) {
      a[v] = f[v][parent_index(g.parents(v), a, card) * card + a[k + v]];
    }
    probs[layout.index_of(a)] += p;
  }
  return JointTable(std::move(vars), std::move(probs));
}

PeriodObservations functional_lcm_model(const Dag& g, Rng& rng) {
  static const std::vector<unsigned> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  const std::size_t k = g.node_count();
  if (2 * k > kPrimes.size()) throw SizeGuardError("lcm model supports at most 12 nodes");
  using Factors = std::map<unsigned, unsigned>;
  auto value_of = [](const Factors& f) {
    BigInt v = 1;
    for (const auto& [p, e] : f) {
      for (unsigned i = 0; i < e; ++i) v *= p;
    }
    return v;
  };
  std::vector<Factors> noise(k), node(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t q = 0; q < 2; ++q) {
      noise[j][kPrimes[2 * j + q]] = static_cast<unsigned>(uniform_index(rng, 1, 3));
    }
  }
  for (std::size_t v : g.topological_order()) {
    Factors bound = noise[v];
    for (std::size_t p : g.parents(v)) {
      for (const auto& [prime, e] : node[p]) bound[prime] = std::max(bound[prime], e);
    }
    for (const auto& [prime, e] : bound) {
      const auto chosen = static_cast<unsigned>(uniform_index(rng, 0, e));
      if (chosen > 0) node[v][prime] = chosen;
    }
  }
  PeriodObservations obs;
  for (const auto& f : node) obs.values.push_back(value_of(f));
  for (const auto& f : noise) obs.values.push_back(value_of(f));
  return obs;
}

std::vector<SymbolString> functional_lz_model(const Dag& g, Rng& rng, std::size_t max_pieces,
                                              std::size_t noise_min, std::size_t noise_max,
                                              std::size_t alphabet) {
  if (max_pieces == 0 || noise_min == 0 || noise_min > noise_max || alphabet == 0) {
    throw InputError("invalid functional LZ model parameters");
  }
  const std::size_t k = g.node_count();
  std::vector<SymbolString> noise(k), node(k);
  for (auto& s : noise) {
    s.resize(uniform_index(rng, noise_min, noise_max));
    for (auto& c : s) c = static_cast<Symbol>(uniform_index(rng, 0, alphabet - 1));
  }
  for (std::size_t v : g.topological_order()) {
    SymbolString parents;
    for (std::size_t p : g.parents(v)) parents.insert(parents.end(), node[p].begin(), node[p].end());
    node[v] = functional_concat(parents, noise[v], uniform_index(rng, 1, max_pieces), rng).value;
  }
  std::vector<SymbolString> out = node;
  out.insert(out.end(), noise.begin(), noise.end());
  return out;
}

Dag random_dag(std::size_t n, double p, Rng& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, 0, i - 1)]);
  Dag g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit_real(rng) < p) g.add_edge(order[i], order[j]);
    }
  }
  return g;
}

}  // namespace infocausal
