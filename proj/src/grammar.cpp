#include "infocausal/grammar.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "infocausal/errors.hpp"

namespace infocausal {
namespace {

// Working representation: every rule body is a circular doubly linked list
// threaded through a guard node. A digram index maps each pair of adjacent
// symbols to one node where it starts.
class GreedyBuilder {
 public:
  explicit GreedyBuilder(std::span<const Symbol> input) : input_(input) {}

  Grammar run() {
    if (input_.empty()) return {};
    start_ = new_rule();
    std::size_t pos = 0;
    while (pos < input_.size()) {
      const auto [rule, length] = longest_variable_match(pos);
      const int node = rule >= 0 ? new_variable_node(rule) : new_terminal_node(input_[pos]);
      insert_after(last(start_), node);
      pos += rule >= 0 ? length : 1;
      check(nodes_[last(start_)].prev);
    }
    return export_grammar();
  }

 private:
  struct Node {
    // Terminal t is stored as 2t, variable r as 2r + 1.
    std::uint32_t code = 0;
    int prev = -1;
    int next = -1;
    bool guard = false;
  };
  struct Rule {
    int guard = -1;
    int uses = 0;
    bool alive = true;
    SymbolString expansion;
    int trie_node = -1;
  };

  static std::uint32_t terminal_code(Symbol s) { return std::uint32_t{s} << 1; }
  static std::uint32_t variable_code(int r) { return (static_cast<std::uint32_t>(r) << 1) | 1U; }
  bool is_variable(int n) const { return !nodes_[n].guard && (nodes_[n].code & 1U) != 0; }
  int rule_of(int n) const { return static_cast<int>(nodes_[n].code >> 1); }
  int first(int r) const { return nodes_[rules_[r].guard].next; }
  int last(int r) const { return nodes_[rules_[r].guard].prev; }

  std::uint64_t key(int n) const {
    return (std::uint64_t{nodes_[n].code} << 32) | nodes_[nodes_[n].next].code;
  }
  bool pair_starts_at(int n) const {
    return !nodes_[n].guard && nodes_[n].next >= 0 && !nodes_[nodes_[n].next].guard;
  }

  int alloc_node(Node node) {
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }
  int new_terminal_node(Symbol s) { return alloc_node({terminal_code(s), -1, -1, false}); }
  int new_variable_node(int r) {
    ++rules_[r].uses;
    return alloc_node({variable_code(r), -1, -1, false});
  }

  int new_rule() {
    const int r = static_cast<int>(rules_.size());
    rules_.push_back({});
    const int g = alloc_node({variable_code(r), -1, -1, true});
    nodes_[g].prev = nodes_[g].next = g;
    rules_[r].guard = g;
    return r;
  }

  void delete_digram(int n) {
    if (!pair_starts_at(n)) return;
    auto it = digrams_.find(key(n));
    if (it != digrams_.end() && it->second == n) digrams_.erase(it);
  }

  bool same_symbol(int a, int b) const {
    return !nodes_[a].guard && !nodes_[b].guard && nodes_[a].code == nodes_[b].code;
  }

  void join(int left, int right) {
    if (nodes_[left].next >= 0) {
      delete_digram(left);
      // In runs like "aaa" only the second of the overlapping pairs is
      // indexed; when it goes away, index the first one instead.
      const int rp = nodes_[right].prev, rn = nodes_[right].next;
      if (rp >= 0 && rn >= 0 && same_symbol(right, rp) && same_symbol(right, rn)) {
        digrams_[key(right)] = right;
      }
      const int lp = nodes_[left].prev, ln = nodes_[left].next;
      if (lp >= 0 && ln >= 0 && same_symbol(left, ln) && same_symbol(left, lp)) {
        digrams_[key(lp)] = lp;
      }
    }
    nodes_[left].next = right;
    nodes_[right].prev = left;
  }

  void insert_after(int at, int node) {
    join(node, nodes_[at].next);
    join(at, node);
  }

  void remove_node(int n) {
    join(nodes_[n].prev, nodes_[n].next);
    delete_digram(n);
    if (is_variable(n)) --rules_[rule_of(n)].uses;
    nodes_[n].prev = nodes_[n].next = -1;
  }

  // Returns true when the pair starting at n already occurs elsewhere.
  bool check(int n) {
    if (!pair_starts_at(n)) return false;
    auto [it, inserted] = digrams_.try_emplace(key(n), n);
    if (inserted) return false;
    const int m = it->second;
    if (m == n) return false;
    if (nodes_[m].next != n) match(n, m);
    return true;
  }

  void substitute(int n, int r) {
    const int q = nodes_[n].prev;
    remove_node(nodes_[q].next);
    remove_node(nodes_[q].next);
    insert_after(q, new_variable_node(r));
    if (!check(q)) check(nodes_[q].next);
  }

  void match(int n, int m) {
    int r = -1;
    const int before = nodes_[m].prev;
    const int after = nodes_[nodes_[m].next].next;
    if (nodes_[before].guard && nodes_[after].guard) {
      // The pair is the entire body of an existing rule: reuse it.
      r = rule_of(before);
      substitute(n, r);
    } else {
      r = new_rule();
      const int a = n, b = nodes_[n].next;
      for (int src : {a, b}) {
        const int copy = is_variable(src) ? new_variable_node(rule_of(src))
                                          : alloc_node({nodes_[src].code, -1, -1, false});
        insert_after(last(r), copy);
      }
      rules_[r].expansion = expansion_of(a);
      const SymbolString tail = expansion_of(b);
      rules_[r].expansion.insert(rules_[r].expansion.end(), tail.begin(), tail.end());
      trie_insert(r);
      substitute(m, r);
      substitute(n, r);
      if (rules_[r].alive) digrams_[key(first(r))] = first(r);
    }
    // Rule utility: a variable referenced only once is inlined.
    for (int pick = 0; pick < 2 && rules_[r].alive; ++pick) {
      const int edge = pick == 0 ? first(r) : last(r);
      if (is_variable(edge) && rules_[rule_of(edge)].uses == 1) expand_node(edge);
    }
  }

  void expand_node(int n) {
    const int r = rule_of(n);
    const int left = nodes_[n].prev, right = nodes_[n].next;
    const int f = first(r), l = last(r);
    rules_[r].alive = false;
    rules_[r].uses = 0;
    trie_remove(r);
    delete_digram(n);
    nodes_[n].prev = nodes_[n].next = -1;
    nodes_[rules_[r].guard].prev = nodes_[rules_[r].guard].next = -1;
    // Detach the body from its guard before splicing it in.
    nodes_[f].prev = -1;
    nodes_[l].next = -1;
    join(left, f);
    join(l, right);
    if (pair_starts_at(l)) digrams_[key(l)] = l;
  }

  SymbolString expansion_of(int n) const {
    if (is_variable(n)) return rules_[rule_of(n)].expansion;
    return {static_cast<Symbol>(nodes_[n].code >> 1)};
  }

  // --- trie over expansions of live variables ---------------------------

  int trie_child(int node, Symbol s, bool create) {
    const std::uint64_t k = (static_cast<std::uint64_t>(node) << 16) | s;
    auto it = trie_edges_.find(k);
    if (it != trie_edges_.end()) return it->second;
    if (!create) return -1;
    const int id = static_cast<int>(trie_rules_.size());
    trie_rules_.emplace_back();
    trie_edges_.emplace(k, id);
    return id;
  }

  void trie_insert(int r) {
    if (trie_rules_.empty()) trie_rules_.emplace_back();  // root
    int node = 0;
    for (Symbol s : rules_[r].expansion) node = trie_child(node, s, true);
    trie_rules_[node].push_back(r);
    rules_[r].trie_node = node;
  }

  void trie_remove(int r) {
    auto& at = trie_rules_[rules_[r].trie_node];
    at.erase(std::remove(at.begin(), at.end(), r), at.end());
  }

  std::pair<int, std::size_t> longest_variable_match(std::size_t pos) {
    int best_rule = -1;
    std::size_t best_len = 0;
    if (trie_rules_.empty()) return {best_rule, best_len};
    int node = 0;
    for (std::size_t i = pos; i < input_.size(); ++i) {
      node = trie_child(node, input_[i], false);
      if (node < 0) break;
      const auto& here = trie_rules_[node];
      if (!here.empty()) {
        best_rule = *std::min_element(here.begin(), here.end());
        best_len = i - pos + 1;
      }
    }
    return {best_rule, best_len};
  }

  Grammar export_grammar() const {
    std::vector<int> order{start_};
    for (int r = 0; r < static_cast<int>(rules_.size()); ++r) {
      if (r != start_ && rules_[r].alive) order.push_back(r);
    }
    std::unordered_map<int, std::uint32_t> renumber;
    for (std::size_t i = 0; i < order.size(); ++i) {
      renumber[order[i]] = static_cast<std::uint32_t>(i);
    }
    Grammar g;
    for (int r : order) {
      std::vector<GrammarSymbol> body;
      for (int n = first(r); !nodes_[n].guard; n = nodes_[n].next) {
        if (is_variable(n)) {
          body.push_back(GrammarSymbol::variable(renumber.at(rule_of(n))));
        } else {
          body.push_back(GrammarSymbol::terminal(static_cast<Symbol>(nodes_[n].code >> 1)));
        }
      }
      g.rules.push_back(std::move(body));
    }
    return g;
  }

  std::span<const Symbol> input_;
  std::vector<Node> nodes_;
  std::vector<Rule> rules_;
  std::unordered_map<std::uint64_t, int> digrams_;
  std::unordered_map<std::uint64_t, int> trie_edges_;
  std::vector<std::vector<int>> trie_rules_;
  int start_ = -1;
};

}  // namespace

Grammar greedy_grammar_transform(std::span<const Symbol> s) { return GreedyBuilder(s).run(); }

std::size_t grammar_length(const Grammar& g) {
  std::size_t total = 0;
  for (const auto& body : g.rules) total += body.size();
  return total;
}

SymbolString expand(const Grammar& g) {
  SymbolString out;
  if (g.rules.empty()) return out;
  // 0 = unvisited, 1 = on the expansion stack, 2 = verified acyclic.
  std::vector<int> state(g.rules.size(), 0);
  struct Frame {
    std::uint32_t rule;
    std::size_t pos;
  };
  std::vector<Frame> stack{{0, 0}};
  state[0] = 1;
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto& body = g.rules[top.rule];
    if (top.pos == body.size()) {
      state[top.rule] = 2;
      stack.pop_back();
      continue;
    }
    const GrammarSymbol sym = body[top.pos++];
    if (!sym.is_variable) {
      out.push_back(static_cast<Symbol>(sym.value));
      continue;
    }
    if (sym.value >= g.rules.size()) {
      throw StructuralError("reference to undefined rule s" + std::to_string(sym.value));
    }
    bool on_stack = false;
    for (const auto& f : stack) on_stack = on_stack || f.rule == sym.value;
    if (on_stack) throw StructuralError("cyclic reference to rule s" + std::to_string(sym.value));
    stack.push_back({sym.value, 0});
  }
  return out;
}

std::string serialize(const Grammar& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    os << 's' << i << " ->";
    for (const auto& sym : g.rules[i]) {
      os << ' ';
      if (sym.is_variable) os << 's';
      os << sym.value;
    }
    os << '\n';
  }
  return os.str();
}

std::size_t gr_set_info(std::span<const SymbolString> strings, std::size_t alphabet_size,
                        SetOrdering ordering) {
  const SymbolString joined =
      join_with_separators(strings, IndexSet::range(strings.size()), alphabet_size, ordering);
  return grammar_length(greedy_grammar_transform(joined));
}

GrammarSetMeasure::GrammarSetMeasure(std::vector<SymbolString> strings, std::size_t alphabet_size,
                                     SetOrdering ordering, double slack)
    : strings_(std::move(strings)),
      alphabet_size_(alphabet_size),
      ordering_(ordering),
      slack_(slack) {
  if (strings_.size() > IndexSet::kCapacity) throw InputError("too many strings");
  for (const auto& s : strings_) {
    for (Symbol sym : s) {
      if (sym >= alphabet_size_) throw InputError("symbol collides with separator range");
    }
  }
}

double GrammarSetMeasure::evaluate(Element s) const {
  const SymbolString joined = join_with_separators(strings_, s, alphabet_size_, ordering_);
  return static_cast<double>(grammar_length(greedy_grammar_transform(joined)));
}

}  // namespace infocausal
