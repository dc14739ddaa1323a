#include <gtest/gtest.h>

#include <chrono>
#include <functional>
#include <map>

#include "infocausal/errors.hpp"
#include "infocausal/grammar.hpp"

namespace infocausal {
namespace {

// Renames variables in order of first use in a preorder walk from s0, so two
// grammars that differ only in variable numbering compare equal.
std::vector<std::string> canonical_rules(const Grammar& g) {
  std::map<std::uint32_t, std::size_t> rename;
  std::vector<std::uint32_t> order;
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t r) {
    if (rename.count(r)) return;
    rename[r] = order.size();
    order.push_back(r);
    for (const auto& sym : g.rules.at(r))
      if (sym.is_variable) visit(sym.value);
  };
  visit(0);
  std::vector<std::string> out;
  for (auto r : order) {
    std::string line;
    for (const auto& sym : g.rules[r]) {
      line += sym.is_variable ? "s" + std::to_string(rename[sym.value]) : std::to_string(sym.value);
      line += ' ';
    }
    out.push_back(line);
  }
  return out;
}

void check_irreducible(const Grammar& g) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> pairs;
  std::map<std::uint32_t, int> uses;
  auto key = [](const GrammarSymbol& s) {
    return (static_cast<std::uint64_t>(s.is_variable) << 32) | s.value;
  };
  for (const auto& rhs : g.rules) {
    std::size_t last = rhs.size();  // start of the last counted digram
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      if (rhs[i].is_variable) ++uses[rhs[i].value];
      if (i + 1 >= rhs.size()) continue;
      // Overlapping occurrences inside a run like "aaa" count once.
      if (last + 1 == i && rhs[last] == rhs[i] && rhs[last + 1] == rhs[i + 1]) continue;
      ++pairs[{key(rhs[i]), key(rhs[i + 1])}];
      last = i;
    }
  }
  for (const auto& [p, n] : pairs) EXPECT_LE(n, 1) << "repeated digram";
  for (std::uint32_t r = 1; r < g.rules.size(); ++r) EXPECT_GE(uses[r], 2) << "rule " << r;
}

TEST(Grammar, WorkedExample) {
  const SymbolString x = from_digits("1001110001000");
  const auto start = std::chrono::steady_clock::now();
  const Grammar g = greedy_grammar_transform(x);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  EXPECT_EQ(grammar_length(g), 10u);
  EXPECT_EQ(canonical_rules(g),
            (std::vector<std::string>{"s1 1 1 s2 s2 ", "1 0 0 ", "s1 0 "}));
  EXPECT_EQ(expand(g), x);
  EXPECT_LT(us, 1000);
}

TEST(Grammar, EmptyAndTiny) {
  const Grammar empty = greedy_grammar_transform(SymbolString{});
  EXPECT_TRUE(empty.rules.empty());
  EXPECT_EQ(grammar_length(empty), 0u);
  EXPECT_TRUE(expand(empty).empty());
  const Grammar one = greedy_grammar_transform(from_digits("7"));
  EXPECT_EQ(grammar_length(one), 1u);
}

TEST(Grammar, RoundTripAndIrreducible) {
  Rng rng(21);
  for (int t = 0; t < 500; ++t) {
    SymbolString s(uniform_index(rng, 1, 300));
    const std::size_t alphabet = uniform_index(rng, 1, 4);
    for (auto& c : s) c = static_cast<Symbol>(uniform_index(rng, 0, alphabet - 1));
    const Grammar g = greedy_grammar_transform(s);
    ASSERT_EQ(expand(g), s);
    check_irreducible(g);
  }
}

TEST(Grammar, RepetitiveInputCompresses) {
  SymbolString s;
  for (int i = 0; i < 64; ++i)
    for (Symbol c : from_digits("0123")) s.push_back(c);
  EXPECT_LT(grammar_length(greedy_grammar_transform(s)), 30u);
}

TEST(Grammar, ExpandRejectsBadReferences) {
  Grammar undefined{{{GrammarSymbol::variable(3)}}};
  EXPECT_THROW(expand(undefined), StructuralError);
  Grammar cyclic{{{GrammarSymbol::variable(1)}, {GrammarSymbol::variable(1), GrammarSymbol::terminal(0)}}};
  EXPECT_THROW(expand(cyclic), StructuralError);
}

TEST(Grammar, Serialize) {
  const Grammar g{{{GrammarSymbol::variable(1), GrammarSymbol::terminal(2)},
                   {GrammarSymbol::terminal(0), GrammarSymbol::terminal(1)}}};
  EXPECT_EQ(serialize(g), "s0 -> s1 2\ns1 -> 0 1\n");
}

TEST(Grammar, SetInfo) {
  const std::vector<SymbolString> xs{from_digits("0101"), from_digits("0101")};
  GrammarSetMeasure m(xs);
  EXPECT_EQ(m.evaluate(IndexSet{}), 0.0);
  EXPECT_LE(m.evaluate(IndexSet{0, 1}), m.evaluate(IndexSet{0}) + m.evaluate(IndexSet{1}));
  EXPECT_EQ(gr_set_info(xs), static_cast<std::size_t>(m.evaluate(IndexSet{0, 1})));
}

}  // namespace
}  // namespace infocausal
