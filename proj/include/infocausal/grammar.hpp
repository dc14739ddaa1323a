#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infocausal/measure.hpp"
#include "infocausal/symbols.hpp"

namespace infocausal {

struct GrammarSymbol {
  bool is_variable = false;
  /// Terminal symbol code, or the index of the referenced rule.
  std::uint32_t value = 0;

  static GrammarSymbol terminal(Symbol s) { return {false, s}; }
  static GrammarSymbol variable(std::uint32_t rule) { return {true, rule}; }
  friend bool operator==(const GrammarSymbol&, const GrammarSymbol&) = default;
};

/// Context-free grammar with one production per variable. rules[0] is the
/// start variable s0; the others are numbered in creation order. The grammar
/// of the empty string has no rules at all.
struct Grammar {
  std::vector<std::vector<GrammarSymbol>> rules;
};

/// Greedy sequential grammar transform (Yang-Kieffer). The input is parsed
/// left to right; each step appends either the longest prefix of the rest
/// that equals the expansion of an existing variable (ties: earliest created
/// variable) or one terminal, then restores the irreducibility conditions:
/// no repeated pair of adjacent symbols, and every variable used at least
/// twice.
Grammar greedy_grammar_transform(std::span<const Symbol> s);

/// Sum of right-hand-side lengths over all rules.
std::size_t grammar_length(const Grammar& g);

/// The string generated from s0. Throws StructuralError on references to
/// undefined rules or on cyclic references.
SymbolString expand(const Grammar& g);

/// One rule per line: "s<i> -> <symbols>", terminals as numbers.
std::string serialize(const Grammar& g);

/// GR(X): grammar length of the separator-joined concatenation.
std::size_t gr_set_info(std::span<const SymbolString> strings, std::size_t alphabet_size = 10,
                        SetOrdering ordering = SetOrdering::kLexicographic);

/// Set-version grammar-based information over a fixed list of strings.
class GrammarSetMeasure final : public InformationMeasure {
 public:
  GrammarSetMeasure(std::vector<SymbolString> strings, std::size_t alphabet_size = 10,
                    SetOrdering ordering = SetOrdering::kLexicographic, double slack = 16.0);

  std::string name() const override { return "grammar"; }
  std::size_t ground_size() const override { return strings_.size(); }
  Exactness exactness() const override { return Exactness::approximate(slack_); }
  double evaluate(Element s) const override;

 private:
  std::vector<SymbolString> strings_;
  std::size_t alphabet_size_;
  SetOrdering ordering_;
  double slack_;
};

}  // namespace infocausal
