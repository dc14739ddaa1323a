#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "infocausal/measure.hpp"
#include "infocausal/symbols.hpp"

namespace infocausal {

// Lempel-Ziv (1976) complexity: the number of components in the exhaustive
// production history of a string.

struct LzConfig {
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  /// Longest copied run inside one component. 30 suits English text; use
  /// kUnbounded for the exact complexity.
  std::size_t max_match_length = 30;
  /// Data symbols are [0, alphabet_size).
  std::size_t alphabet_size = 10;
  /// Separator codes are [alphabet_size, alphabet_size + separator_count).
  std::size_t separator_count = 64;

  static LzConfig exact(std::size_t alphabet_size = 10) {
    return {kUnbounded, alphabet_size, 64};
  }
};

/// Exclusive end positions of consecutive components; the last equals |s|.
struct LzHistory {
  std::vector<std::size_t> ends;

  std::size_t size() const { return ends.size(); }
  std::vector<SymbolString> components(std::span<const Symbol> s) const;
};

/// True iff s = x y and y occurs in x·ȳ (ȳ is y minus its last symbol).
/// `prefix_length` is |x|; throws InputError if it exceeds |s|.
bool is_reproducible(std::span<const Symbol> s, std::size_t prefix_length);
/// String overload: also checks that x is a prefix of s.
bool is_reproducible(const SymbolString& x, const SymbolString& s);

/// x => s iff x -> s̄. Requires x to be a proper prefix of s.
bool is_producible(std::span<const Symbol> s, std::size_t prefix_length);
bool is_producible(const SymbolString& x, const SymbolString& s);

/// For every i, the length of the longest factor starting at i that also
/// starts at some j < i (occurrences may overlap position i).
std::vector<std::size_t> longest_previous_factor(std::span<const Symbol> s);

LzHistory exhaustive_history(std::span<const Symbol> s, const LzConfig& cfg = {});
std::size_t lz_complexity(std::span<const Symbol> s, const LzConfig& cfg = {});

/// LZ(X): complexity of the separator-joined concatenation of all strings in
/// X. Separator after X[i] is alphabet_size + i.
std::size_t lz_set_info(std::span<const SymbolString> strings, const LzConfig& cfg = {},
                        SetOrdering ordering = SetOrdering::kLexicographic);

/// c(z a x) + c(z a y) - c(z a x b y) - c(z), with a, b the first two
/// separator codes. Never below -1 for the exact complexity.
long long lz_cmi_asymmetric(const SymbolString& x, const SymbolString& y, const SymbolString& z,
                            const LzConfig& cfg = {});

/// Set-version LZ-information over a fixed list of strings.
class LzSetMeasure final : public InformationMeasure {
 public:
  /// `slack` declares the tolerated violation of monotonicity/submodularity.
  LzSetMeasure(std::vector<SymbolString> strings, LzConfig cfg = {},
               SetOrdering ordering = SetOrdering::kLexicographic, double slack = 8.0);

  std::string name() const override { return "lz"; }
  std::size_t ground_size() const override { return strings_.size(); }
  Exactness exactness() const override { return Exactness::approximate(slack_); }
  double evaluate(Element s) const override;

  const std::vector<SymbolString>& strings() const { return strings_; }
  const LzConfig& config() const { return cfg_; }

 private:
  std::vector<SymbolString> strings_;
  LzConfig cfg_;
  SetOrdering ordering_;
  double slack_;
};

// ---------------------------------------------------------------------------
// Functional concatenation: a child string built from k substrings of its
// parent string and its noise string.

struct ConcatPiece {
  enum class Source { kParent, kNoise };
  Source source = Source::kParent;
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct FunctionalConcat {
  SymbolString value;
  std::vector<ConcatPiece> pieces;
};

/// Concatenates the given pieces. Throws InputError on out-of-range pieces.
SymbolString concat_pieces(const SymbolString& parent, const SymbolString& noise,
                           std::span<const ConcatPiece> pieces);

/// k random nonempty substrings of `parent` or `noise` (source chosen
/// uniformly among the nonempty ones), each at most `max_piece_length` long.
/// k = 0 gives the empty string.
FunctionalConcat functional_concat(const SymbolString& parent, const SymbolString& noise,
                                   std::size_t k, Rng& rng,
                                   std::size_t max_piece_length = LzConfig::kUnbounded);

}  // namespace infocausal
