#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "infocausal/lattice.hpp"

namespace infocausal {

/// Small-integer alphabet code. Data alphabets occupy [0, alphabet_size);
/// separators are drawn from codes at and above alphabet_size.
using Symbol = std::uint16_t;
using SymbolString = std::vector<Symbol>;
using Rng = std::mt19937_64;

/// "0123" -> {0,1,2,3}. Throws InputError on non-digit characters.
SymbolString from_digits(const std::string& digits);
/// Inverse of from_digits for symbols < 10; larger codes print as "<n>".
std::string to_digits(std::span<const Symbol> symbols);

/// Order used when concatenating a set of strings.
enum class SetOrdering {
  kLexicographic,  // by content, ties by original index
  kIndex,          // by original index
};

/// Concatenation x_{i1} a_{i1} ... x_{im} a_{im} over the members of `subset`,
/// where the separator after string i is the symbol alphabet_size + i.
/// Throws InputError when a data symbol collides with the separator range.
SymbolString join_with_separators(std::span<const SymbolString> strings, IndexSet subset,
                                  std::size_t alphabet_size, SetOrdering ordering);

/// Deterministic per-stream seed derived from a master seed and a counter
/// (splitmix64 finalizer), so parallel trials do not share RNG state.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// Uniform integer in [lo, hi] from raw 64-bit draws; identical on every platform.
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

}  // namespace infocausal
