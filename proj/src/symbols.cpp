#include "infocausal/symbols.hpp"

#include <algorithm>
#include <limits>

#include "infocausal/errors.hpp"

namespace infocausal {

SymbolString from_digits(const std::string& digits) {
  SymbolString out;
  out.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw InputError(std::string("non-digit symbol '") + ch + "'");
    out.push_back(static_cast<Symbol>(ch - '0'));
  }
  return out;
}

std::string to_digits(std::span<const Symbol> symbols) {
  std::string out;
  for (Symbol s : symbols) {
    if (s < 10) {
      out.push_back(static_cast<char>('0' + s));
    } else {
      out += "<" + std::to_string(s) + ">";
    }
  }
  return out;
}

SymbolString join_with_separators(std::span<const SymbolString> strings, IndexSet subset,
                                  std::size_t alphabet_size, SetOrdering ordering) {
  if (subset.span() > strings.size()) {
    throw InputError("subset " + subset.to_string() + " names unknown strings");
  }
  if (alphabet_size + strings.size() > std::numeric_limits<Symbol>::max()) {
    throw InputError("not enough separator codes above the alphabet");
  }
  std::vector<std::size_t> order = subset.members();
  if (ordering == SetOrdering::kLexicographic) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return strings[a] < strings[b];
    });
  }
  std::size_t total = 0;
  for (std::size_t i : order) total += strings[i].size() + 1;
  SymbolString out;
  out.reserve(total);
  for (std::size_t i : order) {
    for (Symbol s : strings[i]) {
      if (s >= alphabet_size) {
        throw InputError("symbol " + std::to_string(s) + " collides with separator range (alphabet " +
                         std::to_string(alphabet_size) + ")");
      }
    }
    out.insert(out.end(), strings[i].begin(), strings[i].end());
    out.push_back(static_cast<Symbol>(alphabet_size + i));
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  if (hi < lo) throw InputError("uniform_index: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::size_t>(rng());  // full 64-bit range
  // Rejection sampling keeps the draw unbiased.
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t excess = (kMax % span + 1) % span;  // 2^64 mod span
  std::uint64_t x = rng();
  while (excess != 0 && x > kMax - excess) x = rng();
  return lo + static_cast<std::size_t>(x % span);
}

}  // namespace infocausal
