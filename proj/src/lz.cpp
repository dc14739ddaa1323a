#include "infocausal/lz.hpp"

#include <algorithm>
#include <numeric>

#include "infocausal/errors.hpp"

namespace infocausal {
namespace {

void check_alphabet(std::span<const Symbol> s, const LzConfig& cfg) {
  const std::size_t limit = cfg.alphabet_size + cfg.separator_count;
  for (Symbol sym : s) {
    if (sym >= limit) {
      throw InputError("symbol " + std::to_string(sym) + " outside alphabet of size " +
                       std::to_string(limit));
    }
  }
}

// Suffix array by prefix doubling.
std::vector<std::size_t> suffix_array(std::span<const Symbol> s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> sa(n), rank(n), tmp(n);
  std::iota(sa.begin(), sa.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) rank[i] = s[i];
  for (std::size_t k = 1;; k <<= 1) {
    auto key = [&](std::size_t i) {
      return std::pair<std::size_t, std::size_t>(rank[i], i + k < n ? rank[i + k] + 1 : 0);
    };
    std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    tmp[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    }
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1 || k >= n) break;
  }
  return sa;
}

// Kasai: lcp[r] = lcp(sa[r-1], sa[r]), lcp[0] = 0.
std::vector<std::size_t> lcp_array(std::span<const Symbol> s, const std::vector<std::size_t>& sa) {
  const std::size_t n = s.size();
  std::vector<std::size_t> rank(n), lcp(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = r;
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

// Range-minimum over the LCP array.
class SparseMin {
 public:
  explicit SparseMin(const std::vector<std::size_t>& values) {
    const std::size_t n = values.size();
    table_.push_back(values);
    for (std::size_t w = 1; 2 * w <= n; w <<= 1) {
      const auto& prev = table_.back();
      std::vector<std::size_t> next(n - 2 * w + 1);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
      table_.push_back(std::move(next));
    }
  }
  // min over [lo, hi], lo <= hi
  std::size_t query(std::size_t lo, std::size_t hi) const {
    const std::size_t len = hi - lo + 1;
    std::size_t level = 0;
    while ((std::size_t{2} << level) <= len) ++level;
    return std::min(table_[level][lo], table_[level][hi + 1 - (std::size_t{1} << level)]);
  }

 private:
  std::vector<std::vector<std::size_t>> table_;
};

}  // namespace

std::vector<SymbolString> LzHistory::components(std::span<const Symbol> s) const {
  std::vector<SymbolString> out;
  std::size_t begin = 0;
  for (std::size_t end : ends) {
    out.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(begin),
                     s.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  return out;
}

bool is_reproducible(std::span<const Symbol> s, std::size_t prefix_length) {
  if (prefix_length > s.size()) throw InputError("prefix longer than string");
  const std::size_t ylen = s.size() - prefix_length;
  if (ylen == 0) return true;
  // y must occur inside x·ȳ = s without its last symbol.
  const auto hay = s.first(s.size() - 1);
  const auto y = s.subspan(prefix_length);
  return std::search(hay.begin(), hay.end(), y.begin(), y.end()) != hay.end();
}

bool is_reproducible(const SymbolString& x, const SymbolString& s) {
  if (x.size() > s.size() || !std::equal(x.begin(), x.end(), s.begin())) {
    throw InputError("x is not a prefix of s");
  }
  return is_reproducible(std::span<const Symbol>(s), x.size());
}

bool is_producible(std::span<const Symbol> s, std::size_t prefix_length) {
  if (prefix_length >= s.size()) throw InputError("x must be a proper prefix of s");
  return is_reproducible(s.first(s.size() - 1), prefix_length);
}

bool is_producible(const SymbolString& x, const SymbolString& s) {
  if (x.size() >= s.size() || !std::equal(x.begin(), x.end(), s.begin())) {
    throw InputError("x is not a proper prefix of s");
  }
  return is_producible(std::span<const Symbol>(s), x.size());
}

std::vector<std::size_t> longest_previous_factor(std::span<const Symbol> s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> lpf(n, 0);
  if (n < 2) return lpf;
  const auto sa = suffix_array(s);
  const auto lcp = lcp_array(s, sa);
  const SparseMin rmq(lcp);
  // The best earlier match of suffix i is its nearest neighbour in suffix
  // order among suffixes starting before i, on either side.
  auto lcp_between = [&](std::size_t r1, std::size_t r2) { return rmq.query(r1 + 1, r2); };
  std::vector<std::size_t> stack;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> prev_smaller(n, kNone), next_smaller(n, kNone);
  for (std::size_t r = 0; r < n; ++r) {
    while (!stack.empty() && sa[stack.back()] > sa[r]) {
      next_smaller[stack.back()] = r;
      stack.pop_back();
    }
    if (!stack.empty()) prev_smaller[r] = stack.back();
    stack.push_back(r);
  }
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t best = 0;
    if (prev_smaller[r] != kNone) best = std::max(best, lcp_between(prev_smaller[r], r));
    if (next_smaller[r] != kNone) best = std::max(best, lcp_between(r, next_smaller[r]));
    lpf[sa[r]] = best;
  }
  return lpf;
}

LzHistory exhaustive_history(std::span<const Symbol> s, const LzConfig& cfg) {
  check_alphabet(s, cfg);
  if (cfg.max_match_length == 0) throw InputError("max_match_length must be positive");
  LzHistory history;
  const std::size_t n = s.size();
  const auto lpf = longest_previous_factor(s);
  std::size_t h = 0;
  while (h < n) {
    // Copy as far as reproducibility (and the search cap) allows, then
    // produce one fresh symbol unless the string ended during the copy.
    const std::size_t copy = std::min(lpf[h], cfg.max_match_length);
    const std::size_t end = std::min(n, h + copy + 1);
    history.ends.push_back(end);
    h = end;
  }
  return history;
}

std::size_t lz_complexity(std::span<const Symbol> s, const LzConfig& cfg) {
  return exhaustive_history(s, cfg).size();
}

std::size_t lz_set_info(std::span<const SymbolString> strings, const LzConfig& cfg,
                        SetOrdering ordering) {
  if (strings.size() > cfg.separator_count) throw InputError("not enough separators for set");
  const SymbolString joined = join_with_separators(
      strings, IndexSet::range(strings.size()), cfg.alphabet_size, ordering);
  return lz_complexity(joined, cfg);
}

long long lz_cmi_asymmetric(const SymbolString& x, const SymbolString& y, const SymbolString& z,
                            const LzConfig& cfg) {
  if (cfg.separator_count < 2) throw InputError("need two separator symbols");
  for (const auto* part : {&x, &y, &z}) {
    for (Symbol sym : *part) {
      if (sym >= cfg.alphabet_size) throw InputError("symbol collides with separator range");
    }
  }
  const auto alpha = static_cast<Symbol>(cfg.alphabet_size);
  const auto beta = static_cast<Symbol>(cfg.alphabet_size + 1);
  SymbolString zax = z;
  zax.push_back(alpha);
  SymbolString zay = zax;
  zax.insert(zax.end(), x.begin(), x.end());
  zay.insert(zay.end(), y.begin(), y.end());
  SymbolString zaxby = zax;
  zaxby.push_back(beta);
  zaxby.insert(zaxby.end(), y.begin(), y.end());
  auto c = [&](const SymbolString& v) { return static_cast<long long>(lz_complexity(v, cfg)); };
  return c(zax) + c(zay) - c(zaxby) - c(z);
}

LzSetMeasure::LzSetMeasure(std::vector<SymbolString> strings, LzConfig cfg, SetOrdering ordering,
                           double slack)
    : strings_(std::move(strings)), cfg_(cfg), ordering_(ordering), slack_(slack) {
  if (strings_.size() > cfg_.separator_count) throw InputError("not enough separators for set");
  if (strings_.size() > IndexSet::kCapacity) throw InputError("too many strings");
  for (const auto& s : strings_) {
    for (Symbol sym : s) {
      if (sym >= cfg_.alphabet_size) {
        throw InputError("symbol " + std::to_string(sym) + " collides with separator range");
      }
    }
  }
}

double LzSetMeasure::evaluate(Element s) const {
  const SymbolString joined = join_with_separators(strings_, s, cfg_.alphabet_size, ordering_);
  return static_cast<double>(lz_complexity(joined, cfg_));
}

SymbolString concat_pieces(const SymbolString& parent, const SymbolString& noise,
                           std::span<const ConcatPiece> pieces) {
  SymbolString out;
  for (const auto& p : pieces) {
    const SymbolString& src = p.source == ConcatPiece::Source::kParent ? parent : noise;
    if (p.offset > src.size() || p.length > src.size() - p.offset) {
      throw InputError("piece exceeds its source string");
    }
    out.insert(out.end(), src.begin() + static_cast<std::ptrdiff_t>(p.offset),
               src.begin() + static_cast<std::ptrdiff_t>(p.offset + p.length));
  }
  return out;
}

FunctionalConcat functional_concat(const SymbolString& parent, const SymbolString& noise,
                                   std::size_t k, Rng& rng, std::size_t max_piece_length) {
  FunctionalConcat out;
  if (k == 0) return out;
  if (parent.empty() && noise.empty()) throw InputError("parent and noise are both empty");
  if (max_piece_length == 0) throw InputError("max_piece_length must be positive");
  for (std::size_t i = 0; i < k; ++i) {
    ConcatPiece piece;
    if (parent.empty()) {
      piece.source = ConcatPiece::Source::kNoise;
    } else if (noise.empty()) {
      piece.source = ConcatPiece::Source::kParent;
    } else {
      piece.source = uniform_index(rng, 0, 1) == 0 ? ConcatPiece::Source::kParent
                                                   : ConcatPiece::Source::kNoise;
    }
    const SymbolString& src = piece.source == ConcatPiece::Source::kParent ? parent : noise;
    piece.offset = uniform_index(rng, 0, src.size() - 1);
    const std::size_t room = std::min(src.size() - piece.offset, max_piece_length);
    piece.length = uniform_index(rng, 1, room);
    out.pieces.push_back(piece);
  }
  out.value = concat_pieces(parent, noise, out.pieces);
  return out;
}

}  // namespace infocausal
