#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "infocausal/errors.hpp"
#include "infocausal/lz.hpp"

namespace infocausal {
namespace {

SymbolString random_string(Rng& rng, std::size_t len, std::size_t alphabet) {
  SymbolString s(len);
  for (auto& c : s) c = static_cast<Symbol>(uniform_index(rng, 0, alphabet - 1));
  return s;
}

// Longest l such that s[i, i+l) == s[j, j+l) for some j < i, by direct comparison.
std::vector<std::size_t> naive_lpf(const SymbolString& s) {
  std::vector<std::size_t> out(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::size_t l = 0;
      while (i + l < s.size() && s[j + l] == s[i + l]) ++l;
      out[i] = std::max(out[i], l);
    }
  }
  return out;
}

// Greedy parse straight from the definition: extend the copy while the
// candidate factor occurs somewhere starting before the current position.
std::vector<std::size_t> naive_history(const SymbolString& s, std::size_t cap) {
  std::vector<std::size_t> ends;
  std::size_t h = 0;
  while (h < s.size()) {
    std::size_t copy = 0;
    while (h + copy < s.size() && copy < cap) {
      const std::size_t len = copy + 1;
      bool found = false;
      for (std::size_t j = 0; j < h && !found; ++j) {
        found = std::equal(s.begin() + j, s.begin() + j + len, s.begin() + h);
      }
      if (!found) break;
      copy = len;
    }
    h = std::min(s.size(), h + copy + 1);
    ends.push_back(h);
  }
  return ends;
}

TEST(Reproduction, DefinitionExamples) {
  EXPECT_TRUE(is_reproducible(from_digits("0"), from_digits("00")));
  EXPECT_TRUE(is_reproducible(from_digits("0101"), from_digits("0101")));
  EXPECT_FALSE(is_reproducible(from_digits("0"), from_digits("01")));
  EXPECT_TRUE(is_producible(from_digits("0"), from_digits("01")));
  EXPECT_TRUE(is_producible(from_digits("011"), from_digits("0112")));
  EXPECT_FALSE(is_producible(from_digits("0"), from_digits("011")));
}

TEST(Reproduction, PrefixMismatchIsInputError) {
  EXPECT_THROW(is_reproducible(from_digits("1"), from_digits("00")), InputError);
}

TEST(History, WorkedExample) {
  const SymbolString s = from_digits("000100101100110");
  const LzHistory h = exhaustive_history(s);
  std::vector<std::string> parts;
  for (const auto& c : h.components(s)) parts.push_back(to_digits(c));
  EXPECT_EQ(parts, (std::vector<std::string>{"0", "001", "00101", "10011", "0"}));
  EXPECT_EQ(lz_complexity(s), 5u);
}

TEST(History, SmallCases) {
  EXPECT_EQ(lz_complexity(SymbolString{}), 0u);
  EXPECT_EQ(lz_complexity(from_digits("0")), 1u);
  EXPECT_EQ(lz_complexity(from_digits("0000000000")), 2u);
}

TEST(History, MatchesDefinitionOnRandomStrings) {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const SymbolString s = random_string(rng, uniform_index(rng, 1, 120), uniform_index(rng, 2, 4));
    LzConfig exact = LzConfig::exact();
    EXPECT_EQ(exhaustive_history(s, exact).ends, naive_history(s, LzConfig::kUnbounded));
    LzConfig capped;
    capped.max_match_length = uniform_index(rng, 1, 8);
    EXPECT_EQ(exhaustive_history(s, capped).ends, naive_history(s, capped.max_match_length));
  }
}

TEST(History, LongestPreviousFactorMatchesNaive) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const SymbolString s = random_string(rng, uniform_index(rng, 0, 80), uniform_index(rng, 1, 3));
    EXPECT_EQ(longest_previous_factor(s), naive_lpf(s));
  }
}

TEST(History, ComponentsSatisfyProductionAndMaximality) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const SymbolString s = random_string(rng, uniform_index(rng, 1, 150), 2);
    const LzHistory h = exhaustive_history(s, LzConfig::exact());
    SymbolString joined;
    for (const auto& c : h.components(s)) joined.insert(joined.end(), c.begin(), c.end());
    EXPECT_EQ(joined, s);
    std::size_t start = 0;
    for (std::size_t k = 0; k < h.ends.size(); ++k) {
      const std::span<const Symbol> upto(s.data(), h.ends[k]);
      EXPECT_TRUE(is_producible(upto, start));
      if (k + 1 < h.ends.size()) {
        EXPECT_FALSE(is_reproducible(upto, start)) << "component " << k << " not maximal";
      }
      start = h.ends[k];
    }
  }
}

TEST(History, SymbolOutsideAlphabetIsInputError) {
  SymbolString s{1, 2, 200};
  EXPECT_THROW(lz_complexity(s), InputError);
}

TEST(History, Deterministic) {
  Rng rng(14);
  const SymbolString s = random_string(rng, 3000, 10);
  EXPECT_EQ(exhaustive_history(s).ends, exhaustive_history(s).ends);
}

TEST(History, WorkedExampleIsFast) {
  const SymbolString s = from_digits("000100101100110");
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) ASSERT_EQ(lz_complexity(s), 5u);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  EXPECT_LT(us / 100, 1000);
}

TEST(SetInfo, EqualsComplexityOfJoinedString) {
  const std::vector<SymbolString> xs{from_digits("1001"), from_digits("0110")};
  SymbolString joined = from_digits("0110");
  joined.push_back(11);
  const SymbolString second = from_digits("1001");
  joined.insert(joined.end(), second.begin(), second.end());
  joined.push_back(10);
  EXPECT_EQ(lz_set_info(xs), lz_complexity(joined));
  EXPECT_EQ(lz_set_info(std::vector<SymbolString>{}), 0u);
}

TEST(SetInfo, Subadditive) {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const SymbolString x = random_string(rng, uniform_index(rng, 1, 200), 3);
    const SymbolString y = random_string(rng, uniform_index(rng, 1, 200), 3);
    LzSetMeasure m({x, y}, LzConfig::exact());
    EXPECT_LE(m.evaluate(IndexSet::range(2)),
              m.evaluate(IndexSet::single(0)) + m.evaluate(IndexSet::single(1)));
  }
}

TEST(SetInfo, SingletonIsStringPlusSeparator) {
  const SymbolString x = from_digits("0110100");
  LzSetMeasure m({x});
  SymbolString with_sep = x;
  with_sep.push_back(10);
  EXPECT_EQ(m.evaluate(IndexSet::single(0)), static_cast<double>(lz_complexity(with_sep)));
  EXPECT_EQ(m.evaluate(IndexSet{}), 0.0);
}

TEST(SetInfo, OrderingIsByContent) {
  const SymbolString a = from_digits("111"), b = from_digits("000");
  LzSetMeasure ab({a, b}), ba({b, a});
  EXPECT_EQ(ab.evaluate(IndexSet::range(2)), ba.evaluate(IndexSet::range(2)));
}

TEST(Asymmetric, DuplicateIsLargeUnrelatedIsSmall) {
  Rng rng(16);
  const SymbolString x = random_string(rng, 500, 10);
  const SymbolString y = random_string(rng, 500, 10);
  const LzConfig exact = LzConfig::exact();
  EXPECT_GE(lz_cmi_asymmetric(x, x, {}, exact),
            static_cast<long long>(lz_complexity(x, exact)) - 3);
  // Longer history gives longer matches even for unrelated text, so only a
  // small fraction of c(x) is expected.
  EXPECT_LT(std::llabs(lz_cmi_asymmetric(x, y, {}, exact)),
            static_cast<long long>(lz_complexity(x, exact)) / 4);
}

TEST(Asymmetric, BoundOnSmallRandomTriples) {
  Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    const auto x = random_string(rng, uniform_index(rng, 0, 60), 2);
    const auto y = random_string(rng, uniform_index(rng, 0, 60), 2);
    const auto z = random_string(rng, uniform_index(rng, 0, 60), 2);
    EXPECT_GE(lz_cmi_asymmetric(x, y, z, LzConfig::exact()), -1);
  }
}

TEST(FunctionalConcat, Pieces) {
  Rng rng(18);
  const SymbolString pa = from_digits("0123456789"), n = from_digits("9876");
  EXPECT_TRUE(functional_concat(pa, n, 0, rng).value.empty());
  const auto one = functional_concat(pa, n, 5, rng, 1);
  EXPECT_EQ(one.value.size(), 5u);
  EXPECT_EQ(one.pieces.size(), 5u);
  const std::vector<ConcatPiece> all{{ConcatPiece::Source::kParent, 0, pa.size()}};
  EXPECT_EQ(concat_pieces(pa, n, all), pa);
  const auto fc = functional_concat(pa, n, 7, rng);
  EXPECT_EQ(concat_pieces(pa, n, fc.pieces), fc.value);
}

TEST(FunctionalConcat, BoundHolds) {
  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    const auto pa = random_string(rng, uniform_index(rng, 1, 300), 10);
    const auto n = random_string(rng, uniform_index(rng, 1, 300), 10);
    const std::size_t k = uniform_index(rng, 1, 10);
    const auto x = functional_concat(pa, n, k, rng).value;
    SymbolString base = pa;
    base.push_back(10);
    base.insert(base.end(), n.begin(), n.end());
    base.push_back(11);
    SymbolString full = base;
    full.insert(full.end(), x.begin(), x.end());
    EXPECT_LE(lz_complexity(full, LzConfig::exact()), lz_complexity(base, LzConfig::exact()) + k);
  }
}

}  // namespace
}  // namespace infocausal
