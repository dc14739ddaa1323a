#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "infocausal/errors.hpp"
#include "infocausal/textpipe.hpp"

namespace infocausal {
namespace {

std::vector<std::string> label_names(const std::vector<SegmentLabel>& labels,
                                     const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.name(names));
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

TEST(Encode, Examples) {
  EXPECT_EQ(encode_text("  "), (SymbolString{9}));
  EXPECT_EQ(encode_text("A"), (SymbolString{2}));
  EXPECT_EQ(encode_text("a b\n\tc"), (SymbolString{97 % 9, 9, 98 % 9, 9, 99 % 9}));
  EXPECT_TRUE(encode_text("").empty());
  for (Symbol s : encode_text("The quick brown fox, 1851.")) EXPECT_LT(s, 10);
}

TEST(Corpus, HashAndLoad) {
  const Corpus a = Corpus::from_text("call me ishmael");
  const Corpus b = Corpus::from_text("call me ishmael");
  EXPECT_EQ(a.hash, b.hash);
  EXPECT_NE(a.hash, Corpus::from_text("call me ahab").hash);
  EXPECT_EQ(a.symbols, encode_text(a.raw));
  EXPECT_THROW(Corpus::load("/nonexistent/corpus.txt"), IoError);
}

TEST(LengthRange, Parse) {
  EXPECT_EQ(LengthRange::parse("100,200").min, 100u);
  EXPECT_EQ(LengthRange::parse("300-500").max, 500u);
  EXPECT_EQ(LengthRange::parse("300,500").to_string(), "300-500");
  EXPECT_THROW(LengthRange::parse("500,300"), ConfigError);
  EXPECT_THROW(LengthRange::parse("abc"), ConfigError);
}

TEST(Segments, SampleWithinBounds) {
  Rng rng(51);
  const SymbolString corpus(10000, 1);
  for (int t = 0; t < 100; ++t) {
    const Segment s = sample_segment(corpus, {100, 200}, rng);
    EXPECT_GE(s.length, 100u);
    EXPECT_LE(s.length, 200u);
    EXPECT_LE(s.offset + s.length, corpus.size());
  }
  EXPECT_THROW(sample_segment(SymbolString(50, 1), {100, 200}, rng), InputError);
  EXPECT_TRUE((Segment{0, 10}).overlaps(Segment{9, 5}));
  EXPECT_FALSE((Segment{0, 10}).overlaps(Segment{10, 5}));
}

TEST(Labels, GraphA) {
  const NamedDag a = reference_graph('a');
  const auto labels = segment_labels(a.graph);
  EXPECT_EQ(as_set(label_names(labels, a.names)),
            (std::set<std::string>{"s_a", "s_b", "s_c", "s_d", "s_ab", "s_ac", "s_bd", "s_cd",
                                   "s_bac", "s_abd", "s_acd"}));
  EXPECT_EQ(label_names(labels_for_node(labels, a.index_of("b")), a.names),
            (std::vector<std::string>{"s_b", "s_ab", "s_bd", "s_bac", "s_abd"}));
  EXPECT_NO_THROW(validate_labels(a, labels));
}

TEST(Labels, GraphB) {
  const NamedDag b = reference_graph('b');
  EXPECT_EQ(as_set(label_names(segment_labels(b.graph), b.names)),
            (std::set<std::string>{"s_a", "s_b", "s_c", "s_d", "s_ac", "s_ad", "s_bc", "s_bd",
                                   "s_cad", "s_cbd"}));
}

TEST(Labels, ValidationRejectsColliderAndMissing) {
  const NamedDag b = reference_graph('b');
  auto labels = segment_labels(b.graph);
  auto collider = labels;
  collider.push_back({{0, 2, 1}});  // a - c - b is a collider
  EXPECT_THROW(validate_labels(b, collider), InputError);
  auto missing = labels;
  missing.pop_back();
  EXPECT_THROW(validate_labels(b, missing), InputError);
}

TEST(Fournode, SegmentsDisjointAndConcatenated) {
  Rng rng(52);
  SymbolString corpus(20000);
  for (std::size_t i = 0; i < corpus.size(); ++i) corpus[i] = static_cast<Symbol>(i % 10);
  const SegmentSpec spec = SegmentSpec::for_graph(reference_graph('a'), {100, 200});
  const std::vector<Segment> exclude{{0, 5000}};
  const FourNodeSample s = build_fournode(spec, corpus, rng, exclude);
  ASSERT_EQ(s.segments.size(), spec.labels.size());
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    EXPECT_FALSE(s.segments[i].overlaps(exclude[0]));
    for (std::size_t j = i + 1; j < s.segments.size(); ++j)
      EXPECT_FALSE(s.segments[i].overlaps(s.segments[j]));
  }
  for (std::size_t v = 0; v < 4; ++v) {
    std::size_t expected = 0;
    for (std::size_t i = 0; i < spec.labels.size(); ++i)
      if (spec.labels[i].mentions(v)) expected += s.segments[i].length;
    EXPECT_EQ(s.nodes[v].size(), expected);
  }
  EXPECT_THROW(build_fournode(spec, SymbolString(1500, 1), rng), InputError);
}

TEST(Fournode, Deterministic) {
  SymbolString corpus(20000);
  for (std::size_t i = 0; i < corpus.size(); ++i) corpus[i] = static_cast<Symbol>((i * 7) % 10);
  const SegmentSpec spec = SegmentSpec::for_graph(reference_graph('b'), {100, 200});
  Rng r1(9), r2(9);
  EXPECT_EQ(build_fournode(spec, corpus, r1).nodes, build_fournode(spec, corpus, r2).nodes);
}

TEST(Transformers, Factory) {
  Rng rng(53);
  EXPECT_EQ(make_transformer("identity", {})->apply("abc def", rng), "abc def");
  EXPECT_EQ(make_transformer("perturb", {{"rate", "0.0"}})->apply("abc def ghi", rng),
            "abc def ghi");
  EXPECT_THROW(make_transformer("translate", {}), ConfigError);
  EXPECT_THROW(make_transformer("perturb", {{"rate", "2"}}), ConfigError);
  EXPECT_THROW(make_transformer("external", {}), ConfigError);
  EXPECT_EQ(make_transformer("external", {{"command", "tr a-z A-Z"}})->apply("abc", rng), "ABC");
}

TEST(Transformers, PerturbChangesText) {
  Rng rng(54);
  const std::string text = "it was the best of times it was the worst of times it was the age";
  const std::string out = make_transformer("perturb", {{"rate", "0.5"}})->apply(text, rng);
  EXPECT_NE(out, text);
}

TEST(Chain, IdentityChainRepeatsSource) {
  ChainSpec spec;
  spec.source = "one two three four";
  spec.transformer = "identity";
  spec.params = {};
  spec.k = 2;
  const auto chain = build_chain(spec);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[0], encode_text(spec.source));
  EXPECT_EQ(chain[2], chain[0]);
}

TEST(Chain, DeterministicPerSeed) {
  ChainSpec spec;
  spec.source = "alpha beta gamma delta epsilon zeta eta theta iota kappa lambda mu";
  EXPECT_EQ(build_chain(spec), build_chain(spec));
}

TEST(Config, ParseAndSpecs) {
  std::istringstream in(
      "# comment\ngraph = b\nnrange = 300,500\norder = shuffled\nk = 5\nk = 4\nrate=0.2\n");
  const KeyValueConfig cfg = KeyValueConfig::parse(in);
  EXPECT_EQ(cfg.get_u64("k", 0), 4u);
  EXPECT_DOUBLE_EQ(cfg.get_double("rate", 0), 0.2);
  EXPECT_EQ(cfg.get("missing", "x"), "x");
  const SegmentSpec spec = segment_spec_from_config(cfg);
  EXPECT_EQ(spec.lengths.min, 300u);
  EXPECT_EQ(spec.order, ConcatOrder::kShuffled);
  EXPECT_EQ(spec.labels.size(), 10u);
  std::istringstream bad("novalue\n");
  EXPECT_THROW(KeyValueConfig::parse(bad), ConfigError);
  KeyValueConfig wrong;
  wrong.set("k", "many");
  EXPECT_THROW(wrong.get_u64("k", 0), ConfigError);
}

TEST(Config, CustomGraphAndLabels) {
  KeyValueConfig cfg;
  cfg.set("graph", "x->y, y->z");
  cfg.set("labels", "x y z xy yz xyz");
  const SegmentSpec spec = segment_spec_from_config(cfg);
  EXPECT_EQ(spec.graph.names.size(), 3u);
  EXPECT_EQ(spec.labels.size(), 6u);
  cfg.set("labels", "x y z xy yz");
  EXPECT_THROW(segment_spec_from_config(cfg), InputError);
}

}  // namespace
}  // namespace infocausal
