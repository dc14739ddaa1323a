#include <gtest/gtest.h>

#include <sstream>

#include "infocausal/concrete_measures.hpp"
#include "infocausal/dag.hpp"
#include "infocausal/errors.hpp"
#include "infocausal/markov.hpp"
#include "infocausal/models.hpp"
#include "oracles.hpp"

namespace infocausal {
namespace {

using testing::naive_all_dags;
using testing::naive_d_separated;

TEST(Dag, Relations) {
  // 0 -> 1 -> 3, 0 -> 2 -> 3, 4 isolated
  const Dag g(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(g.parents(3), (NodeSet{1, 2}));
  EXPECT_EQ(g.children(0), (NodeSet{1, 2}));
  EXPECT_EQ(g.descendants(0), (NodeSet{1, 2, 3}));
  EXPECT_EQ(g.ancestors(3), (NodeSet{0, 1, 2}));
  // Parents are excluded: they are the conditioning set of the local check.
  EXPECT_EQ(g.non_descendants(1), (NodeSet{2, 4}));
  EXPECT_EQ(g.ancestral_closure(NodeSet{1}), (NodeSet{0, 1}));
  EXPECT_TRUE(g.is_ancestral(NodeSet{0, 2, 4}));
  EXPECT_FALSE(g.is_ancestral(NodeSet{3}));
  EXPECT_EQ(g.edge_count(), 4u);
  const auto order = g.topological_order();
  std::vector<std::size_t> pos(5);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& [p, c] : g.edges()) EXPECT_LT(pos[p], pos[c]);
}

TEST(Dag, RejectsCyclesAndBadNodes) {
  Dag g(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(g.add_edge(2, 0), InputError);
  EXPECT_THROW(g.add_edge(1, 1), InputError);
  EXPECT_THROW(g.add_edge(0, 7), InputError);
}

TEST(Dag, DSeparationExamples) {
  const Dag chain(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(d_separated(chain, NodeSet{0}, NodeSet{2}, {}));
  EXPECT_TRUE(d_separated(chain, NodeSet{0}, NodeSet{2}, NodeSet{1}));
  const Dag collider(4, {{0, 2}, {1, 2}, {2, 3}});
  EXPECT_TRUE(d_separated(collider, NodeSet{0}, NodeSet{1}, {}));
  EXPECT_FALSE(d_separated(collider, NodeSet{0}, NodeSet{1}, NodeSet{2}));
  EXPECT_FALSE(d_separated(collider, NodeSet{0}, NodeSet{1}, NodeSet{3}));
}

TEST(Dag, DSeparationMatchesPathEnumeration) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const Dag& g : naive_all_dags(n)) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
            if (((c >> a) & 1U) != 0 || ((c >> b) & 1U) != 0) continue;
            ASSERT_EQ(d_separated(g, NodeSet{a}, NodeSet{b}, IndexSet(c)),
                      naive_d_separated(g, a, b, c));
          }
        }
      }
    }
  }
}

TEST(Dag, DSeparationSixNodeRandom) {
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const Dag g = random_dag(6, 0.4, rng);
    for (std::uint64_t c = 0; c < 64; ++c) {
      if ((c & 0b100001) != 0) continue;
      ASSERT_EQ(d_separated(g, NodeSet{0}, NodeSet{5}, IndexSet(c)),
                naive_d_separated(g, 0, 5, c));
    }
  }
}

TEST(Dag, EnumerationCounts) {
  EXPECT_EQ(enumerate_dags(1).size(), 1u);
  EXPECT_EQ(enumerate_dags(2).size(), 3u);
  EXPECT_EQ(enumerate_dags(3).size(), 25u);
  EXPECT_EQ(enumerate_dags(4).size(), 543u);
  EXPECT_EQ(naive_all_dags(4).size(), 543u);
  EXPECT_THROW(enumerate_dags(6), SizeGuardError);
}

TEST(Dag, ExtendGraphKeepsSeparations) {
  Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    const Dag g = random_dag(4, 0.5, rng);
    const ExtendedDag ext = extend_graph(g);
    EXPECT_EQ(ext.graph.node_count(), 8u);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(ext.graph.parents(ext.noise_of(j)), NodeSet{});
    for (std::uint64_t c = 0; c < 16; ++c) {
      if ((c & 0b1001) != 0) continue;
      EXPECT_EQ(d_separated(g, NodeSet{0}, NodeSet{3}, IndexSet(c)),
                d_separated(ext.graph, NodeSet{0}, NodeSet{3}, IndexSet(c)));
    }
  }
}

TEST(Dag, ParseAndFormat) {
  std::istringstream in("# diamond\na -> b\na -> c\nb -> d\nc -> d\ne\n");
  const NamedDag d = parse_dag(in);
  EXPECT_EQ(d.names, (std::vector<std::string>{"a", "b", "c", "d", "e"}));
  EXPECT_EQ(d.index_of("d"), 3u);
  EXPECT_TRUE(d.graph.has_edge(2, 3));
  std::istringstream again(format_dag(d));
  EXPECT_EQ(parse_dag(again).graph, d.graph);
  std::istringstream bad("a => b\n");
  EXPECT_THROW(parse_dag(bad), InputError);
  std::istringstream cyclic("a -> b\nb -> a\n");
  EXPECT_THROW(parse_dag(cyclic), InputError);
  EXPECT_THROW(load_dag("/nonexistent/graph.dag"), IoError);
}

TEST(Markov, StructuralModelSatisfiesAllThree) {
  Rng rng(33);
  const Dag g(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const ShannonMeasure m(structural_model(g, rng));
  const MarkovReport r = markov_report(g, m, identity_map(4), 1e-9);
  EXPECT_TRUE(r.local.pass());
  EXPECT_TRUE(r.decomposition.pass());
  EXPECT_TRUE(r.global_pass());
  EXPECT_EQ(r.local.entries.size(), 4u);
  const auto j = r.to_json();
  EXPECT_TRUE(j.contains("local"));
  EXPECT_TRUE(j.contains("global"));
}

TEST(Markov, WrongGraphFailsLocal) {
  Rng rng(34);
  const Dag chain(3, {{0, 1}, {1, 2}});
  const ShannonMeasure m(structural_model(chain, rng));
  const Dag empty(3);
  EXPECT_FALSE(local_markov_report(empty, m, identity_map(3), 1e-9).pass());
}

TEST(Markov, DecompositionNeedsAncestralSet) {
  Rng rng(35);
  const Dag chain(3, {{0, 1}, {1, 2}});
  const ShannonMeasure m(structural_model(chain, rng));
  EXPECT_NEAR(decomposition_report(chain, m, identity_map(3), NodeSet{0, 1}), 0.0, 1e-9);
  EXPECT_THROW(decomposition_report(chain, m, identity_map(3), NodeSet{1}), InputError);
}

TEST(Markov, GlobalGuard) {
  Rng rng(36);
  const Dag g(7);
  const ShannonMeasure m(random_joint_table(std::vector<std::size_t>(7, 2), rng));
  EXPECT_THROW(global_markov_report(g, m, identity_map(7), 1e-9), SizeGuardError);
}

TEST(Markov, NodeMapSelectsObservations) {
  // Ground set {noise, x}: the graph node 0 maps to observation 1.
  std::vector<double> p{0.5, 0.0, 0.0, 0.5};
  const ShannonMeasure m(JointTable({{"n", 2}, {"x", 2}}, p));
  EXPECT_EQ(to_element(NodeSet{0}, NodeMap{1}), IndexSet{1});
  EXPECT_TRUE(local_markov_report(Dag(1), m, NodeMap{1}, 1e-9).pass());
}

TEST(Markov, FunctionalShannonModel) {
  Rng rng(37);
  const Dag g(3, {{0, 2}, {1, 2}});
  const ShannonMeasure m(functional_shannon_model(g, rng));
  const FunctionalModelReport r =
      functional_model_check(g, m, NodeMap{0, 1, 2}, NodeMap{3, 4, 5}, {});
  EXPECT_TRUE(r.premises_hold);
  EXPECT_TRUE(r.local.pass());
  EXPECT_TRUE(r.implication_holds());
  EXPECT_EQ(r.information_gap.size(), 3u);
  EXPECT_TRUE(r.to_json().contains("premises_hold"));
}

}  // namespace
}  // namespace infocausal
