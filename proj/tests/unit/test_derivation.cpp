#include <gtest/gtest.h>

#include "mgg/derivation.hpp"
#include "mgg/oracle.hpp"
#include "support/fixtures.hpp"

using namespace mgg;
using fixtures::graph;
using fixtures::mat;
using fixtures::rule;

namespace {

Match match_of(std::vector<std::optional<std::size_t>> m) { return Match{std::move(m)}; }

// Host with three nodes and a directed cycle 1->2->3->1.
Digraph three_cycle() { return graph(make_universe(3), {1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}}); }

}  // namespace

TEST(HostComplement, IsBoundedByTheNodes) {
  const auto u = make_universe(3);
  const Digraph g = graph(u, {1, 2}, {{1, 2}});
  EXPECT_EQ(host_complement(g), mat(u, {{1, 0, 0}, {1, 1, 0}, {0, 0, 0}}));
}

TEST(FindMatches, EdgeIntoThreeCycle) {
  const auto u = make_universe(2);
  const Production keep = rule(u, "keep", {1, 2}, {{1, 2}}, {1, 2}, {{1, 2}});
  const auto ms = find_matches(keep, three_cycle());
  ASSERT_EQ(ms.size(), 3U);
  EXPECT_EQ(ms[0], match_of({0, 1}));
  EXPECT_EQ(ms[1], match_of({1, 2}));
  EXPECT_EQ(ms[2], match_of({2, 0}));
}

TEST(FindMatches, EmptyLeftHandSideMatchesOnce) {
  const auto u = make_universe(1);
  const Production add = rule(u, "add", {}, {}, {1}, {});
  const auto ms = find_matches(add, three_cycle());
  ASSERT_EQ(ms.size(), 1U);
  EXPECT_FALSE(ms[0].map[0].has_value());
  const Digraph h = apply_at(add, three_cycle(), ms[0]);
  EXPECT_EQ(h.nodes.dim(), 4U);
  EXPECT_EQ(h.nodes.count(), 4U);
  EXPECT_EQ(h.universe()->label(3), "add.1#1");
}

TEST(FindMatches, NihilationBlocksAMatch) {
  const auto u = make_universe(2);
  // Adds 2->1. The cycle has no reverse edges, so every edge matches.
  const Production rev = rule(u, "rev", {1, 2}, {{1, 2}}, {1, 2}, {{1, 2}, {2, 1}});
  EXPECT_EQ(find_matches(rev, three_cycle()).size(), 3U);
  const Digraph two_cycle = graph(u, {1, 2}, {{1, 2}, {2, 1}});
  EXPECT_TRUE(find_matches(rev, two_cycle).empty());
}

TEST(FindMatches, DanglingConditionOnDeletedNodes) {
  const auto u = make_universe(1);
  const Production kill = rule(u, "kill", {1}, {}, {}, {});
  const Digraph g = graph(make_universe(3), {1, 2, 3}, {{1, 2}});
  const auto ms = find_matches(kill, g);
  // Nodes 1 and 2 carry an edge to an unmatched node.
  ASSERT_EQ(ms.size(), 1U);
  EXPECT_EQ(ms[0], match_of({2}));
}

TEST(FindMatches, AgreesWithBruteForce) {
  RandomInstances gen(77);
  std::size_t nonempty = 0;
  for (int it = 0; it < 1500; ++it) {
    const auto ru = make_universe(1 + gen.uniform(0, 2));
    const auto hu = make_universe(1 + gen.uniform(0, 4));
    const Production p = gen.production(ru, "p");
    const Digraph g = gen.digraph(hu, 0.9, 0.4);
    const auto fast = find_matches(p, g);
    ASSERT_EQ(fast, brute_matches(p, g)) << "iteration " << it;
    nonempty += !fast.empty();
  }
  EXPECT_GT(nonempty, 100U);
}

TEST(ApplyAt, OutputIsCompatible) {
  RandomInstances gen(78);
  std::size_t applied = 0;
  for (int it = 0; it < 1500; ++it) {
    const auto ru = make_universe(1 + gen.uniform(0, 2));
    const auto hu = make_universe(1 + gen.uniform(0, 4));
    const Production p = gen.production(ru, "p");
    const Digraph g = gen.digraph(hu, 0.9, 0.4);
    for (const auto& m : find_matches(p, g)) {
      ASSERT_TRUE(is_compatible(apply_at(p, g, m)));
      ++applied;
    }
  }
  EXPECT_GT(applied, 100U);
}

TEST(ApplyAt, RejectsBadMatches) {
  const auto u = make_universe(2);
  const Production keep = rule(u, "keep", {1, 2}, {{1, 2}}, {1, 2}, {{1, 2}});
  const Digraph g = three_cycle();
  EXPECT_THROW(apply_at(keep, g, match_of({0})), MatchError);
  EXPECT_THROW(apply_at(keep, g, match_of({0, 0})), MatchError);
  EXPECT_THROW(apply_at(keep, g, match_of({0, std::nullopt})), MatchError);
  EXPECT_THROW(apply_at(keep, g, match_of({0, 7})), MatchError);
  try {
    apply_at(keep, g, match_of({1, 0}));
    FAIL() << "missing edge accepted";
  } catch (const MatchError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("m_L", 0), 0U);
  }
  const Production rev = rule(u, "rev", {1, 2}, {{1, 2}}, {1, 2}, {{1, 2}, {2, 1}});
  try {
    apply_at(rev, graph(u, {1, 2}, {{1, 2}, {2, 1}}), match_of({0, 1}));
    FAIL() << "forbidden edge accepted";
  } catch (const MatchError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("m_K", 0), 0U);
  }
}

TEST(ApplyAt, DeletedNodesKeepTheirPosition) {
  const auto u = make_universe(3);
  const Production q = fixtures::t_rule(u);
  const Digraph g = graph(make_universe(2), {1, 2}, {{1, 2}});
  const auto ms = find_matches(q, g);
  ASSERT_EQ(ms.size(), 1U);
  const Digraph h = apply_at(q, g, ms[0]);
  EXPECT_EQ(h.nodes, BoolVector::from_values(h.universe(), {0, 1, 1}));
  EXPECT_EQ(h.edges, mat(h.universe(), {{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}));
}

TEST(Derive, ReplaysTheInitialDigraphExample) {
  const auto u = make_universe(3);
  const Digraph m = graph(u, {1, 2, 3}, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 2}});
  const DerivationResult r = derive(m, {{fixtures::q1(u), SelectFirst{}}, {fixtures::q2(u), SelectFirst{}}});
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.graphs.size(), 3U);
  EXPECT_EQ(r.steps[0].candidates, 1U);
  EXPECT_EQ(r.steps[1].candidates, 1U);
  EXPECT_EQ(r.graphs[1].edges, mat(r.graphs[1].universe(), {{1, 0, 0}, {1, 1, 0}, {0, 0, 0}}));
  const Digraph& h = r.final_graph();
  EXPECT_EQ(h.nodes, BoolVector::from_values(h.universe(), {1, 1, 0, 1}));
  EXPECT_EQ(h.edges.count(), 6U);
  EXPECT_TRUE(is_compatible(h));
}

TEST(Derive, ReportsTheFailingMorphism) {
  const auto u = make_universe(3);
  const Digraph blocked = graph(u, {1, 2, 3}, {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 1}, {3, 2}});
  const DerivationResult r = derive(blocked, {{fixtures::q1(u), SelectFirst{}}});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.failure->step, 1U);
  EXPECT_EQ(r.failure->morphism, "m_K");

  const DerivationResult none = derive(graph(u, {1}, {}), {{fixtures::q1(u), SelectFirst{}}});
  ASSERT_FALSE(none.ok());
  EXPECT_EQ(none.failure->morphism, "m_L");
  EXPECT_EQ(none.graphs.size(), 1U);
}

TEST(Derive, Selectors) {
  const auto u = make_universe(2);
  const Production keep = rule(u, "keep", {1, 2}, {{1, 2}}, {1}, {});
  const Digraph g = graph(make_universe(std::vector<std::string>{"a", "b", "c"}), {1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
  // keep deletes its node 2, so only matches whose node 2 has no other edges qualify.
  EXPECT_TRUE(find_matches(keep, g).empty());

  const Production swap_dir = rule(u, "flip", {1, 2}, {{1, 2}}, {1, 2}, {{2, 1}});
  const auto ms = find_matches(swap_dir, g);
  ASSERT_EQ(ms.size(), 3U);
  const DerivationResult second = derive(g, {{swap_dir, SelectIndex{1}}});
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(second.steps[0].match, ms[1]);
  EXPECT_THROW(derive(g, {{swap_dir, SelectIndex{3}}}), RangeError);

  const DerivationResult by_map = derive(g, {{swap_dir, SelectMap{{{"1", "c"}, {"2", "a"}}}}});
  ASSERT_TRUE(by_map.ok());
  EXPECT_EQ(by_map.steps[0].match, ms[2]);
  EXPECT_TRUE(by_map.final_graph().edges.at(0, 2));

  const DerivationResult bad_map = derive(g, {{swap_dir, SelectMap{{{"1", "a"}, {"2", "c"}}}}});
  ASSERT_FALSE(bad_map.ok());
  EXPECT_EQ(bad_map.failure->morphism, "m_L");
  EXPECT_THROW(derive(g, {{swap_dir, SelectMap{{{"1", "zz"}, {"2", "a"}}}}}), LookupError);
}
