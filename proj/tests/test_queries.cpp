#include <gtest/gtest.h>

#include "cgraph/error.hpp"
#include "cgraph/queries.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cgraph;
namespace q = cgraph::queries;
using testing_support::fixture_f1;
using testing_support::fixture_f2;

namespace {

using Ids = std::vector<std::string>;

QueryContext f1() { return QueryContext::topological(fixture_f1()); }
QueryContext f2() { return QueryContext::topological(fixture_f2()); }

ClusteredGraph path_pqr() {
  return ClusteredGraph::build({{"p", "p", {}}, {"q", "q", {}}, {"r", "r", {}}},
                               {{"p", "q", std::nullopt, {}}, {"q", "r", std::nullopt, {}}},
                               {{"P", "P", {}}, {"Q", "Q", {}}, {"R", "R", {}}},
                               {{"p", "P"}, {"q", "Q"}, {"r", "R"}});
}

/// F2 with b1-b2 as the unique heaviest link.
ClusteredGraph f2_weighted() {
  auto doc = nlohmann::json::parse(testing_support::read_text(testing_support::test_path("data/f2.json")));
  for (auto& e : doc["edges"]) {
    bool heavy = (e["source"] == "b1" && e["target"] == "b2");
    e["weight"] = heavy ? 5.0 : 2.0;
  }
  return load_clustered_graph(doc.dump());
}

}  // namespace

TEST(GroupOnly, Neighbors) {
  EXPECT_EQ(q::neighbors(f2(), "C"), (Ids{"A", "B", "D"}));
  EXPECT_EQ(q::neighbors(f1(), "Europe"), (Ids{"Asia", "NorthAmerica"}));
  auto isolated = QueryContext::topological(generate_planted_partition({{2, 2}, 1.0, 0.0, 1}));
  EXPECT_TRUE(q::neighbors(isolated, "g0").empty());
  EXPECT_THROW(q::neighbors(f2(), "Z"), NotFound);
}

TEST(GroupOnly, Accessible) {
  EXPECT_EQ(q::accessible(f2(), "D"), (Ids{"A", "B", "C"}));
  auto isolated = QueryContext::topological(generate_planted_partition({{2, 2}, 1.0, 0.0, 1}));
  EXPECT_TRUE(q::accessible(isolated, "g1").empty());
}

TEST(GroupOnly, GroupsAtDistance) {
  EXPECT_EQ(q::groups_at_distance(f2(), "D", 2), (Ids{"A", "B"}));
  EXPECT_EQ(q::groups_at_distance(f1(), "NorthAmerica", 2), (Ids{"Asia"}));
  EXPECT_EQ(q::groups_at_distance(f2(), "C", 1), q::neighbors(f2(), "C"));
  EXPECT_THROW(q::groups_at_distance(f2(), "C", 0), InvalidArgument);
}

TEST(GroupOnly, CommonNeighbors) {
  EXPECT_EQ(q::common_neighbors(f2(), "A", "B"), (Ids{"C"}));
  EXPECT_THROW(q::common_neighbors(f2(), "A", "A"), InvalidArgument);
}

TEST(GroupOnly, ShortestGroupPath) {
  EXPECT_EQ(q::shortest_group_path(f1(), "NorthAmerica", "Asia"),
            (Ids{"NorthAmerica", "Europe", "Asia"}));
  EXPECT_EQ(q::shortest_group_path(f2(), "A", "D"), (Ids{"A", "C", "D"}));
  EXPECT_EQ(q::shortest_group_path(f2(), "B", "B"), (Ids{"B"}));
  auto isolated = QueryContext::topological(generate_planted_partition({{2, 2}, 1.0, 0.0, 1}));
  EXPECT_FALSE(q::shortest_group_path(isolated, "g0", "g1").has_value());
}

TEST(GroupOnly, FindGroups) {
  EXPECT_EQ(q::find_groups(f2(), Predicate::parse("color==red")), (Ids{"A"}));
  EXPECT_EQ(q::find_groups(f2(), Predicate::always(true)), (Ids{"A", "B", "C", "D"}));
  EXPECT_TRUE(q::find_groups(f2(), Predicate::always(false)).empty());
}

TEST(GroupOnly, Adjacency) {
  EXPECT_FALSE(q::are_adjacent(f1(), "NorthAmerica", "Asia"));
  EXPECT_TRUE(q::are_adjacent(f2(), "A", "B"));
  EXPECT_EQ(q::are_adjacent(f2(), "D", "C"), q::are_adjacent(f2(), "C", "D"));
  EXPECT_THROW(q::are_adjacent(f2(), "A", "A"), InvalidArgument);
}

TEST(GroupOnly, Articulation) {
  EXPECT_EQ(q::articulation_groups(f2()), (Ids{"C"}));
  EXPECT_EQ(q::articulation_groups(f1()), (Ids{"Europe"}));
  EXPECT_EQ(q::articulation_groups(QueryContext::topological(path_pqr())), (Ids{"Q"}));
  auto complete = QueryContext::topological(generate_planted_partition({{2, 2, 2}, 1.0, 1.0, 3}));
  EXPECT_TRUE(q::articulation_groups(complete).empty());
}

TEST(GroupOnly, Metrics) {
  auto ctx = f2();
  EXPECT_EQ(q::group_metric(ctx, "C", Metric::parse("node-count")), 4.0);
  EXPECT_EQ(q::group_metric(ctx, "A", Metric::parse("intra-link-count")), 3.0);
  EXPECT_EQ(q::group_metric(ctx, "C", Metric::parse("density")), 0.5);
  EXPECT_EQ(q::group_metric(ctx, "D", Metric::parse("node-count")), 1.0);
  EXPECT_EQ(q::group_metric(ctx, "B", Metric::parse("density")), 1.0);
  try {
    q::group_metric(ctx, "D", Metric::parse("density"));
    FAIL();
  } catch (const Inapplicable& e) {
    EXPECT_NE(std::string(e.what()).find("undefined metric"), std::string::npos);
  }
  try {
    q::group_metric(ctx, "A", Metric::parse("area"));
    FAIL();
  } catch (const Inapplicable& e) {
    EXPECT_NE(std::string(e.what()).find("missing geometry"), std::string::npos);
  }
  EXPECT_THROW(Metric::parse("colorfulness"), NotFound);
}

TEST(GroupOnly, Extremal) {
  auto ctx = f2();
  EXPECT_EQ(q::extremal_groups(ctx, Metric::parse("node-count"), Direction::Max).groups, (Ids{"C"}));
  auto top2 = q::extremal_groups(ctx, Metric::parse("intra-link-count"), Direction::Max, 2);
  EXPECT_EQ(top2.groups, (Ids{"A", "C"}));
  EXPECT_FALSE(top2.tie());
  auto top1 = q::extremal_groups(ctx, Metric::parse("intra-link-count"), Direction::Max, 1);
  EXPECT_EQ(top1.groups, (Ids{"A"}));
  EXPECT_TRUE(top1.tie());
  EXPECT_EQ(top1.tied_beyond, (Ids{"C"}));
  // Singleton D is not eligible for density.
  auto sparse = q::extremal_groups(ctx, Metric::parse("density"), Direction::Min, 3);
  EXPECT_EQ(sparse.groups.size(), 3u);
  EXPECT_EQ(std::count(sparse.groups.begin(), sparse.groups.end(), "D"), 0);
  EXPECT_THROW(q::extremal_groups(ctx, Metric::parse("density"), Direction::Min, 4), InvalidArgument);

  auto single = QueryContext::topological(generate_planted_partition({{3}, 1.0, 0.0, 1}));
  for (const char* m : {"node-count", "intra-link-count", "density", "max-node-degree"})
    EXPECT_EQ(q::extremal_groups(single, Metric::parse(m), Direction::Max).groups, (Ids{"g0"}));
  auto lone = QueryContext::topological(generate_planted_partition({{1}, 1.0, 0.0, 1}));
  EXPECT_THROW(q::extremal_groups(lone, Metric::parse("density"), Direction::Max), Inapplicable);
}

TEST(GroupNode, Membership) {
  auto ctx = f2();
  EXPECT_EQ(q::group_of(ctx, "c4"), "C");
  EXPECT_TRUE(q::same_group(ctx, "a1", "a3"));
  EXPECT_TRUE(q::same_group(ctx, "a1", "a1"));
  EXPECT_FALSE(q::same_group(ctx, "a1", "d1"));
  EXPECT_THROW(q::group_of(ctx, "zz"), NotFound);
  EXPECT_EQ(q::groups_containing(ctx, Predicate::parse("id==d1")), (Ids{"D"}));
  EXPECT_EQ(q::groups_containing(ctx, Predicate::always(true)), (Ids{"A", "B", "C", "D"}));
  EXPECT_TRUE(q::groups_containing(ctx, Predicate::always(false)).empty());
}

TEST(GroupNode, SameGroupIsTheMembershipEquivalence) {
  auto g = generate_planted_partition(oracle::random_params(11));
  auto ctx = QueryContext::topological(g);
  for (const auto& x : g.nodes())
    for (const auto& y : g.nodes())
      EXPECT_EQ(q::same_group(ctx, x.id, y.id), q::group_of(ctx, x.id) == q::group_of(ctx, y.id));
}

TEST(GroupLink, LongestLink) {
  auto g = ClusteredGraph::build({{"p", "p", {}}, {"q", "q", {}}}, {{"p", "q", std::nullopt, {}}},
                                 {{"P", "P", {}}}, {{"p", "P"}, {"q", "P"}});
  LayoutGeometry layout({"p", "q"}, {{0.0, 0.0}, {3.0, 4.0}}, 10.0, 10.0, 0);
  auto ctx = QueryContext::with_geometry(g, layout, RasterParams{1.0, 2.0});
  auto loc = q::longest_link_location(ctx);
  EXPECT_EQ(loc.container, (Ids{"P"}));
  EXPECT_DOUBLE_EQ(loc.length, 5.0);
  EXPECT_THROW(q::longest_link_location(f2()), Inapplicable);

  auto geo = QueryContext::with_geometry(fixture_f2(), 7);
  auto best = q::longest_link_location(geo);
  double scan = 0.0;
  for (std::size_t e = 0; e < geo.g().edge_count(); ++e)
    scan = std::max(scan, link_length(*geo.layout, geo.g(), static_cast<int>(e)));
  EXPECT_DOUBLE_EQ(best.length, scan);
}

TEST(GroupLink, GroupsWithLinks) {
  auto ctx = QueryContext::topological(f2_weighted());
  EXPECT_EQ(q::groups_with_links(ctx, Predicate::parse("weight==max")), (Ids{"B"}));
  EXPECT_TRUE(q::groups_with_links(ctx, Predicate::always(false)).empty());
  EXPECT_EQ(q::groups_with_links(ctx, Predicate::always(true)), (Ids{"A", "B", "C", "D"}));
  EXPECT_THROW(q::groups_with_links(ctx, Predicate::parse("length==max")), Inapplicable);
}

TEST(GroupNetwork, BridgingPairs) {
  EXPECT_EQ(q::bridging_group_pairs(f2()), (std::vector<GroupPair>{{"C", "D"}}));
  auto single = QueryContext::topological(generate_planted_partition({{4}, 1.0, 0.0, 1}));
  EXPECT_TRUE(q::bridging_group_pairs(single).empty());
  // Two links between P and Q and no other route: removing both strands P.
  auto g = ClusteredGraph::build(
      {{"p1", "p1", {}}, {"p2", "p2", {}}, {"q1", "q1", {}}, {"q2", "q2", {}}},
      {{"p1", "p2", std::nullopt, {}}, {"q1", "q2", std::nullopt, {}}, {"p1", "q1", std::nullopt, {}},
       {"p2", "q2", std::nullopt, {}}},
      {{"P", "P", {}}, {"Q", "Q", {}}}, {{"p1", "P"}, {"p2", "P"}, {"q1", "Q"}, {"q2", "Q"}});
  auto ctx = QueryContext::topological(g);
  EXPECT_EQ(q::bridging_group_pairs(ctx), oracle::bridging_pairs(oracle::raw(g)));
  EXPECT_EQ(q::bridging_group_pairs(ctx), (std::vector<GroupPair>{{"P", "Q"}}));
  // A detour through R keeps P and Q connected, so no pair bridges.
  auto detour = ClusteredGraph::build(
      {{"p1", "p1", {}}, {"p2", "p2", {}}, {"q1", "q1", {}}, {"q2", "q2", {}}, {"r", "r", {}}},
      {{"p1", "p2", std::nullopt, {}}, {"q1", "q2", std::nullopt, {}}, {"p1", "q1", std::nullopt, {}},
       {"p2", "q2", std::nullopt, {}}, {"p1", "r", std::nullopt, {}}, {"r", "q1", std::nullopt, {}}},
      {{"P", "P", {}}, {"Q", "Q", {}}, {"R", "R", {}}},
      {{"p1", "P"}, {"p2", "P"}, {"q1", "Q"}, {"q2", "Q"}, {"r", "R"}});
  auto dctx = QueryContext::topological(detour);
  EXPECT_EQ(q::bridging_group_pairs(dctx), oracle::bridging_pairs(oracle::raw(detour)));
  EXPECT_TRUE(q::bridging_group_pairs(dctx).empty());
}

TEST(GroupNetwork, MinCut) {
  auto ctx = f2();
  auto cut = q::min_intergroup_cut(ctx, "A", "D");
  EXPECT_EQ(cut.value, 1);
  EXPECT_EQ(cut.witness, (std::vector<std::pair<std::string, std::string>>{{"c4", "d1"}}));
  auto isolated = QueryContext::topological(generate_planted_partition({{2, 2}, 1.0, 0.0, 1}));
  EXPECT_EQ(q::min_intergroup_cut(isolated, "g0", "g1").value, 0);
  EXPECT_THROW(q::min_intergroup_cut(ctx, "A", "A"), InvalidArgument);
}

TEST(GroupNetwork, PathGroupCheck) {
  auto ctx = f2();
  auto a = q::path_group_check(ctx, "a1", "a2", "a3");
  EXPECT_TRUE(a.path_exists);
  EXPECT_TRUE(a.same_group);
  auto b = q::path_group_check(ctx, "a3", "c1", "c2");
  EXPECT_TRUE(b.path_exists);
  EXPECT_FALSE(b.same_group);
  EXPECT_FALSE(q::path_group_check(ctx, "a1", "d1", "c4").path_exists);
  EXPECT_THROW(q::path_group_check(ctx, "a1", "a1", "a2"), InvalidArgument);
}

TEST(GroupNetwork, MinimumLabelPath) {
  auto ctx = f2();
  auto p = q::min_distinct_groups_path(ctx, "a1", "d1");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->count, 3);
  EXPECT_TRUE(p->exact);
  EXPECT_EQ(p->witness.front(), "a1");
  EXPECT_EQ(p->witness.back(), "d1");
  std::set<std::string> touched;
  for (const auto& v : p->witness) touched.insert(q::group_of(ctx, v));
  EXPECT_EQ(touched.size(), 3u);
  EXPECT_EQ(q::min_distinct_groups_path(ctx, "a1", "b1")->count, 2);
  EXPECT_THROW(q::min_distinct_groups_path(ctx, "a1", "a2"), InvalidArgument);
}

TEST(GroupNetwork, MinimumLabelPathReportsBoundAboveLimit) {
  auto g = generate_planted_partition({{2, 2, 2, 2, 2}, 1.0, 0.3, 4});
  auto ctx = QueryContext::topological(g);
  auto r = oracle::raw(g);
  auto d = oracle::group_distances(r);
  for (const auto& a : g.nodes())
    for (const auto& b : g.nodes()) {
      int ga = g.group_of(g.node_index(a.id)), gb = g.group_of(g.node_index(b.id));
      if (ga == gb || d[ga][gb] >= oracle::kInf) continue;
      auto exact = q::min_distinct_groups_path(ctx, a.id, b.id, 5);
      auto bound = q::min_distinct_groups_path(ctx, a.id, b.id, 4);
      ASSERT_TRUE(exact && bound);
      EXPECT_TRUE(exact->exact);
      EXPECT_FALSE(bound->exact);
      EXPECT_EQ(bound->count, d[ga][gb] + 1);
      EXPECT_TRUE(bound->witness.empty());
      EXPECT_GE(exact->count, bound->count);
    }
}

TEST(Context, ContactVariantNeedsGeometry) {
  EXPECT_THROW(f2().using_contacts(), Inapplicable);
  auto geo = QueryContext::with_geometry(fixture_f2(), 7).using_contacts();
  EXPECT_EQ(geo.m().variant(), MetagraphVariant::ContactBased);
  for (const auto& gr : geo.g().groups())
    for (const auto& n : q::neighbors(geo, gr.id))
      EXPECT_GT(q::group_metric(geo, gr.id, Metric::parse("shared-boundary-with", n)), 0.0);
}

// Property checks over seeded random graphs. The acceptance binary repeats
// the full 100-graph sweep; these keep a smaller slice in the unit suite.
class RandomGraphs : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomGraphs, GroupOnlyOperationsMatchOracles) {
  auto g = generate_planted_partition(oracle::random_params(GetParam()));
  auto ctx = QueryContext::topological(g);
  auto r = oracle::raw(g);
  for (int a = 0; a < r.k; ++a) {
    const std::string& ga = r.group_ids[a];
    ASSERT_EQ(q::neighbors(ctx, ga), oracle::neighbors(r, a));
    ASSERT_EQ(q::accessible(ctx, ga), oracle::accessible(r, a));
    ASSERT_EQ(q::groups_at_distance(ctx, ga, 1), q::neighbors(ctx, ga));
    std::set<std::string> united;
    for (int d = 1; d <= r.k; ++d) {
      auto at = q::groups_at_distance(ctx, ga, d);
      ASSERT_EQ(at, oracle::at_distance(r, a, d));
      united.insert(at.begin(), at.end());
    }
    ASSERT_EQ(Ids(united.begin(), united.end()), q::accessible(ctx, ga));
    for (int b = 0; b < r.k; ++b) {
      if (a == b) continue;
      const std::string& gb = r.group_ids[b];
      bool adj = q::are_adjacent(ctx, ga, gb);
      auto na = q::neighbors(ctx, ga), nb = q::neighbors(ctx, gb);
      ASSERT_EQ(adj, std::binary_search(na.begin(), na.end(), gb));
      ASSERT_EQ(adj, std::binary_search(nb.begin(), nb.end(), ga));
      ASSERT_EQ(q::shortest_group_path(ctx, ga, gb), oracle::shortest_path(r, a, b));
    }
  }
  ASSERT_EQ(q::articulation_groups(ctx), oracle::articulation(r));
  ASSERT_EQ(q::bridging_group_pairs(ctx), oracle::bridging_pairs(r));
}

TEST_P(RandomGraphs, ExtremalMatchesRanking) {
  auto g = generate_planted_partition(oracle::random_params(GetParam()));
  auto ctx = QueryContext::topological(g);
  auto r = oracle::raw(g);
  for (const char* name : {"neighbor-count", "node-count", "intra-link-count", "density",
                           "max-node-degree", "min-node-degree"}) {
    for (bool maximize : {true, false}) {
      auto expected = oracle::ranking(r, name, maximize);
      if (expected.empty()) continue;
      auto got = q::extremal_groups(ctx, Metric::parse(name),
                                    maximize ? Direction::Max : Direction::Min,
                                    static_cast<int>(expected.size()));
      ASSERT_EQ(got.groups.size(), expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i) {
        ASSERT_EQ(got.groups[i], expected[i].first) << name;
        ASSERT_DOUBLE_EQ(got.values[i], expected[i].second) << name;
      }
    }
  }
}

TEST_P(RandomGraphs, CutMatchesFlowAndWitnessSeparates) {
  auto g = generate_planted_partition(oracle::random_params(GetParam()));
  auto ctx = QueryContext::topological(g);
  auto r = oracle::raw(g);
  for (int a = 0; a < r.k; ++a)
    for (int b = a + 1; b < r.k; ++b) {
      auto cut = q::min_intergroup_cut(ctx, r.group_ids[a], r.group_ids[b]);
      ASSERT_EQ(cut.value, oracle::cut_by_flow(r, a, b));
      ASSERT_EQ(static_cast<long long>(cut.witness.size()), cut.value);
      std::vector<bool> dropped(r.edges.size(), false);
      for (const auto& [x, y] : cut.witness) {
        auto e = g.find_edge(g.node_index(x), g.node_index(y));
        ASSERT_TRUE(e);
        dropped[static_cast<std::size_t>(*e)] = true;
      }
      ASSERT_FALSE(oracle::groups_connected(r, a, b, dropped));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGraphs, ::testing::Range<std::uint64_t>(1, 21));

TEST(SmallGraphs, CutMatchesSubsetEnumeration) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed, 8, 4));
    if (g.edge_count() > 12) continue;
    auto ctx = QueryContext::topological(g);
    auto r = oracle::raw(g);
    for (int a = 0; a < r.k; ++a)
      for (int b = a + 1; b < r.k; ++b) {
        auto brute = oracle::cut_by_enumeration(r, a, b, 4);
        if (!brute) continue;
        ASSERT_EQ(q::min_intergroup_cut(ctx, r.group_ids[a], r.group_ids[b]).value, *brute);
        ++checked;
      }
  }
  EXPECT_GT(checked, 50);
}

TEST(SmallGraphs, MinimumLabelPathMatchesExhaustiveSearch) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed, 10, 5));
    auto ctx = QueryContext::topological(g);
    auto r = oracle::raw(g);
    auto d = oracle::group_distances(r);
    for (int x = 0; x < r.n; ++x)
      for (int y = 0; y < r.n; ++y) {
        if (r.group[x] == r.group[y]) continue;
        auto got = q::min_distinct_groups_path(ctx, r.node_ids[x], r.node_ids[y]);
        auto expected = oracle::min_label_path(r, x, y);
        ASSERT_EQ(got.has_value(), expected.has_value());
        if (!got) continue;
        ASSERT_EQ(got->count, *expected);
        ASSERT_GE(got->count, d[r.group[x]][r.group[y]] + 1);
        ++checked;
      }
  }
  EXPECT_GT(checked, 100);
}
