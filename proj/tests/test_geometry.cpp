#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cgraph/error.hpp"
#include "cgraph/kernels.hpp"
#include "cgraph/layout.hpp"
#include "cgraph/metagraph.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cgraph;
using testing_support::fixture_f1;
using testing_support::fixture_f2;

namespace {

std::vector<Vec2> random_points(std::size_t n, std::uint64_t seed, double extent) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, extent);
  std::vector<Vec2> out(n);
  for (auto& p : out) p = {d(rng), d(rng)};
  return out;
}

ClusteredGraph single_node() {
  return ClusteredGraph::build({{"x", "x", {}}}, {}, {{"G", "G", {}}}, {{"x", "G"}});
}

ClusteredGraph two_groups_two_nodes() {
  return ClusteredGraph::build({{"p", "p", {}}, {"q", "q", {}}}, {{"p", "q", std::nullopt, {}}},
                               {{"P", "P", {}}, {"Q", "Q", {}}}, {{"p", "P"}, {"q", "Q"}});
}

}  // namespace

TEST(Kernels, RepulsionBackendsAgreeBitwise) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto pts = random_points(257, seed, 500.0);
    pts[10] = pts[11];  // coincident pair
    std::vector<Vec2> a(pts.size()), b(pts.size());
    kernels::repulsion_serial(pts, 900.0, a);
    kernels::repulsion_parallel(pts, 900.0, b);
    EXPECT_EQ(a, b);
  }
}

TEST(Kernels, RepulsionMatchesPairwiseFormula) {
  std::vector<Vec2> pts{{0, 0}, {3, 4}};
  std::vector<Vec2> disp(2);
  kernels::repulsion_serial(pts, 25.0, disp);
  // |d| = 5, force k2/|d| = 5 along the unit vector (-0.6, -0.8).
  EXPECT_NEAR(disp[0].x, -3.0, 1e-12);
  EXPECT_NEAR(disp[0].y, -4.0, 1e-12);
  EXPECT_NEAR(disp[1].x, 3.0, 1e-12);
  EXPECT_NEAR(disp[1].y, 4.0, 1e-12);
}

TEST(Kernels, NearestSiteBackendsAgreeAndMatchBruteForce) {
  auto sites = random_points(40, 9, 200.0);
  sites[5] = sites[3];  // tie: smaller index must win
  GridSpec grid{50, 40, 5.0};
  std::vector<std::int32_t> serial(50 * 40), parallel(50 * 40);
  kernels::nearest_site_serial(sites, grid, 30.0, serial);
  kernels::nearest_site_parallel(sites, grid, 30.0, parallel);
  EXPECT_EQ(serial, parallel);
  for (int row = 0; row < grid.rows; ++row)
    for (int col = 0; col < grid.columns; ++col) {
      double cx = (col + 0.5) * 5.0, cy = (row + 0.5) * 5.0;
      int best = -1;
      double best_d = 0.0;
      for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
        double d = std::hypot(sites[i].x - cx, sites[i].y - cy);
        if (d <= 30.0 && (best < 0 || d < best_d)) best = i, best_d = d;
      }
      ASSERT_EQ(serial[row * grid.columns + col], best) << row << "," << col;
    }
  EXPECT_EQ(std::count(serial.begin(), serial.end(), 5), 0);
}

TEST(Layout, SingleNodeAtCenter) {
  auto layout = compute_layout(single_node(), 3);
  EXPECT_NEAR(layout.position(0).x, 500.0, 1e-9);
  EXPECT_NEAR(layout.position(0).y, 500.0, 1e-9);
}

TEST(Layout, TwoConnectedNodesSymmetricAboutCenter) {
  for (std::uint64_t seed : {1u, 5u, 77u}) {
    auto layout = compute_layout(two_groups_two_nodes(), seed);
    Vec2 a = layout.position(0), b = layout.position(1);
    EXPECT_NEAR((a.x + b.x) / 2.0, 500.0, 1e-6);
    EXPECT_NEAR((a.y + b.y) / 2.0, 500.0, 1e-6);
  }
}

TEST(Layout, DeterministicAndInsideCanvas) {
  auto f2 = fixture_f2();
  auto a = compute_layout(f2, 7);
  auto b = compute_layout(f2, 7);
  EXPECT_EQ(a, b);
  LayoutParams serial;
  serial.backend = kernels::Backend::Serial;
  EXPECT_EQ(compute_layout(f2, 7, serial), a);
  for (auto p : a.positions()) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.x, a.width());
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.y, a.height());
  }
}

TEST(Layout, EmptyGraphRejected) {
  EXPECT_THROW(compute_layout(ClusteredGraph{}, 1), InvalidArgument);
}

TEST(Layout, ExportRoundTrip) {
  auto f2 = fixture_f2();
  auto layout = compute_layout(f2, 7);
  auto raster = rasterize_regions(layout, f2);
  std::string text = serialize_layout(layout, &raster);
  EXPECT_EQ(load_layout(text, f2), layout);
  auto params = load_raster_params(text);
  EXPECT_EQ(params.cell_size, raster.cell_size());
  EXPECT_EQ(params.reach, raster.reach());
  EXPECT_THROW(load_layout(text, fixture_f1()), ValidationError);
}

TEST(Raster, SingleNodeDisc) {
  auto g = single_node();
  LayoutGeometry layout({"x"}, {{500.0, 500.0}}, 1000.0, 1000.0, 0);
  const double reach = 20.0, cell = 10.0;  // reach = 2 * cell size
  auto r = rasterize_regions(layout, g, cell, reach);
  std::size_t expected = 0;
  for (int row = 0; row < r.rows(); ++row)
    for (int col = 0; col < r.columns(); ++col) {
      bool inside = std::hypot((col + 0.5) * cell - 500.0, (row + 0.5) * cell - 500.0) <= reach;
      expected += inside;
      EXPECT_EQ(r.at(row, col), inside ? 0 : RegionRaster::kBackground);
    }
  EXPECT_EQ(r.cell_count(0), expected);
  EXPECT_DOUBLE_EQ(group_area(r, "G"), static_cast<double>(expected) * cell * cell);
}

TEST(Raster, DiscAreaConvergesAtFineCells) {
  auto g = single_node();
  LayoutGeometry layout({"x"}, {{500.0, 500.0}}, 1000.0, 1000.0, 0);
  const double reach = 40.0;
  auto r = rasterize_regions(layout, g, reach / 8.0, reach);
  double exact = std::numbers::pi * reach * reach;
  EXPECT_LT(std::fabs(group_area(r, "G") - exact) / exact, 0.15);
}

TEST(Raster, FarApartGroupsNeverTouch) {
  auto g = two_groups_two_nodes();
  LayoutGeometry layout({"p", "q"}, {{200.0, 500.0}, {300.0, 500.0}}, 1000.0, 1000.0, 0);
  auto r = rasterize_regions(layout, g, 5.0, 40.0);  // 100 > 2 * 40
  EXPECT_EQ(r.contact_count(0, 1), 0u);
  EXPECT_DOUBLE_EQ(shared_boundary_length(r, "P", "Q"), 0.0);
  auto near = rasterize_regions(layout, g, 5.0, 60.0);
  EXPECT_GT(near.contact_count(0, 1), 0u);
}

TEST(Raster, DegenerateGridAndBadArguments) {
  auto g = single_node();
  LayoutGeometry layout({"x"}, {{5.0, 5.0}}, 10.0, 10.0, 0);
  try {
    rasterize_regions(layout, g, 20.0, 5.0);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate grid"), std::string::npos);
  }
  EXPECT_THROW(rasterize_regions(layout, g, 0.0, 5.0), InvalidArgument);
  auto r = rasterize_regions(layout, g, 1.0, 5.0);
  EXPECT_THROW(group_area(r, "nope"), NotFound);
  EXPECT_THROW(shared_boundary_length(r, "G", "G"), InvalidArgument);
}

TEST(Raster, EveryF2GroupOwnsCellsAndBoundaryIsSymmetric) {
  auto f2 = fixture_f2();
  for (std::uint64_t seed : {1u, 7u, 13u}) {
    auto layout = compute_layout(f2, seed);
    auto r = rasterize_regions(layout, f2);
    for (std::size_t gi = 0; gi < f2.group_count(); ++gi) EXPECT_GT(r.cell_count(static_cast<int>(gi)), 0u);
    for (const auto& a : f2.groups())
      for (const auto& b : f2.groups())
        if (a.id != b.id)
          EXPECT_EQ(shared_boundary_length(r, a.id, b.id), shared_boundary_length(r, b.id, a.id));
    auto serial = rasterize_regions(layout, f2, RasterParams{}.cell_size, RasterParams{}.reach, kernels::Backend::Serial);
    EXPECT_EQ(serial, r);
  }
}

TEST(Raster, ContactCountsMatchCellScan) {
  auto f2 = fixture_f2();
  auto r = rasterize_regions(compute_layout(f2, 3), f2);
  std::map<std::pair<int, int>, std::size_t> expected;
  for (int row = 0; row < r.rows(); ++row)
    for (int col = 0; col < r.columns(); ++col) {
      int here = r.at(row, col);
      if (here < 0) continue;
      for (auto [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{0, -1}, std::pair{-1, 0}}) {
        int rr = row + dr, cc = col + dc;
        if (rr < 0 || cc < 0 || rr >= r.rows() || cc >= r.columns()) continue;
        int there = r.at(rr, cc);
        if (there >= 0 && there != here) ++expected[{std::min(here, there), std::max(here, there)}];
      }
    }
  for (auto& [key, count] : expected) count /= 2;  // each adjacency seen from both sides
  EXPECT_EQ(r.contacts(), expected);
}

TEST(Geometry, LinkLength) {
  auto g = two_groups_two_nodes();
  LayoutGeometry layout({"p", "q"}, {{0.0, 0.0}, {3.0, 4.0}}, 10.0, 10.0, 0);
  EXPECT_DOUBLE_EQ(link_length(layout, g, "p", "q"), 5.0);
  LayoutGeometry same({"p", "q"}, {{2.0, 2.0}, {2.0, 2.0}}, 10.0, 10.0, 0);
  EXPECT_DOUBLE_EQ(link_length(same, g, 0), 0.0);
  EXPECT_THROW(link_length(layout, g, 3), NotFound);
}

TEST(Metagraph, F1Courier) {
  auto f1 = fixture_f1();
  auto m = build_link_metagraph(f1);
  int na = f1.group_index("NorthAmerica"), eu = f1.group_index("Europe"), as = f1.group_index("Asia");
  EXPECT_TRUE(m.adjacent(na, eu));
  EXPECT_TRUE(m.adjacent(eu, as));
  EXPECT_FALSE(m.adjacent(na, as));
  EXPECT_EQ(m.edges().size(), 2u);
}

TEST(Metagraph, F2LinkWeights) {
  auto f2 = fixture_f2();
  auto m = build_link_metagraph(f2);
  std::vector<std::tuple<std::string, std::string, double>> got;
  for (const auto& e : m.edges())
    got.emplace_back(f2.group(e.a).id, f2.group(e.b).id, e.weight);
  std::vector<std::tuple<std::string, std::string, double>> expected{
      {"A", "B", 1.0}, {"A", "C", 1.0}, {"B", "C", 1.0}, {"C", "D", 1.0}};
  EXPECT_EQ(got, expected);
  EXPECT_EQ(to_string(m.variant()), std::string("link-based"));
}

TEST(Metagraph, LinkMetagraphMatchesEdgeScanOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed));
    auto r = oracle::raw(g);
    auto adj = oracle::group_adjacency(r);
    auto m = build_link_metagraph(g);
    for (int a = 0; a < r.k; ++a)
      for (int b = 0; b < r.k; ++b)
        if (a != b) ASSERT_EQ(m.adjacent(a, b), adj[a][b]) << "seed " << seed;
  }
}

TEST(Metagraph, ContactVariantCoversAllGroups) {
  auto f2 = fixture_f2();
  auto r = rasterize_regions(compute_layout(f2, 7), f2);
  auto m = build_contact_metagraph(r, f2);
  EXPECT_EQ(m.size(), f2.group_count());
  for (const auto& e : m.edges())
    EXPECT_DOUBLE_EQ(e.weight, shared_boundary_length(r, f2.group(e.a).id, f2.group(e.b).id));
  EXPECT_THROW(build_contact_metagraph(r, fixture_f1()), InvalidArgument);
}

TEST(Metagraph, ExportCarriesVariant) {
  auto f2 = fixture_f2();
  auto doc = nlohmann::json::parse(serialize_metagraph(build_link_metagraph(f2), f2));
  EXPECT_EQ(doc["variant"], "link-based");
  EXPECT_EQ(doc["nodes"].size(), 4u);
  EXPECT_EQ(doc["edges"].size(), 4u);
}
