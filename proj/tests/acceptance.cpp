// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "cgraph/error.hpp"
#include "cgraph/layout.hpp"
#include "cgraph/queries.hpp"
#include "cgraph/tasks.hpp"
#include "oracles.hpp"
#include "study_driver.hpp"
#include "support.hpp"

using namespace cgraph;
namespace q = cgraph::queries;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects mismatch descriptions; keeps the first few for the report.
class Mismatches {
 public:
  void add(const std::string& what) {
    if (count_++ < 3) first_.push_back(what);
  }
  void check(bool ok, const std::string& what) {
    if (!ok) add(what);
  }
  std::size_t count() const { return count_; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " mismatches";
    for (const auto& f : first_) s += "; " + f;
    return s;
  }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> first_;
};

std::string seed_tag(std::uint64_t seed) { return "seed " + std::to_string(seed); }

/// reach[x][y]: some node path joins x and y.
std::vector<std::vector<bool>> node_reachability(const oracle::Raw& r) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(r.n));
  for (const auto& [a, b] : r.edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(r.n), std::vector<bool>(static_cast<std::size_t>(r.n)));
  for (int s = 0; s < r.n; ++s) {
    std::vector<int> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (!reach[s][w]) {
          reach[s][w] = true;
          stack.push_back(w);
        }
    }
  }
  return reach;
}

Outcome taxonomy_coverage() {
  const auto& all = list_templates();
  std::map<TaskCategory, int> counts;
  for (const auto& t : all) ++counts[t.category];
  Mismatches m;
  m.check(all.size() == 29, "template count " + std::to_string(all.size()));
  m.check(counts[TaskCategory::GroupOnly] == 14 && counts[TaskCategory::GroupNode] == 5 &&
              counts[TaskCategory::GroupLink] == 5 && counts[TaskCategory::GroupNetwork] == 5,
          "category counts");

  std::map<std::string, int> executed;
  std::size_t runs = 0;
  const std::uint64_t graphs = 50;
  for (std::uint64_t seed = 1; seed <= graphs; ++seed) {
    auto ctx = QueryContext::with_geometry(generate_planted_partition(oracle::random_params(seed)), seed);
    for (const auto& t : all) {
      try {
        auto inst = instantiate(t.id, ctx, seed);
        auto again = recompute_ground_truth(inst, ctx);
        auto text = format_answer(inst.answer_kind, inst.ground_truth.value);
        bool ok = again == inst.ground_truth && score(inst, inst.ground_truth.value).correct &&
                  score(inst, parse_answer_text(inst.answer_kind, text)).correct;
        m.check(ok, t.id + " " + seed_tag(seed));
        ++executed[t.id];
        ++runs;
      } catch (const Inapplicable&) {
      } catch (const std::exception& e) {
        m.add(t.id + " " + seed_tag(seed) + ": " + e.what());
      }
    }
  }
  std::size_t never = 0;
  for (const auto& t : all)
    if (executed[t.id] == 0) {
      ++never;
      m.add(t.id + " never applicable");
    }
  return {m.count() == 0, std::to_string(runs) + " instances on " + std::to_string(graphs) +
                              " graphs, " + std::to_string(never) + " templates never ran, " +
                              m.summary()};
}

Outcome transit_narrative() {
  auto ctx = QueryContext::topological(testing_support::fixture_f1());
  auto path = q::shortest_group_path(ctx, "NorthAmerica", "Asia");
  Mismatches m;
  m.check(path == std::vector<std::string>{"NorthAmerica", "Europe", "Asia"}, "shortest path");
  m.check(!q::are_adjacent(ctx, "NorthAmerica", "Asia"), "adjacency");
  m.check(q::articulation_groups(ctx) == std::vector<std::string>{"Europe"}, "articulation");
  return {m.count() == 0, m.summary()};
}

Outcome golden_descriptors() {
  using testing_support::read_text;
  using testing_support::test_path;
  Mismatches m;
  m.check(describe("GO-11", {true, false}).serialize() == read_text(test_path("golden/adjacency_locate.json")),
          "adjacency/locate");
  m.check(describe("GO-11", {true, true}).serialize() == read_text(test_path("golden/adjacency_lookup.json")),
          "adjacency/lookup");
  m.check(describe("GL-2", {false, false}).serialize() == read_text(test_path("golden/top3_links_explore.json")),
          "top-3 links/explore");
  return {m.count() == 0, "3 descriptors, " + m.summary()};
}

Outcome oracle_equivalence() {
  Mismatches m;
  std::size_t checks = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed));
    auto ctx = QueryContext::topological(g);
    auto r = oracle::raw(g);
    const std::string tag = seed_tag(seed);
    for (int a = 0; a < r.k; ++a) {
      const std::string& ga = r.group_ids[a];
      m.check(q::neighbors(ctx, ga) == oracle::neighbors(r, a), tag + " neighbors " + ga);
      m.check(q::accessible(ctx, ga) == oracle::accessible(r, a), tag + " accessible " + ga);
      for (int d = 1; d <= r.k; ++d)
        m.check(q::groups_at_distance(ctx, ga, d) == oracle::at_distance(r, a, d), tag + " distance " + ga);
      for (int b = 0; b < r.k; ++b)
        if (a != b)
          m.check(q::shortest_group_path(ctx, ga, r.group_ids[b]) == oracle::shortest_path(r, a, b),
                  tag + " path " + ga);
      checks += 3 + 2 * static_cast<std::size_t>(r.k);
    }
    m.check(q::articulation_groups(ctx) == oracle::articulation(r), tag + " articulation");
    for (const char* name : {"neighbor-count", "node-count", "intra-link-count", "density",
                             "max-node-degree", "min-node-degree"})
      for (bool maximize : {true, false}) {
        auto expected = oracle::ranking(r, name, maximize);
        if (expected.empty()) continue;
        auto got = q::extremal_groups(ctx, Metric::parse(name), maximize ? Direction::Max : Direction::Min,
                                      static_cast<int>(expected.size()));
        bool same = got.groups.size() == expected.size();
        for (std::size_t i = 0; same && i < expected.size(); ++i)
          same = got.groups[i] == expected[i].first && got.values[i] == expected[i].second;
        m.check(same, tag + " extremal " + name);
        ++checks;
      }
  }
  return {m.count() == 0, std::to_string(checks) + " comparisons on 100 graphs, " + m.summary()};
}

Outcome cut_correctness() {
  Mismatches m;
  std::size_t enumerated = 0, flowed = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed, 8, 4));
    if (g.edge_count() > 12) continue;
    auto ctx = QueryContext::topological(g);
    auto r = oracle::raw(g);
    for (int a = 0; a < r.k; ++a)
      for (int b = a + 1; b < r.k; ++b) {
        auto brute = oracle::cut_by_enumeration(r, a, b, 4);
        if (!brute) continue;
        m.check(q::min_intergroup_cut(ctx, r.group_ids[a], r.group_ids[b]).value == *brute,
                "small " + seed_tag(seed));
        ++enumerated;
      }
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed));
    auto ctx = QueryContext::topological(g);
    auto r = oracle::raw(g);
    for (int a = 0; a < r.k; ++a)
      for (int b = a + 1; b < r.k; ++b) {
        auto cut = q::min_intergroup_cut(ctx, r.group_ids[a], r.group_ids[b]);
        std::vector<bool> dropped(r.edges.size(), false);
        bool witness_ok = static_cast<long long>(cut.witness.size()) == cut.value;
        for (const auto& [x, y] : cut.witness) {
          auto e = g.find_edge(g.node_index(x), g.node_index(y));
          if (!e) {
            witness_ok = false;
            continue;
          }
          dropped[static_cast<std::size_t>(*e)] = true;
        }
        witness_ok = witness_ok && !oracle::groups_connected(r, a, b, dropped);
        m.check(cut.value == oracle::cut_by_flow(r, a, b) && witness_ok, "random " + seed_tag(seed));
        ++flowed;
      }
  }
  return {m.count() == 0, std::to_string(enumerated) + " enumerated pairs, " + std::to_string(flowed) +
                              " flow pairs, " + m.summary()};
}

Outcome min_label_path() {
  Mismatches m;
  std::size_t exhaustive = 0, bounded = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed, 10, 5));
    auto ctx = QueryContext::topological(g);
    auto r = oracle::raw(g);
    for (int x = 0; x < r.n; ++x)
      for (int y = 0; y < r.n; ++y) {
        if (r.group[x] == r.group[y]) continue;
        auto got = q::min_distinct_groups_path(ctx, r.node_ids[x], r.node_ids[y]);
        auto expected = oracle::min_label_path(r, x, y);
        bool ok = got.has_value() == expected.has_value();
        if (ok && got) ok = got->exact && got->count == *expected;
        m.check(ok, "exhaustive " + seed_tag(seed));
        ++exhaustive;
      }
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = generate_planted_partition(oracle::random_params(seed));
    auto ctx = QueryContext::topological(g);
    auto r = oracle::raw(g);
    auto d = oracle::group_distances(r);
    const int groups = r.k;
    auto reach = node_reachability(r);
    for (int x = 0; x < r.n; x += 3)
      for (int y = 1; y < r.n; y += 3) {
        int gx = r.group[x], gy = r.group[y];
        if (gx == gy || d[gx][gy] >= oracle::kInf) continue;
        auto at_limit = q::min_distinct_groups_path(ctx, r.node_ids[x], r.node_ids[y], groups);
        auto below = q::min_distinct_groups_path(ctx, r.node_ids[x], r.node_ids[y], groups - 1);
        // Connected groups do not imply connected nodes.
        bool ok = at_limit.has_value() == below.has_value() && at_limit.has_value() == reach[x][y];
        if (ok && at_limit)
          ok = at_limit->exact && !below->exact && at_limit->count >= d[gx][gy] + 1 &&
               below->count == d[gx][gy] + 1;
        m.check(ok, "bound " + seed_tag(seed));
        ++bounded;
      }
  }
  return {m.count() == 0, std::to_string(exhaustive) + " exhaustive pairs, " + std::to_string(bounded) +
                              " bound/flag pairs, " + m.summary()};
}

/// Serialized outputs of the whole pipeline for one seed.
std::string pipeline(std::uint64_t seed, kernels::Backend backend) {
  auto g = generate_planted_partition(oracle::random_params(seed));
  std::string out = serialize_graph(g);
  LayoutParams lp;
  lp.backend = backend;
  auto layout = compute_layout(g, seed, lp);
  RasterParams rp;
  auto raster = rasterize_regions(layout, g, rp.cell_size, rp.reach, backend);
  out += serialize_layout(layout, &raster);
  auto ctx = QueryContext::with_geometry(g, layout, rp);
  for (const auto& t : list_templates()) {
    try {
      out += instance_to_json(instantiate(t.id, ctx, seed), true).dump();
    } catch (const Inapplicable& e) {
      out += e.what();
    }
  }
  return out;
}

Outcome determinism() {
  Mismatches m;
  for (std::uint64_t seed : {1u, 17u, 42u}) {
    auto first = pipeline(seed, kernels::Backend::Parallel);
    m.check(first == pipeline(seed, kernels::Backend::Parallel), "rerun " + seed_tag(seed));
    m.check(first == pipeline(seed, kernels::Backend::Serial), "backend " + seed_tag(seed));
  }
  return {m.count() == 0, "3 seeds x (rerun, serial vs parallel), " + m.summary()};
}

Outcome geometry_convergence() {
  Mismatches m;
  auto single = generate_planted_partition({{1}, 1.0, 0.0, 1});
  double worst = 0.0;
  for (double reach : {20.0, 40.0, 60.0, 100.0}) {
    LayoutGeometry layout({single.node(0).id}, {{500.0, 500.0}}, 1000.0, 1000.0, 0);
    auto r = rasterize_regions(layout, single, reach / 8.0, reach);
    double exact = std::numbers::pi * reach * reach;
    double err = std::fabs(group_area(r, single.group(0).id) - exact) / exact;
    worst = std::max(worst, err);
    m.check(err < 0.15, "disc reach " + std::to_string(reach));
  }
  std::size_t pairs = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto ctx = QueryContext::with_geometry(generate_planted_partition(oracle::random_params(seed)), seed);
    const auto& groups = ctx.g().groups();
    for (const auto& a : groups)
      for (const auto& b : groups) {
        if (a.id == b.id) continue;
        m.check(shared_boundary_length(*ctx.raster, a.id, b.id) == shared_boundary_length(*ctx.raster, b.id, a.id),
                "asymmetric " + a.id + "/" + b.id + " " + seed_tag(seed));
        ++pairs;
      }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst disc error %.4f", worst);
  return {m.count() == 0, std::string(buf) + ", " + std::to_string(pairs) + " boundary pairs, " + m.summary()};
}

Outcome service_integrity() {
  std::vector<std::string> ids;
  for (const auto& t : list_templates()) ids.push_back(t.id);
  auto build = build_bundle(QueryContext::with_geometry(testing_support::fixture_f2(), 7), ids, 7, "f2");
  const StudyBundle& bundle = build.bundle;
  Mismatches m;
  m.check(bundle.instances.size() == 29, std::to_string(bundle.instances.size()) + " instances");

  auto dir = std::filesystem::temp_directory_path() / "cgraph-acceptance-service";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  StudyResults exported;
  std::size_t divergent = 0;
  {
    StudyService svc(dir);
    testing_support::LoopbackServer server(svc);
    httplib::Client client("127.0.0.1", server.port());
    auto posted = client.Post("/studies", serialize_bundle(bundle), "application/json");
    m.check(posted && posted->status == 200, "study upload");
    auto run = testing_support::run_participant(server.port(), bundle, "scripted");
    m.check(run.errors == 0 && run.submitted == bundle.instances.size(), "scripted client");
    auto results = client.Get("/studies/f2/results");
    m.check(results && results->status == 200, "results export");
    if (results) exported = StudyResults::from_json(nlohmann::json::parse(results->body));
    m.check(exported.records.size() == bundle.instances.size(), "record count");
    divergent = rescore_divergences(bundle, exported).size();
    m.check(divergent == 0, std::to_string(divergent) + " divergent records");
  }
  StudyService restarted(dir);
  m.check(restarted.export_results("f2") == exported, "replay differs");
  return {m.count() == 0, std::to_string(exported.records.size()) + " records, " + std::to_string(divergent) +
                              " divergences, " + m.summary()};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double time_limit_s;  // 0 = untimed
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"taxonomy-coverage", taxonomy_coverage, 60.0},
      {"transit-narrative", transit_narrative, 0.0},
      {"golden-descriptors", golden_descriptors, 0.0},
      {"oracle-equivalence", oracle_equivalence, 120.0},
      {"cut-correctness", cut_correctness, 0.0},
      {"minimum-label-path", min_label_path, 0.0},
      {"determinism", determinism, 0.0},
      {"geometry-convergence", geometry_convergence, 0.0},
      {"service-integrity", service_integrity, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    if (!o.pass) ++failed;
    std::printf("%s %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
