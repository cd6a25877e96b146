#include "cgraph/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cgraph/bundle.hpp"
#include "cgraph/error.hpp"
#include "cgraph/http_server.hpp"
#include "cgraph/layout.hpp"
#include "cgraph/metagraph.hpp"
#include "cgraph/queries.hpp"
#include "cgraph/study.hpp"
#include "cgraph/tasks.hpp"

namespace cgraph {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInapplicable = 3;
constexpr int kExitBind = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15)
    return std::to_string(static_cast<long long>(v));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) {
    if (!s.empty()) s += ' ';
    s += id;
  }
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct StimulusOptions {
  std::string layout_file;
  std::optional<std::uint64_t> layout_seed;
  std::optional<double> cell_size;
  std::optional<double> reach;
  bool contact = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--layout", layout_file, "Layout export to use as geometry");
    cmd->add_option("--layout-seed", layout_seed, "Compute a layout with this seed");
    cmd->add_option("--cell-size", cell_size, "Raster cell size");
    cmd->add_option("--reach", reach, "Raster reach");
    cmd->add_flag("--contact", contact, "Use the contact-based metagraph");
  }

  QueryContext load(const std::string& graph_file) const {
    ClusteredGraph g = load_clustered_graph_file(graph_file);
    QueryContext ctx;
    RasterParams raster;
    if (!layout_file.empty()) {
      std::string doc = read_file(layout_file);
      raster = load_raster_params(doc);
      if (cell_size) raster.cell_size = *cell_size;
      if (reach) raster.reach = *reach;
      LayoutGeometry layout = load_layout(doc, g);
      ctx = QueryContext::with_geometry(std::move(g), std::move(layout), raster);
    } else if (layout_seed) {
      if (cell_size) raster.cell_size = *cell_size;
      if (reach) raster.reach = *reach;
      ctx = QueryContext::with_geometry(std::move(g), *layout_seed, raster);
    } else {
      ctx = QueryContext::topological(std::move(g));
    }
    return contact ? ctx.using_contacts() : ctx;
  }
};

void expect_args(const std::string& op, const std::vector<std::string>& args, std::size_t n) {
  if (args.size() != n)
    throw InvalidArgument(op + " takes " + std::to_string(n) + " argument(s), got " +
                          std::to_string(args.size()));
}

int parse_int(const std::string& text) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("expected an integer, got '" + text + "'");
}

Direction parse_direction(const std::string& text) {
  if (text == "max") return Direction::Max;
  if (text == "min") return Direction::Min;
  throw InvalidArgument("direction must be max or min, got '" + text + "'");
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

bool is_metric_name(const std::string& op) {
  try {
    Metric::parse(op, "x");
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Runs a template by id: explicit positional bindings, or seeded instantiation.
void run_template(const std::string& id, const std::vector<std::string>& args,
                  const QueryContext& ctx, std::uint64_t seed, std::ostream& out,
                  std::ostream& err) {
  const TaskTemplate& t = find_template(id);
  TaskInstance inst;
  if (args.empty() && !t.parameters.empty()) {
    inst = instantiate(id, ctx, seed);
  } else {
    expect_args(id, args, t.parameters.size());
    Bindings b;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const ParamSlot& slot = t.parameters[i];
      if (slot.kind == ParamKind::Integer) b.emplace_back(slot.name, std::int64_t{parse_int(args[i])});
      else b.emplace_back(slot.name, args[i]);
    }
    inst = cgraph::bind(id, ctx, b);
  }
  err << inst.prompt << '\n';
  out << format_answer(inst.answer_kind, inst.ground_truth.value) << '\n';
}

void run_query(const std::string& op, const std::vector<std::string>& args,
               const QueryContext& ctx, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  namespace q = queries;
  auto a = [&](std::size_t i) -> const std::string& { return args[i]; };

  if (op.size() > 3 && op[2] == '-' && (op.rfind("GO", 0) == 0 || op.rfind("GN", 0) == 0 ||
                                         op.rfind("GL", 0) == 0 || op.rfind("GX", 0) == 0)) {
    run_template(op, args, ctx, seed, out, err);
    return;
  }
  if (op == "neighbors") {
    expect_args(op, args, 1);
    out << join(q::neighbors(ctx, a(0))) << '\n';
  } else if (op == "accessible") {
    expect_args(op, args, 1);
    out << join(q::accessible(ctx, a(0))) << '\n';
  } else if (op == "groups-at-distance") {
    expect_args(op, args, 2);
    out << join(q::groups_at_distance(ctx, a(0), parse_int(a(1)))) << '\n';
  } else if (op == "common-neighbors") {
    expect_args(op, args, 2);
    out << join(q::common_neighbors(ctx, a(0), a(1))) << '\n';
  } else if (op == "shortest-group-path") {
    expect_args(op, args, 2);
    auto path = q::shortest_group_path(ctx, a(0), a(1));
    if (!path) throw Inapplicable("groups " + a(0) + " and " + a(1) + " are disconnected");
    out << join(*path) << '\n';
  } else if (op == "find-groups") {
    expect_args(op, args, 1);
    out << join(q::find_groups(ctx, Predicate::parse(a(0)))) << '\n';
  } else if (op == "are-adjacent") {
    expect_args(op, args, 2);
    out << yes_no(q::are_adjacent(ctx, a(0), a(1))) << '\n';
  } else if (op == "articulation-groups") {
    expect_args(op, args, 0);
    out << join(q::articulation_groups(ctx)) << '\n';
  } else if (op == "count-groups") {
    expect_args(op, args, 0);
    out << count_groups(ctx.g()) << '\n';
  } else if (op == "shared-boundary-with") {
    expect_args(op, args, 2);
    out << format_number(q::group_metric(ctx, a(0), Metric::parse(op, a(1)))) << '\n';
  } else if (is_metric_name(op)) {
    expect_args(op, args, 1);
    out << format_number(q::group_metric(ctx, a(0), Metric::parse(op))) << '\n';
  } else if (op == "extremal-groups") {
    // extremal-groups METRIC max|min [k] [reference]
    if (args.size() < 2 || args.size() > 4)
      throw InvalidArgument("extremal-groups takes METRIC max|min [k] [reference]");
    int k = args.size() >= 3 ? parse_int(a(2)) : 1;
    Metric metric = Metric::parse(a(0), args.size() == 4 ? a(3) : std::string());
    RankedGroups r = q::extremal_groups(ctx, metric, parse_direction(a(1)), k);
    out << join(r.groups) << '\n';
    if (r.tie()) err << "tie with: " << join(r.tied_beyond) << '\n';
  } else if (op == "group-of") {
    expect_args(op, args, 1);
    out << q::group_of(ctx, a(0)) << '\n';
  } else if (op == "same-group") {
    expect_args(op, args, 2);
    out << yes_no(q::same_group(ctx, a(0), a(1))) << '\n';
  } else if (op == "groups-containing") {
    expect_args(op, args, 1);
    out << join(q::groups_containing(ctx, Predicate::parse(a(0)))) << '\n';
  } else if (op == "longest-link") {
    expect_args(op, args, 0);
    LinkLocation loc = q::longest_link_location(ctx);
    out << join(loc.container) << '\n';
    err << loc.source << " - " << loc.target << " length " << format_number(loc.length) << '\n';
  } else if (op == "groups-with-links") {
    expect_args(op, args, 1);
    out << join(q::groups_with_links(ctx, Predicate::parse(a(0)))) << '\n';
  } else if (op == "bridging-group-pairs") {
    expect_args(op, args, 0);
    for (const auto& [x, y] : q::bridging_group_pairs(ctx)) out << x << ' ' << y << '\n';
  } else if (op == "min-intergroup-cut") {
    expect_args(op, args, 2);
    CutResult cut = q::min_intergroup_cut(ctx, a(0), a(1));
    out << cut.value << '\n';
    for (const auto& [x, y] : cut.witness) err << x << " - " << y << '\n';
  } else if (op == "path-group-check") {
    expect_args(op, args, 3);
    PathGroupCheck c = q::path_group_check(ctx, a(0), a(1), a(2));
    out << "path " << yes_no(c.path_exists) << "\nsame-group " << yes_no(c.same_group) << '\n';
  } else if (op == "min-distinct-groups-path") {
    expect_args(op, args, 2);
    auto path = q::min_distinct_groups_path(ctx, a(0), a(1));
    if (!path) throw Inapplicable("no path between " + a(0) + " and " + a(1));
    out << path->count << (path->exact ? "" : " bound") << '\n';
    if (!path->witness.empty()) err << join(path->witness) << '\n';
  } else {
    throw NotFound("unknown operation: " + op);
  }
}

int cmd_bundle(const std::string& graph_file, const std::string& templates, std::uint64_t seed,
               std::string study_id, bool reveal, bool skip_inapplicable,
               const StimulusOptions& stim, const std::string& output, std::ostream& out,
               std::ostream& err) {
  StimulusOptions s = stim;
  if (s.layout_file.empty() && !s.layout_seed) s.layout_seed = seed;
  QueryContext ctx = s.load(graph_file);
  std::vector<std::string> ids;
  if (templates == "all") {
    for (const auto& t : list_templates()) ids.push_back(t.id);
  } else {
    ids = split_list(templates);
    if (ids.empty()) throw InvalidArgument("no template ids given");
  }
  if (study_id.empty()) study_id = std::filesystem::path(graph_file).stem().string();
  BundleBuild build = build_bundle(ctx, ids, seed, study_id);
  build.bundle.reveal_correctness = reveal;
  for (const auto& [id, reason] : build.skipped) err << "skipped " << id << ": " << reason << '\n';
  if (!build.skipped.empty() && !skip_inapplicable) return kExitInapplicable;
  write_output(output, serialize_bundle(build.bundle), out);
  err << build.bundle.instances.size() << " instances\n";
  return 0;
}

int cmd_serve(const std::string& bundle_dir, const std::string& host, int port,
              const std::string& data_dir, std::ostream& err) {
  std::optional<std::filesystem::path> data;
  if (!data_dir.empty()) data = data_dir;
  StudyService service(data);
  if (!bundle_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(bundle_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      StudyBundle b = load_bundle_file(f.string());
      if (service.has_study(b.study_id)) continue;
      err << "loaded study " << service.create_study(std::move(b)) << " from " << f.string() << '\n';
    }
  }
  StudyHttpServer server(service);
  int bound = 0;
  try {
    bound = server.bind(host, port);
  } catch (const BindError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBind;
  }
  err << "listening on " << host << ':' << bound << std::endl;
  server.listen();
  return 0;
}

int cmd_score(const std::string& export_file, const std::string& bundle_file, std::ostream& out) {
  StudyBundle bundle = load_bundle_file(bundle_file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(export_file));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed results export: ") + e.what());
  }
  StudyResults results = StudyResults::from_json(doc);
  if (results.study_id != bundle.study_id)
    throw ValidationError("export is for study " + results.study_id + ", bundle is " +
                          bundle.study_id);
  auto divergent = rescore_divergences(bundle, results);
  out << "records " << results.records.size() << '\n';
  out << "divergences " << divergent.size() << '\n';
  for (const auto& r : divergent)
    out << "  " << r.session_id << ' ' << r.instance_id << " recorded "
        << (r.correct ? "correct" : "incorrect") << '\n';
  return divergent.empty() ? 0 : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clustered-graph query engine and study harness", "cgraph"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a planted-partition clustered graph");
  std::string sizes_text;
  std::optional<int> group_count;
  PlantedPartitionParams pp;
  std::string gen_out;
  gen->add_option("--sizes", sizes_text, "Comma-separated group sizes")->required();
  gen->add_option("--groups", group_count, "Number of groups (must match --sizes)");
  gen->add_option("--p-in", pp.p_in, "Intra-group edge probability")->required();
  gen->add_option("--p-out", pp.p_out, "Inter-group edge probability")->required();
  gen->add_option("--seed", pp.seed, "Generator seed");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // layout
  auto* lay = app.add_subcommand("layout", "Compute a layout and region raster export");
  std::string lay_graph, lay_out, lay_backend = "parallel";
  std::uint64_t lay_seed = 1;
  LayoutParams lp;
  RasterParams rp;
  lay->add_option("graph", lay_graph, "Graph file")->required();
  lay->add_option("--seed", lay_seed, "Layout seed");
  lay->add_option("--iterations", lp.iterations, "Iteration count");
  lay->add_option("--width", lp.width, "Canvas width");
  lay->add_option("--height", lp.height, "Canvas height");
  lay->add_option("--cell-size", rp.cell_size, "Raster cell size");
  lay->add_option("--reach", rp.reach, "Raster reach");
  lay->add_option("--backend", lay_backend, "serial or parallel")
      ->check(CLI::IsMember({"serial", "parallel"}));
  lay->add_option("-o,--output", lay_out, "Output file (default stdout)");

  // metagraph
  auto* meta = app.add_subcommand("metagraph", "Export the metagraph");
  std::string meta_graph, meta_out;
  StimulusOptions meta_stim;
  meta->add_option("graph", meta_graph, "Graph file")->required();
  meta_stim.add_to(meta);
  meta->add_option("-o,--output", meta_out, "Output file (default stdout)");

  // query
  auto* query = app.add_subcommand("query", "Answer a group-level query");
  std::string q_graph, q_op;
  std::vector<std::string> q_args;
  std::uint64_t q_seed = 1;
  StimulusOptions q_stim;
  query->add_option("graph", q_graph, "Graph file")->required();
  query->add_option("operation", q_op, "Operation name or template id")->required();
  query->add_option("args", q_args, "Operation arguments");
  query->add_option("--seed", q_seed, "Seed for template instantiation");
  q_stim.add_to(query);

  // templates / describe
  auto* templates = app.add_subcommand("templates", "List the task templates");
  auto* desc = app.add_subcommand("describe", "Print a template's task descriptor");
  std::string d_id;
  bool d_target_unknown = false, d_location_known = false;
  desc->add_option("template", d_id, "Template id")->required();
  desc->add_flag("--target-unknown", d_target_unknown, "The participant does not know the target");
  desc->add_flag("--location-known", d_location_known, "The participant knows where to look");

  // bundle
  auto* bun = app.add_subcommand("bundle", "Build a study bundle");
  std::string b_graph, b_templates = "all", b_study, b_out;
  std::uint64_t b_seed = 1;
  bool b_reveal = false, b_skip = false;
  StimulusOptions b_stim;
  bun->add_option("graph", b_graph, "Graph file")->required();
  bun->add_option("--templates", b_templates, "\"all\" or comma-separated template ids");
  bun->add_option("--seed", b_seed, "Instantiation seed (also the default layout seed)");
  bun->add_option("--study-id", b_study, "Study id (default: graph file stem)");
  bun->add_flag("--reveal", b_reveal, "Reveal correctness to participants");
  bun->add_flag("--skip-inapplicable", b_skip, "Write the bundle even if templates were skipped");
  bun->add_option("-o,--output", b_out, "Output file (default stdout)");
  b_stim.add_to(bun);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the study service");
  std::string s_bundles, s_host = "127.0.0.1", s_data;
  int s_port = 8080;
  serve->add_option("--bundles", s_bundles, "Directory of bundle files to register");
  serve->add_option("--host", s_host, "Listen address");
  serve->add_option("--port", s_port, "Listen port");
  serve->add_option("--data", s_data, "Directory for the response log");

  // score
  auto* sc = app.add_subcommand("score", "Rescore a results export offline");
  std::string sc_export, sc_bundle;
  sc->add_option("export", sc_export, "Results export file")->required();
  sc->add_option("--bundle", sc_bundle, "Bundle with answer key")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) {
      for (const auto& s : split_list(sizes_text)) {
        int v = parse_int(s);
        if (v < 1) throw InvalidArgument("group sizes must be positive");
        pp.sizes.push_back(v);
      }
      if (group_count && *group_count != static_cast<int>(pp.sizes.size()))
        throw InvalidArgument("--groups does not match the number of --sizes");
      write_output(gen_out, serialize_graph(generate_planted_partition(pp)), out);
    } else if (*lay) {
      ClusteredGraph g = load_clustered_graph_file(lay_graph);
      lp.backend = lay_backend == "serial" ? kernels::Backend::Serial : kernels::Backend::Parallel;
      LayoutGeometry layout = compute_layout(g, lay_seed, lp);
      RegionRaster raster = rasterize_regions(layout, g, rp.cell_size, rp.reach, lp.backend);
      write_output(lay_out, serialize_layout(layout, &raster), out);
    } else if (*meta) {
      QueryContext ctx = meta_stim.load(meta_graph);
      write_output(meta_out, serialize_metagraph(ctx.m(), ctx.g()), out);
    } else if (*query) {
      run_query(q_op, q_args, q_stim.load(q_graph), q_seed, out, err);
    } else if (*templates) {
      for (const auto& t : list_templates())
        out << t.id << '\t' << to_string(t.category) << '\t' << to_string(t.answer_kind) << '\t'
            << t.prompt_pattern << '\n';
    } else if (*desc) {
      out << describe(d_id, Knowledge{!d_target_unknown, d_location_known}).serialize();
    } else if (*bun) {
      return cmd_bundle(b_graph, b_templates, b_seed, b_study, b_reveal, b_skip, b_stim, b_out,
                        out, err);
    } else if (*serve) {
      return cmd_serve(s_bundles, s_host, s_port, s_data, err);
    } else if (*sc) {
      return cmd_score(sc_export, sc_bundle, out);
    }
    return 0;
  } catch (const NotFound& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Inapplicable& e) {
    err << "inapplicable: " << e.what() << '\n';
    return kExitInapplicable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace cgraph
