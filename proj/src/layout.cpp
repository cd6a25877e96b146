#include "cgraph/layout.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "cgraph/error.hpp"
#include "cgraph/rng.hpp"

namespace cgraph {

using nlohmann::json;
using nlohmann::ordered_json;

LayoutGeometry::LayoutGeometry(std::vector<std::string> node_ids, std::vector<Vec2> positions,
                               double width, double height, std::uint64_t seed)
    : node_ids_(std::move(node_ids)),
      positions_(std::move(positions)),
      width_(width),
      height_(height),
      seed_(seed) {
  if (node_ids_.size() != positions_.size())
    throw InvalidArgument("layout ids and positions differ in length");
}

Vec2 LayoutGeometry::position(std::string_view node_id) const {
  auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), node_id);
  if (it == node_ids_.end() || *it != node_id)
    throw NotFound("node has no position: " + std::string(node_id));
  return positions_[static_cast<std::size_t>(it - node_ids_.begin())];
}

namespace {

void recenter(std::vector<Vec2>& pos, Vec2 center) {
  Vec2 mean{};
  for (const auto& p : pos) {
    mean.x += p.x;
    mean.y += p.y;
  }
  mean.x /= static_cast<double>(pos.size());
  mean.y /= static_cast<double>(pos.size());
  const Vec2 shift{center.x - mean.x, center.y - mean.y};
  for (auto& p : pos) {
    p.x += shift.x;
    p.y += shift.y;
  }
}

}  // namespace

LayoutGeometry compute_layout(const ClusteredGraph& g, std::uint64_t seed,
                              const LayoutParams& params) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InvalidArgument("cannot lay out an empty graph");
  if (params.width <= 0 || params.height <= 0) throw InvalidArgument("canvas must be non-empty");
  if (params.edge_length <= 0) throw InvalidArgument("edge length must be positive");

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& node : g.nodes()) ids.push_back(node.id);

  const Vec2 center{params.width / 2.0, params.height / 2.0};
  const double k = params.edge_length;
  const double spread = k * std::sqrt(static_cast<double>(n));

  Rng rng(seed);
  std::vector<Vec2> pos(n);
  for (auto& p : pos) {
    p.x = center.x + (draw_unit(rng) - 0.5) * spread;
    p.y = center.y + (draw_unit(rng) - 0.5) * spread;
  }
  recenter(pos, center);

  std::vector<Vec2> disp(n);
  std::vector<Vec2> centroid(g.group_count());
  const double t0 = k + 0.1 * spread;
  for (int it = 0; it < params.iterations && n > 1; ++it) {
    std::fill(disp.begin(), disp.end(), Vec2{});
    kernels::repulsion(params.backend, pos, k * k, disp);

    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.ends(static_cast<int>(e));
      Vec2& pu = pos[static_cast<std::size_t>(u)];
      Vec2& pv = pos[static_cast<std::size_t>(v)];
      double dx = pu.x - pv.x;
      double dy = pu.y - pv.y;
      double f = std::sqrt(dx * dx + dy * dy) / k;  // |d|^2 / k along d / |d|
      disp[static_cast<std::size_t>(u)].x -= dx * f;
      disp[static_cast<std::size_t>(u)].y -= dy * f;
      disp[static_cast<std::size_t>(v)].x += dx * f;
      disp[static_cast<std::size_t>(v)].y += dy * f;
    }

    for (std::size_t gi = 0; gi < g.group_count(); ++gi) {
      Vec2 c{};
      auto members = g.members(static_cast<int>(gi));
      for (int m : members) {
        c.x += pos[static_cast<std::size_t>(m)].x;
        c.y += pos[static_cast<std::size_t>(m)].y;
      }
      c.x /= static_cast<double>(members.size());
      c.y /= static_cast<double>(members.size());
      centroid[gi] = c;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 c = centroid[static_cast<std::size_t>(g.group_of(static_cast<int>(i)))];
      double dx = c.x - pos[i].x;
      double dy = c.y - pos[i].y;
      double f = params.cohesion * std::sqrt(dx * dx + dy * dy) / k;
      disp[i].x += dx * f + params.gravity * (center.x - pos[i].x);
      disp[i].y += dy * f + params.gravity * (center.y - pos[i].y);
    }

    const double temperature =
        t0 * (1.0 - static_cast<double>(it) / static_cast<double>(params.iterations));
    for (std::size_t i = 0; i < n; ++i) {
      double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
      if (len <= 0.0) continue;
      double step = std::min(len, temperature) / len;
      pos[i].x += disp[i].x * step;
      pos[i].y += disp[i].y * step;
    }
    recenter(pos, center);
  }

  // Fit inside the canvas by shrinking about the center; never enlarge.
  double reach_x = 0.0;
  double reach_y = 0.0;
  for (const auto& p : pos) {
    reach_x = std::max(reach_x, std::abs(p.x - center.x));
    reach_y = std::max(reach_y, std::abs(p.y - center.y));
  }
  const double limit_x = std::max(0.0, center.x - params.margin);
  const double limit_y = std::max(0.0, center.y - params.margin);
  double scale = 1.0;
  if (reach_x > limit_x) scale = std::min(scale, limit_x / reach_x);
  if (reach_y > limit_y) scale = std::min(scale, limit_y / reach_y);
  if (scale < 1.0) {
    for (auto& p : pos) {
      p.x = center.x + (p.x - center.x) * scale;
      p.y = center.y + (p.y - center.y) * scale;
    }
  }
  if (n == 1) pos[0] = center;

  return LayoutGeometry(std::move(ids), std::move(pos), params.width, params.height, seed);
}

std::size_t RegionRaster::contact_count(int g1, int g2) const {
  auto it = contacts_.find({std::min(g1, g2), std::max(g1, g2)});
  return it == contacts_.end() ? 0 : it->second;
}

std::vector<std::vector<std::size_t>> RegionRaster::cells_by_group() const {
  std::vector<std::vector<std::size_t>> out(group_ids_.size());
  for (std::size_t c = 0; c < assignment_.size(); ++c)
    if (assignment_[c] != kBackground) out[static_cast<std::size_t>(assignment_[c])].push_back(c);
  return out;
}

namespace {

void check_layout_matches(const LayoutGeometry& layout, const ClusteredGraph& g) {
  if (layout.node_ids().size() != g.node_count())
    throw InvalidArgument("layout does not match graph: node count differs");
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (layout.node_ids()[i] != g.node(static_cast<int>(i)).id)
      throw InvalidArgument("layout does not match graph: unexpected node " +
                            layout.node_ids()[i]);
}

}  // namespace

RegionRaster rasterize_regions(const LayoutGeometry& layout, const ClusteredGraph& g,
                               double cell_size, double reach, kernels::Backend backend) {
  if (!(cell_size > 0.0)) throw InvalidArgument("cell size must be positive");
  if (!(reach > 0.0)) throw InvalidArgument("reach must be positive");
  if (cell_size > layout.width() || cell_size > layout.height())
    throw InvalidArgument("degenerate grid: cell size exceeds canvas");
  check_layout_matches(layout, g);

  RegionRaster r;
  r.grid_.cell_size = cell_size;
  r.grid_.columns = static_cast<int>(std::floor(layout.width() / cell_size));
  r.grid_.rows = static_cast<int>(std::floor(layout.height() / cell_size));
  r.reach_ = reach;
  for (const auto& gr : g.groups()) r.group_ids_.push_back(gr.id);

  const std::size_t cells =
      static_cast<std::size_t>(r.grid_.columns) * static_cast<std::size_t>(r.grid_.rows);
  std::vector<std::int32_t> owner(cells);
  kernels::nearest_site(backend, layout.positions(), r.grid_, reach, owner);

  r.assignment_.resize(cells);
  r.cells_per_group_.assign(g.group_count(), 0);
  for (std::size_t c = 0; c < cells; ++c) {
    if (owner[c] < 0) {
      r.assignment_[c] = RegionRaster::kBackground;
      ++r.background_cells_;
    } else {
      int grp = g.group_of(owner[c]);
      r.assignment_[c] = grp;
      ++r.cells_per_group_[static_cast<std::size_t>(grp)];
    }
  }

  auto note = [&](std::int32_t a, std::int32_t b) {
    if (a == RegionRaster::kBackground || b == RegionRaster::kBackground || a == b) return;
    ++r.contacts_[{std::min(a, b), std::max(a, b)}];
  };
  for (int row = 0; row < r.grid_.rows; ++row) {
    for (int col = 0; col < r.grid_.columns; ++col) {
      if (col + 1 < r.grid_.columns) note(r.at(row, col), r.at(row, col + 1));
      if (row + 1 < r.grid_.rows) note(r.at(row, col), r.at(row + 1, col));
    }
  }
  return r;
}

namespace {

int raster_group(const RegionRaster& r, std::string_view id) {
  auto ids = r.group_ids();
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) throw NotFound("unknown group: " + std::string(id));
  return static_cast<int>(it - ids.begin());
}

}  // namespace

double group_area(const RegionRaster& r, std::string_view group_id) {
  int gi = raster_group(r, group_id);
  return static_cast<double>(r.cell_count(gi)) * r.cell_size() * r.cell_size();
}

double shared_boundary_length(const RegionRaster& r, std::string_view g1, std::string_view g2) {
  int a = raster_group(r, g1);
  int b = raster_group(r, g2);
  if (a == b) throw InvalidArgument("shared boundary needs two distinct groups");
  return static_cast<double>(r.contact_count(a, b)) * r.cell_size();
}

double link_length(const LayoutGeometry& layout, const ClusteredGraph& g, int edge_index) {
  if (edge_index < 0 || static_cast<std::size_t>(edge_index) >= g.edge_count())
    throw NotFound("unknown edge index " + std::to_string(edge_index));
  auto [u, v] = g.ends(edge_index);
  Vec2 a = layout.position(u);
  Vec2 b = layout.position(v);
  return std::hypot(a.x - b.x, a.y - b.y);
}

double link_length(const LayoutGeometry& layout, const ClusteredGraph& g, std::string_view a,
                   std::string_view b) {
  auto e = g.find_edge(g.node_index(a), g.node_index(b));
  if (!e) throw NotFound("unknown edge: " + std::string(a) + "-" + std::string(b));
  return link_length(layout, g, *e);
}

std::string serialize_layout(const LayoutGeometry& layout, const RegionRaster* raster,
                             int indent) {
  ordered_json doc;
  doc["positions"] = ordered_json::object();
  for (std::size_t i = 0; i < layout.node_ids().size(); ++i) {
    Vec2 p = layout.positions()[i];
    doc["positions"][layout.node_ids()[i]] = {p.x, p.y};
  }
  doc["canvas"] = {layout.width(), layout.height()};
  doc["seed"] = layout.seed();
  if (raster) {
    doc["raster"] = {{"cell_size", raster->cell_size()},
                     {"reach", raster->reach()},
                     {"columns", raster->columns()},
                     {"rows", raster->rows()}};
    doc["regions"] = ordered_json::object();
    auto cells = raster->cells_by_group();
    for (std::size_t gi = 0; gi < cells.size(); ++gi)
      doc["regions"][raster->group_ids()[gi]] = cells[gi];
  }
  return doc.dump(indent);
}

LayoutGeometry load_layout(std::string_view document, const ClusteredGraph& g) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed layout document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("positions") || !doc.at("positions").is_object())
    throw ParseError("layout document needs a 'positions' object");
  if (!doc.contains("canvas") || !doc.at("canvas").is_array() || doc.at("canvas").size() != 2)
    throw ParseError("layout document needs 'canvas': [width, height]");
  const auto& positions = doc.at("positions");
  std::vector<std::string> ids;
  std::vector<Vec2> pos;
  for (const auto& node : g.nodes()) {
    if (!positions.contains(node.id)) throw ValidationError("node has no position: " + node.id);
    const auto& xy = positions.at(node.id);
    if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number())
      throw ParseError("position must be [x, y] for node " + node.id);
    ids.push_back(node.id);
    pos.push_back({xy[0].get<double>(), xy[1].get<double>()});
  }
  if (positions.size() != g.node_count())
    throw ValidationError("layout has positions for nodes outside the graph");
  double w = doc.at("canvas")[0].get<double>();
  double h = doc.at("canvas")[1].get<double>();
  for (const auto& p : pos)
    if (p.x < 0 || p.y < 0 || p.x > w || p.y > h)
      throw ValidationError("position outside the canvas");
  std::uint64_t seed = doc.value("seed", std::uint64_t{0});
  return LayoutGeometry(std::move(ids), std::move(pos), w, h, seed);
}

RasterParams load_raster_params(std::string_view document) {
  RasterParams params;
  json doc = json::parse(document, nullptr, false);
  if (doc.is_object() && doc.contains("raster") && doc.at("raster").is_object()) {
    params.cell_size = doc.at("raster").value("cell_size", params.cell_size);
    params.reach = doc.at("raster").value("reach", params.reach);
  }
  return params;
}

}  // namespace cgraph
