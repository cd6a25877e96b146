#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cgraph/graph.hpp"
#include "cgraph/kernels.hpp"

namespace cgraph {

struct LayoutParams {
  int iterations = 300;
  double width = 1000.0;
  double height = 1000.0;
  /// Natural edge length of the spring system. Equal to the default reach so
  /// that linked nodes produce touching regions under the default raster.
  double edge_length = 40.0;
  /// Pull toward the member centroid, relative to edge attraction.
  double cohesion = 0.5;
  /// Linear pull toward the canvas center; keeps components together.
  double gravity = 0.02;
  /// Positions are scaled about the center to stay this far inside the canvas.
  double margin = 50.0;
  kernels::Backend backend = kernels::Backend::Parallel;
};

struct RasterParams {
  double cell_size = 5.0;
  double reach = 40.0;
};

/// Node coordinates in canvas units, indexed like ClusteredGraph::nodes().
class LayoutGeometry {
 public:
  LayoutGeometry() = default;
  LayoutGeometry(std::vector<std::string> node_ids, std::vector<Vec2> positions, double width,
                 double height, std::uint64_t seed);

  std::span<const std::string> node_ids() const { return node_ids_; }
  std::span<const Vec2> positions() const { return positions_; }
  Vec2 position(int node) const { return positions_[static_cast<std::size_t>(node)]; }
  Vec2 position(std::string_view node_id) const;
  double width() const { return width_; }
  double height() const { return height_; }
  std::uint64_t seed() const { return seed_; }

  friend bool operator==(const LayoutGeometry&, const LayoutGeometry&) = default;

 private:
  std::vector<std::string> node_ids_;
  std::vector<Vec2> positions_;
  double width_ = 0.0;
  double height_ = 0.0;
  std::uint64_t seed_ = 0;
};

/// Force-directed layout: spring attraction along edges, pairwise repulsion,
/// and a cohesion force toward each group's centroid, started from seeded
/// random positions. The node centroid is held at the canvas center, so a
/// single node sits exactly at the center.
LayoutGeometry compute_layout(const ClusteredGraph& g, std::uint64_t seed,
                              const LayoutParams& params = {});

/// Discrete Voronoi diagram of the node positions with a distance cutoff.
class RegionRaster {
 public:
  static constexpr std::int32_t kBackground = -1;

  RegionRaster() = default;

  const GridSpec& grid() const { return grid_; }
  double cell_size() const { return grid_.cell_size; }
  double reach() const { return reach_; }
  int columns() const { return grid_.columns; }
  int rows() const { return grid_.rows; }
  /// Group index per cell in row-major order, or kBackground.
  std::span<const std::int32_t> assignment() const { return assignment_; }
  std::int32_t at(int row, int col) const {
    return assignment_[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid_.columns) +
                       static_cast<std::size_t>(col)];
  }
  std::span<const std::string> group_ids() const { return group_ids_; }

  std::size_t cell_count(int group) const { return cells_per_group_[static_cast<std::size_t>(group)]; }
  std::size_t background_cells() const { return background_cells_; }
  /// 4-neighbor cell-edge adjacencies between cells of two distinct groups.
  std::size_t contact_count(int g1, int g2) const;
  const std::map<std::pair<int, int>, std::size_t>& contacts() const { return contacts_; }

  /// Cell indices owned by each group, for export.
  std::vector<std::vector<std::size_t>> cells_by_group() const;

  friend bool operator==(const RegionRaster&, const RegionRaster&) = default;

 private:
  friend RegionRaster rasterize_regions(const LayoutGeometry&, const ClusteredGraph&, double,
                                        double, kernels::Backend);
  GridSpec grid_;
  double reach_ = 0.0;
  std::vector<std::int32_t> assignment_;
  std::vector<std::string> group_ids_;
  std::vector<std::size_t> cells_per_group_;
  std::size_t background_cells_ = 0;
  std::map<std::pair<int, int>, std::size_t> contacts_;
};

/// Assigns each cell to the group of its nearest node when that node is
/// within `reach` of the cell center; ties go to the smaller node id.
/// Throws InvalidArgument "degenerate grid" when a cell exceeds the canvas.
RegionRaster rasterize_regions(const LayoutGeometry& layout, const ClusteredGraph& g,
                               double cell_size, double reach,
                               kernels::Backend backend = kernels::Backend::Parallel);

inline RegionRaster rasterize_regions(const LayoutGeometry& layout, const ClusteredGraph& g,
                                      const RasterParams& params = {}) {
  return rasterize_regions(layout, g, params.cell_size, params.reach);
}

double group_area(const RegionRaster& r, std::string_view group_id);
double shared_boundary_length(const RegionRaster& r, std::string_view g1, std::string_view g2);
double link_length(const LayoutGeometry& layout, const ClusteredGraph& g, int edge_index);
/// Length of the edge joining two nodes; throws NotFound if there is none.
double link_length(const LayoutGeometry& layout, const ClusteredGraph& g, std::string_view a,
                   std::string_view b);

/// Layout export document: positions, canvas, seed, and (when a raster is
/// given) the raster parameters and per-group owned cell indices.
std::string serialize_layout(const LayoutGeometry& layout, const RegionRaster* raster = nullptr,
                             int indent = 2);
/// Reads the positions/canvas/seed part of a layout export; node ids must
/// match the graph.
LayoutGeometry load_layout(std::string_view document, const ClusteredGraph& g);
/// Raster parameters stored in a layout export, or defaults.
RasterParams load_raster_params(std::string_view document);

}  // namespace cgraph
