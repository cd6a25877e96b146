#pragma once

#include <cstdint>
#include <span>

namespace cgraph {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(Vec2, Vec2) = default;
};

/// Axis-aligned grid of square cells starting at the origin; cell (row, col)
/// has its center at ((col + 0.5) * cell_size, (row + 0.5) * cell_size).
struct GridSpec {
  int columns = 0;
  int rows = 0;
  double cell_size = 1.0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

namespace kernels {

enum class Backend { Serial, Parallel };

// Each kernel writes one output slot per loop iteration and never reduces
// across iterations, so the two backends produce bit-identical results.

/// Fruchterman-Reingold repulsion: displacement[i] += sum_j k2 * d / |d|^2
/// with d = positions[i] - positions[j]. Coincident pairs are separated along
/// the x axis by index order.
void repulsion_serial(std::span<const Vec2> positions, double k2, std::span<Vec2> displacement);
void repulsion_parallel(std::span<const Vec2> positions, double k2, std::span<Vec2> displacement);

/// For each grid cell, the index of the nearest site within `reach` of the
/// cell center, or -1. Ties go to the smaller site index.
void nearest_site_serial(std::span<const Vec2> sites, const GridSpec& grid, double reach,
                         std::span<std::int32_t> owner);
void nearest_site_parallel(std::span<const Vec2> sites, const GridSpec& grid, double reach,
                           std::span<std::int32_t> owner);

inline void repulsion(Backend b, std::span<const Vec2> positions, double k2,
                      std::span<Vec2> displacement) {
  if (b == Backend::Serial) repulsion_serial(positions, k2, displacement);
  else repulsion_parallel(positions, k2, displacement);
}

inline void nearest_site(Backend b, std::span<const Vec2> sites, const GridSpec& grid,
                         double reach, std::span<std::int32_t> owner) {
  if (b == Backend::Serial) nearest_site_serial(sites, grid, reach, owner);
  else nearest_site_parallel(sites, grid, reach, owner);
}

}  // namespace kernels
}  // namespace cgraph
