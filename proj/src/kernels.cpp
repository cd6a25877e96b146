#include "cgraph/kernels.hpp"

#include <cassert>
#include <limits>

namespace cgraph::kernels {

namespace {

inline Vec2 repulsion_on(std::span<const Vec2> positions, double k2, std::size_t i) {
  const Vec2 p = positions[i];
  Vec2 sum{};
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j == i) continue;
    double dx = p.x - positions[j].x;
    double dy = p.y - positions[j].y;
    double d2 = dx * dx + dy * dy;
    if (d2 < 1e-18) {
      dx = i < j ? -1e-3 : 1e-3;
      dy = 0.0;
      d2 = dx * dx;
    }
    // k^2 / |d| along the unit vector d / |d|.
    double f = k2 / d2;
    sum.x += dx * f;
    sum.y += dy * f;
  }
  return sum;
}

inline std::int32_t nearest_for_cell(std::span<const Vec2> sites, const GridSpec& grid,
                                     double reach2, int row, int col) {
  const double cx = (col + 0.5) * grid.cell_size;
  const double cy = (row + 0.5) * grid.cell_size;
  std::int32_t best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < sites.size(); ++s) {
    double dx = sites[s].x - cx;
    double dy = sites[s].y - cy;
    double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<std::int32_t>(s);
    }
  }
  return best_d2 <= reach2 ? best : -1;
}

}  // namespace

void repulsion_serial(std::span<const Vec2> positions, double k2, std::span<Vec2> displacement) {
  assert(displacement.size() == positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Vec2 f = repulsion_on(positions, k2, i);
    displacement[i].x += f.x;
    displacement[i].y += f.y;
  }
}

void repulsion_parallel(std::span<const Vec2> positions, double k2, std::span<Vec2> displacement) {
  assert(displacement.size() == positions.size());
  const auto n = static_cast<std::ptrdiff_t>(positions.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Vec2 f = repulsion_on(positions, k2, static_cast<std::size_t>(i));
    displacement[static_cast<std::size_t>(i)].x += f.x;
    displacement[static_cast<std::size_t>(i)].y += f.y;
  }
}

void nearest_site_serial(std::span<const Vec2> sites, const GridSpec& grid, double reach,
                         std::span<std::int32_t> owner) {
  assert(owner.size() == static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.columns));
  const double reach2 = reach * reach;
  for (int row = 0; row < grid.rows; ++row)
    for (int col = 0; col < grid.columns; ++col)
      owner[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid.columns) +
            static_cast<std::size_t>(col)] = nearest_for_cell(sites, grid, reach2, row, col);
}

void nearest_site_parallel(std::span<const Vec2> sites, const GridSpec& grid, double reach,
                           std::span<std::int32_t> owner) {
  assert(owner.size() == static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.columns));
  const double reach2 = reach * reach;
#pragma omp parallel for schedule(static)
  for (int row = 0; row < grid.rows; ++row)
    for (int col = 0; col < grid.columns; ++col)
      owner[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid.columns) +
            static_cast<std::size_t>(col)] = nearest_for_cell(sites, grid, reach2, row, col);
}

}  // namespace cgraph::kernels
