#pragma once

#include <cstdint>
#include <random>

#include "cgraph/graph.hpp"

namespace cgraph {

// std::mt19937_64 output is fixed by the standard; the distributions are not,
// so draws are derived by hand to keep stimuli identical across toolchains.
using Rng = std::mt19937_64;

inline double draw_unit(Rng& rng) { return unit_double(rng()); }

/// Uniform integer in [0, n). n must be positive.
inline std::size_t draw_below(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(draw_unit(rng) * static_cast<double>(n)) % n;
}

}  // namespace cgraph
