#include "cgraph/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cgraph {

FlowNetwork::FlowNetwork(int vertices) : out_(static_cast<std::size_t>(vertices)) {}

int FlowNetwork::add_arc(int from, int to, long long capacity) {
  int idx = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0});
  out_[static_cast<std::size_t>(from)].push_back(idx);
  arcs_.push_back({from, 0, 0});
  out_[static_cast<std::size_t>(to)].push_back(idx + 1);
  return idx;
}

int FlowNetwork::add_edge(int a, int b, long long capacity) {
  int idx = static_cast<int>(arcs_.size());
  arcs_.push_back({b, capacity, 0});
  out_[static_cast<std::size_t>(a)].push_back(idx);
  arcs_.push_back({a, capacity, 0});
  out_[static_cast<std::size_t>(b)].push_back(idx + 1);
  return idx;
}

long long FlowNetwork::max_flow(int source, int sink) {
  if (source == sink) return 0;
  long long total = 0;
  std::vector<int> parent_arc(out_.size());
  for (;;) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    parent_arc[static_cast<std::size_t>(source)] = -2;
    std::queue<int> frontier;
    frontier.push(source);
    while (!frontier.empty() && parent_arc[static_cast<std::size_t>(sink)] == -1) {
      int v = frontier.front();
      frontier.pop();
      for (int a : out_[static_cast<std::size_t>(v)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.capacity - arc.flow > 0 && parent_arc[static_cast<std::size_t>(arc.to)] == -1) {
          parent_arc[static_cast<std::size_t>(arc.to)] = a;
          frontier.push(arc.to);
        }
      }
    }
    if (parent_arc[static_cast<std::size_t>(sink)] == -1) break;

    long long bottleneck = std::numeric_limits<long long>::max();
    for (int v = sink; v != source;) {
      const Arc& arc = arcs_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)])];
      bottleneck = std::min(bottleneck, arc.capacity - arc.flow);
      v = arcs_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)] ^ 1)].to;
    }
    for (int v = sink; v != source;) {
      int a = parent_arc[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(a)].flow += bottleneck;
      arcs_[static_cast<std::size_t>(a ^ 1)].flow -= bottleneck;
      v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
    }
    total += bottleneck;
  }
  return total;
}

std::vector<bool> FlowNetwork::source_side(int source) const {
  std::vector<bool> seen(out_.size(), false);
  std::queue<int> frontier;
  seen[static_cast<std::size_t>(source)] = true;
  frontier.push(source);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int a : out_[static_cast<std::size_t>(v)]) {
      const Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.capacity - arc.flow > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
        seen[static_cast<std::size_t>(arc.to)] = true;
        frontier.push(arc.to);
      }
    }
  }
  return seen;
}

std::vector<bool> FlowNetwork::sink_side(int sink) const {
  std::vector<bool> seen(out_.size(), false);
  std::queue<int> frontier;
  seen[static_cast<std::size_t>(sink)] = true;
  frontier.push(sink);
  while (!frontier.empty()) {
    int w = frontier.front();
    frontier.pop();
    // Arc a leaves w; its twin a^1 enters w from arcs_[a].to.
    for (int a : out_[static_cast<std::size_t>(w)]) {
      int u = arcs_[static_cast<std::size_t>(a)].to;
      const Arc& twin = arcs_[static_cast<std::size_t>(a ^ 1)];
      if (twin.capacity - twin.flow > 0 && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        frontier.push(u);
      }
    }
  }
  return seen;
}

}  // namespace cgraph
