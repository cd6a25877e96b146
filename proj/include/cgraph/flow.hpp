#pragma once

#include <vector>

namespace cgraph {

/// Integer-capacity flow network solved with Edmonds-Karp (shortest
/// augmenting paths). Arcs are stored in pairs; arc i^1 is the residual twin.
class FlowNetwork {
 public:
  explicit FlowNetwork(int vertices);

  /// Directed arc from -> to. Returns the arc index.
  int add_arc(int from, int to, long long capacity);
  /// Undirected edge: both directions carry `capacity`. Returns the arc index.
  int add_edge(int a, int b, long long capacity);

  long long max_flow(int source, int sink);

  /// After max_flow: vertices reachable from the source in the residual graph.
  std::vector<bool> source_side(int source) const;
  /// After max_flow: vertices that can still reach the sink in the residual graph.
  std::vector<bool> sink_side(int sink) const;

  int vertices() const { return static_cast<int>(out_.size()); }

 private:
  struct Arc {
    int to;
    long long capacity;
    long long flow;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
};

}  // namespace cgraph
