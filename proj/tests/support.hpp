#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cgraph/graph.hpp"

#ifndef CGRAPH_TEST_DATA
#error "CGRAPH_TEST_DATA must point at tests/"
#endif

namespace testing_support {

inline std::string test_path(const std::string& relative) {
  return std::string(CGRAPH_TEST_DATA) + "/" + relative;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline cgraph::ClusteredGraph fixture_f1() {
  return cgraph::load_clustered_graph_file(test_path("data/f1.json"));
}

inline cgraph::ClusteredGraph fixture_f2() {
  return cgraph::load_clustered_graph_file(test_path("data/f2.json"));
}

}  // namespace testing_support
