#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "mtlz/graph.hpp"

namespace mtlz {

class Graph6Error : public GraphError {
 public:
  Graph6Error(const std::string& what, std::size_t offset)
      : GraphError(what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Standard graph6: header byte 63+n (or '~' + 18-bit n), then the upper
// triangle packed 6 bits per byte, most significant bit first, column-major
// over pairs (i<j).
Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

}  // namespace mtlz
