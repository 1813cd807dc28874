#include "mtlz/graph6.hpp"

namespace mtlz {

namespace {
constexpr int kBias = 63;
constexpr int kLong = 126;  // '~'
}  // namespace

Graph parse_graph6(std::string_view text) {
  if (text.empty()) throw Graph6Error("empty graph6 record", 0);
  std::size_t pos = 0;
  long n = 0;
  int c0 = static_cast<unsigned char>(text[0]);
  if (c0 == kLong) {
    if (text.size() >= 2 && static_cast<unsigned char>(text[1]) == kLong)
      throw Graph6Error("36-bit vertex counts not supported", 1);
    if (text.size() < 4) throw Graph6Error("truncated long vertex count", text.size());
    for (pos = 1; pos <= 3; ++pos) {
      int c = static_cast<unsigned char>(text[pos]);
      if (c < kBias || c > kLong) throw Graph6Error("invalid header byte", pos);
      n = (n << 6) | (c - kBias);
    }
  } else {
    if (c0 < kBias || c0 > kLong) throw Graph6Error("invalid header byte", 0);
    n = c0 - kBias;
    pos = 1;
  }
  if (n < 1 || n > kMaxVertices)
    throw Graph6Error("vertex count " + std::to_string(n) + " outside 1.." +
                          std::to_string(kMaxVertices),
                      0);

  const long nbits = n * (n - 1) / 2;
  const std::size_t nbytes = static_cast<std::size_t>((nbits + 5) / 6);
  if (text.size() < pos + nbytes)
    throw Graph6Error("record too short for " + std::to_string(n) + " vertices",
                      text.size());
  if (text.size() > pos + nbytes) throw Graph6Error("trailing garbage", pos + nbytes);

  std::vector<Edge> edges;
  long bit = 0;
  int word = 0;
  int left = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      if (left == 0) {
        int c = static_cast<unsigned char>(text[pos]);
        if (c < kBias || c > kLong) throw Graph6Error("invalid data byte", pos);
        word = c - kBias;
        left = 6;
        ++pos;
      }
      if (word & (1 << (left - 1))) edges.push_back(Edge{i, j});
      --left;
    }
  }
  // Padding bits must be zero.
  if (left > 0 && (word & ((1 << left) - 1)))
    throw Graph6Error("nonzero padding bits", pos - 1);
  return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

std::string emit_graph6(const Graph& g) {
  const int n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else {
    out.push_back(static_cast<char>(kLong));
    out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
    out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
    out.push_back(static_cast<char>((n & 63) + kBias));
  }
  int word = 0;
  int used = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      word = (word << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(word + kBias));
        word = 0;
        used = 0;
      }
    }
  }
  if (used > 0) out.push_back(static_cast<char>((word << (6 - used)) + kBias));
  return out;
}

}  // namespace mtlz
