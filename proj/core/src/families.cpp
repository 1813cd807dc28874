#include "mtlz/families.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace mtlz {

namespace {

Graph complete_bipartite(int m, int n) {
  if (m < 1 || n < 1 || m + n > kMaxVertices)
    throw FamilyError("K(" + std::to_string(m) + "," + std::to_string(n) + ") out of range");
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) edges.push_back(Edge{i, m + j});
  return Graph::from_edges(m + n, std::move(edges));
}

Graph hypercube(int d) {
  if (d < 1 || d > 6) throw FamilyError("hypercube dimension " + std::to_string(d) + " out of range 1..6");
  std::vector<Edge> edges;
  const int n = 1 << d;
  for (int v = 0; v < n; ++v)
    for (int bit = 0; bit < d; ++bit)
      if (!(v & (1 << bit))) edges.push_back(Edge{v, v | (1 << bit)});
  return Graph::from_edges(n, std::move(edges));
}

// Fano plane lines on points 1..7.
constexpr std::array<std::array<int, 3>, 7> kFanoLines = {{
    {1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}}};

// Incidence graph of the complement design of the Fano plane: points 1..7
// (vertices 0..6), blocks = 4-element line complements (vertices 7..13),
// point adjacent to block iff the point lies in the block. Any two points
// share exactly 2 blocks and any two blocks share exactly 2 points, which
// makes this the unique non-hypercube bipartite (0,2)-graph of valency 4.
Graph g1463() {
  std::vector<Edge> edges;
  for (int line = 0; line < 7; ++line) {
    for (int p = 1; p <= 7; ++p) {
      const auto& l = kFanoLines[static_cast<std::size_t>(line)];
      if (std::find(l.begin(), l.end(), p) == l.end())
        edges.push_back(Edge{p - 1, 7 + line});
    }
  }
  return Graph::from_edges(14, std::move(edges));
}

Graph g14631() {
  Graph base = g1463();
  std::vector<Edge> edges = base.edges();
  // Top BFS layer from vertex 0 = blocks avoiding point 1 (vertices 7,8,9:
  // complements of the three lines through point 1).
  for (int b : {7, 8, 9}) edges.push_back(Edge{b, 14});
  return Graph::from_edges(15, std::move(edges));
}

// Layers bottom to top: v | v1,v2,v3 | ij,ij' (pairs of {1,2,3}) | u1,u2,u3 | u.
// For each pair {i,j}, the four vertices ui,uj,vi,vj are adjacent to both
// middle twins ij and ij'.
Graph g13631() {
  const int v = 0;
  auto vi = [](int i) { return i; };        // 1..3
  auto ui = [](int i) { return 9 + i; };    // 10..12
  const int u = 13;
  // middle twin pair for {i,j}: indices 4+2*pairindex, +1
  auto mid = [](int i, int j, int prime) {
    int idx = (i == 1 && j == 2) ? 0 : (i == 1 && j == 3) ? 1 : 2;
    return 4 + 2 * idx + prime;
  };
  std::vector<Edge> edges;
  for (int i = 1; i <= 3; ++i) {
    edges.push_back(make_edge(v, vi(i)));
    edges.push_back(make_edge(u, ui(i)));
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      for (int prime = 0; prime < 2; ++prime) {
        int m = mid(i, j, prime);
        edges.push_back(make_edge(ui(i), m));
        edges.push_back(make_edge(ui(j), m));
        edges.push_back(make_edge(vi(i), m));
        edges.push_back(make_edge(vi(j), m));
      }
  return Graph::from_edges(14, std::move(edges));
}

// Vertices: 0 | i (1..5) | unordered pairs ij. 0~i always, i~jk iff i is in
// the pair, ij~kl iff the pairs are disjoint.
Graph clebsch16() {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) pairs.emplace_back(i, j);
  auto pair_vertex = [&](std::size_t idx) { return static_cast<int>(6 + idx); };
  std::vector<Edge> edges;
  for (int i = 1; i <= 5; ++i) edges.push_back(Edge{0, i});
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    edges.push_back(make_edge(pairs[p].first, pair_vertex(p)));
    edges.push_back(make_edge(pairs[p].second, pair_vertex(p)));
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      auto [a, b] = pairs[p];
      auto [c, d] = pairs[q];
      if (a != c && a != d && b != c && b != d)
        edges.push_back(make_edge(pair_vertex(p), pair_vertex(q)));
    }
  }
  return Graph::from_edges(16, std::move(edges));
}

Graph catalog_1441_2() {
  // Labels follow the catalog drawing; stored 0-based.
  const std::vector<std::pair<int, int>> raw = {
      {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}, {2, 8}, {3, 6}, {3, 7},
      {4, 6}, {4, 8}, {4, 9}, {5, 7}, {5, 9}, {6, 10}, {7, 10}, {8, 10}, {9, 10}};
  std::vector<Edge> edges;
  for (auto [a, b] : raw) edges.push_back(make_edge(a - 1, b - 1));
  return Graph::from_edges(10, std::move(edges));
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c))
      throw FamilyError("expected '" + std::string(1, c) + "' in family spec at position " +
                        std::to_string(pos));
  }

  int number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw FamilyError("expected number in family spec");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '-'))
      ++pos;
    std::string w(text.substr(start, pos - start));
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return w;
  }

  FamilySpec spec() {
    std::string w = word();
    FamilySpec s;
    if (w == "k2") {
      s.kind = FamilyKind::K2;
    } else if (w == "fan") {
      s.kind = FamilyKind::Fan;
      expect('(');
      s.n = number();
      expect(')');
    } else if (w == "k" || w == "kmn" || w == "completebipartite") {
      s.kind = FamilyKind::CompleteBipartite;
      expect('(');
      s.m = number();
      expect(',');
      s.n = number();
      expect(')');
    } else if (w == "q" || w == "hypercube") {
      s.kind = FamilyKind::Hypercube;
      expect('(');
      s.n = number();
      expect(')');
    } else if (w == "product") {
      s.kind = FamilyKind::Product;
      expect('(');
      s.factors.push_back(spec());
      while (consume(',')) s.factors.push_back(spec());
      expect(')');
    } else if (w == "g1463") {
      s.kind = FamilyKind::G1463;
    } else if (w == "g14631") {
      s.kind = FamilyKind::G14631;
    } else if (w == "g13631") {
      s.kind = FamilyKind::G13631;
    } else if (w == "clebsch16") {
      s.kind = FamilyKind::Clebsch16;
    } else if (w == "catalog1441_2" || w == "1441-2") {
      s.kind = FamilyKind::Catalog1441_2;
    } else {
      throw FamilyError("unknown family '" + w + "'");
    }
    return s;
  }
};

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  Parser p{text};
  FamilySpec s = p.spec();
  p.skip_ws();
  if (p.pos != text.size()) throw FamilyError("trailing characters in family spec");
  return s;
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case FamilyKind::K2:
      return "K2";
    case FamilyKind::Fan:
      return "Fan(" + std::to_string(n) + ")";
    case FamilyKind::CompleteBipartite:
      return "K(" + std::to_string(m) + "," + std::to_string(n) + ")";
    case FamilyKind::Hypercube:
      return "Q(" + std::to_string(n) + ")";
    case FamilyKind::Product: {
      std::string out = "Product(";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += ",";
        out += factors[i].to_string();
      }
      return out + ")";
    }
    case FamilyKind::G1463:
      return "G1463";
    case FamilyKind::G14631:
      return "G14631";
    case FamilyKind::G13631:
      return "G13631";
    case FamilyKind::Clebsch16:
      return "Clebsch16";
    case FamilyKind::Catalog1441_2:
      return "Catalog1441_2";
  }
  return "?";
}

Graph build(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::K2:
      return complete_bipartite(1, 1);
    case FamilyKind::Fan:
      if (spec.n < 3) throw FamilyError("Fan(n) requires n >= 3");
      return complete_bipartite(2, spec.n);
    case FamilyKind::CompleteBipartite:
      return complete_bipartite(spec.m, spec.n);
    case FamilyKind::Hypercube:
      return hypercube(spec.n);
    case FamilyKind::Product: {
      if (spec.factors.empty()) throw FamilyError("Product() needs at least one factor");
      Graph g = build(spec.factors[0]);
      for (std::size_t i = 1; i < spec.factors.size(); ++i)
        g = cartesian_product(g, build(spec.factors[i]));
      return g;
    }
    case FamilyKind::G1463:
      return g1463();
    case FamilyKind::G14631:
      return g14631();
    case FamilyKind::G13631:
      return g13631();
    case FamilyKind::Clebsch16:
      return clebsch16();
    case FamilyKind::Catalog1441_2:
      return catalog_1441_2();
  }
  throw FamilyError("unhandled family kind");
}

}  // namespace mtlz
