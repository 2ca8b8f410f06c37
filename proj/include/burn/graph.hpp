#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace burn {

// Simple undirected graph on vertices 0..n-1. No loops, no parallel edges.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  Graph() = default;
  explicit Graph(int vertex_count);

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  int edge_count() const;

  // Vertex sets of the connected components, each sorted ascending.
  std::vector<std::vector<int>> components() const;
};

// All-pairs BFS distances. Unreachable pairs hold the sentinel n, which
// dominates every realizable distance.
struct DistanceMatrix {
  int n = 0;
  std::vector<int> d;  // row-major n*n

  int at(int u, int v) const { return d[static_cast<std::size_t>(u) * n + v]; }
};

DistanceMatrix all_pairs_distances(const Graph& g);

// Vertices 0..order-1 along the path.
Graph build_path(long long order);

// One path per length, concatenated in the given order.
Graph build_path_forest(const std::vector<long long>& lengths);

// Center is vertex 0; arms follow in the given order, root end first.
Graph build_spider(const std::vector<int>& arms);

// Head A is 0, head B is 1 (adjacent); arms of A follow, then arms of B,
// each laid out from the head outward.
Graph build_double_spider(const std::vector<int>& arms_a, const std::vector<int>& arms_b);

// Text format: '#' starts a comment, first data line is "n <count>", every
// further data line is an edge "u v". Throws ParseError with a line number.
Graph parse_graph_text(std::istream& in);

// Shorthands "path:16", "spider:5,5,6", "dspider:5,5/6"; anything else is
// treated as the path of a file in the text format.
Graph parse_graph_spec(const std::string& spec);

}  // namespace burn
