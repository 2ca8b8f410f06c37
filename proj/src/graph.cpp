#include "burn/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "burn/errors.hpp"

namespace burn {

Graph::Graph(int vertex_count) : n(vertex_count) {
  if (vertex_count < 0) throw DomainError("graph: negative vertex count");
  adj.resize(static_cast<std::size_t>(vertex_count));
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw DomainError("add_edge: vertex out of range");
  if (u == v) throw DomainError("add_edge: loop");
  if (has_edge(u, v)) throw DomainError("add_edge: duplicate edge");
  adj[u].push_back(v);
  adj[v].push_back(u);
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj[u];
  return std::find(a.begin(), a.end(), v) != a.end();
}

int Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adj) twice += a.size();
  return static_cast<int>(twice / 2);
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int w : adj[comp[i]])
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  DistanceMatrix dm;
  dm.n = g.n;
  dm.d.assign(static_cast<std::size_t>(g.n) * g.n, g.n);
  std::vector<int> queue(g.n);
  for (int s = 0; s < g.n; ++s) {
    int* row = dm.d.data() + static_cast<std::size_t>(s) * g.n;
    row[s] = 0;
    int head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      int u = queue[head++];
      for (int w : g.adj[u])
        if (row[w] == g.n) {
          row[w] = row[u] + 1;
          queue[tail++] = w;
        }
    }
  }
  return dm;
}

Graph build_path(long long order) {
  if (order < 1) throw DomainError("build_path: order must be >= 1");
  Graph g(static_cast<int>(order));
  for (int i = 0; i + 1 < g.n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph build_path_forest(const std::vector<long long>& lengths) {
  long long total = 0;
  for (long long l : lengths) {
    if (l < 1) throw DomainError("build_path_forest: component order must be >= 1");
    total += l;
  }
  Graph g(static_cast<int>(total));
  int base = 0;
  for (long long l : lengths) {
    for (int i = 0; i + 1 < l; ++i) g.add_edge(base + i, base + i + 1);
    base += static_cast<int>(l);
  }
  return g;
}

Graph build_spider(const std::vector<int>& arms) {
  long long total = 1;
  for (int a : arms) {
    if (a < 1) throw DomainError("build_spider: arm length must be >= 1");
    total += a;
  }
  Graph g(static_cast<int>(total));
  int next = 1;
  for (int a : arms) {
    g.add_edge(0, next);
    for (int i = 1; i < a; ++i) g.add_edge(next + i - 1, next + i);
    next += a;
  }
  return g;
}

Graph build_double_spider(const std::vector<int>& arms_a, const std::vector<int>& arms_b) {
  long long total = 2;
  for (int a : arms_a) {
    if (a < 1) throw DomainError("build_double_spider: arm length must be >= 1");
    total += a;
  }
  for (int b : arms_b) {
    if (b < 1) throw DomainError("build_double_spider: arm length must be >= 1");
    total += b;
  }
  Graph g(static_cast<int>(total));
  g.add_edge(0, 1);
  int next = 2;
  for (int head : {0, 1}) {
    const auto& arms = head == 0 ? arms_a : arms_b;
    for (int a : arms) {
      g.add_edge(head, next);
      for (int i = 1; i < a; ++i) g.add_edge(next + i - 1, next + i);
      next += a;
    }
  }
  return g;
}

namespace {

// Strips a trailing comment and surrounding whitespace.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  auto is_space = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  std::ostringstream os;
  os << "line " << line_no << ": " << what;
  throw ParseError(os.str());
}

std::vector<int> parse_int_list(const std::string& s, const std::string& ctx) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(ctx + ": bad integer '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(ctx + ": bad integer '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError(ctx + ": empty list");
  return out;
}

}  // namespace

Graph parse_graph_text(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int n = -1;
  Graph g;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = clean_line(raw);
    if (s.empty()) continue;
    std::istringstream ls(s);
    if (n < 0) {
      std::string kw;
      long long count;
      if (!(ls >> kw >> count) || kw != "n" || !(ls >> std::ws).eof())
        fail(line_no, "expected header 'n <count>'");
      if (count < 0 || count > 10'000'000) fail(line_no, "vertex count out of range");
      n = static_cast<int>(count);
      g = Graph(n);
      continue;
    }
    long long u, v;
    if (!(ls >> u >> v) || !(ls >> std::ws).eof()) fail(line_no, "expected edge 'u v'");
    if (u < 0 || u >= n || v < 0 || v >= n) fail(line_no, "edge endpoint out of range");
    if (u == v) fail(line_no, "loop");
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) fail(line_no, "duplicate edge");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (n < 0) throw ParseError("line 1: missing header 'n <count>'");
  return g;
}

Graph parse_graph_spec(const std::string& spec) {
  if (spec.rfind("path:", 0) == 0) {
    auto vals = parse_int_list(spec.substr(5), "path");
    if (vals.size() != 1) throw ParseError("path: expected a single order");
    if (vals[0] < 1) throw ParseError("path: order must be >= 1");
    return build_path(vals[0]);
  }
  if (spec.rfind("spider:", 0) == 0) {
    auto arms = parse_int_list(spec.substr(7), "spider");
    for (int a : arms)
      if (a < 1) throw ParseError("spider: arm length must be >= 1");
    return build_spider(arms);
  }
  if (spec.rfind("dspider:", 0) == 0) {
    std::string body = spec.substr(8);
    auto slash = body.find('/');
    if (slash == std::string::npos) throw ParseError("dspider: expected 'a,.../b,...'");
    auto a = parse_int_list(body.substr(0, slash), "dspider");
    auto b = parse_int_list(body.substr(slash + 1), "dspider");
    for (int v : a)
      if (v < 1) throw ParseError("dspider: arm length must be >= 1");
    for (int v : b)
      if (v < 1) throw ParseError("dspider: arm length must be >= 1");
    return build_double_spider(a, b);
  }
  std::ifstream f(spec);
  if (!f) throw ParseError("cannot open graph file '" + spec + "'");
  return parse_graph_text(f);
}

}  // namespace burn
