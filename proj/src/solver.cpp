#include "burn/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <unordered_set>
#include <vector>

#include "burn/errors.hpp"

namespace burn {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "budget";
  }
}

namespace {

// The solver works on the coverage form: a graph burns in m rounds iff some
// multiset x_1..x_m has the balls B(x_i, m-i) covering V. Any cover converts
// to a legal process sequence (see repair_plan), so searching covers with
// strictly growing coverage and deduplicating on (depth, covered set) is
// exact. Per-vertex deadlines only shrink the usable ball radii.

constexpr int kMaxSolverVertices = 4096;
constexpr std::size_t kSeenCap = std::size_t(1) << 22;

struct BitsetHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : v) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Searcher {
  const Graph& g;
  const DistanceMatrix& dm;
  int m;
  const SolveOptions& opts;

  int n = 0, words = 0;
  std::vector<int> dl;  // per vertex: last round by which it must be covered
  std::vector<std::uint64_t> covered;
  int covered_cnt = 0;
  std::vector<int> seq;
  std::vector<long long> cap_suffix;
  std::vector<std::unordered_set<std::vector<std::uint64_t>, BitsetHash>> seen;
  std::size_t seen_total = 0;
  std::uint64_t nodes = 0;
  bool budget = false;
  bool timed = false;
  std::chrono::steady_clock::time_point t_end;
  std::vector<int> witness;

  Searcher(const Graph& gg, const DistanceMatrix& d, int mm, const SolveOptions& o)
      : g(gg), dm(d), m(mm), opts(o) {
    n = g.n;
    words = (n + 63) / 64;
    covered.assign(words, 0);
    dl.assign(n, m);
    for (int v : opts.deadline_vertices) dl[v] = std::min(m, opts.deadline_round);
    seen.assign(m + 1, {});
    // cap_suffix[j]: the most vertices sources j+1..m can still cover.
    std::vector<long long> maxball(std::max(m, 1), 0);
    {
      std::vector<int> hist(n + 1, 0);
      for (int v = 0; v < n; ++v) {
        std::fill(hist.begin(), hist.end(), 0);
        const int* row = dm.d.data() + static_cast<std::size_t>(v) * n;
        for (int u = 0; u < n; ++u)
          if (row[u] < n) ++hist[row[u]];
        long long acc = 0;
        for (int r = 0; r < std::min(m, n + 1); ++r) {
          acc += hist[r];
          if (acc > maxball[r]) maxball[r] = acc;
        }
        for (int r = std::min(m, n + 1); r < m; ++r)
          if (acc > maxball[r]) maxball[r] = acc;
      }
    }
    cap_suffix.assign(m + 1, 0);
    for (int j = m - 1; j >= 0; --j)
      cap_suffix[j] = cap_suffix[j + 1] + maxball[m - (j + 1)];
    if (opts.time_budget_secs > 0) {
      timed = true;
      t_end = std::chrono::steady_clock::now() +
              std::chrono::microseconds(static_cast<long long>(opts.time_budget_secs * 1e6));
    }
  }

  bool is_covered(int v) const { return covered[v >> 6] >> (v & 63) & 1; }

  bool dfs(int depth) {
    if (covered_cnt == n) {
      witness = seq;
      return true;
    }
    if (depth == m) return false;
    if (++nodes > opts.node_budget) {
      budget = true;
      return false;
    }
    if (timed && (nodes & 1023) == 0 && std::chrono::steady_clock::now() > t_end) {
      budget = true;
      return false;
    }
    if (covered_cnt + cap_suffix[depth] < n) return false;

    const int pos = depth + 1;
    std::vector<int> open;
    open.reserve(n - covered_cnt);
    for (int u = 0; u < n; ++u)
      if (!is_covered(u)) {
        if (dl[u] < pos) return false;  // nothing can reach u in time any more
        open.push_back(u);
      }

    struct Cand {
      int v, cov;
    };
    std::vector<Cand> cands;
    cands.reserve(n);
    for (int v = 0; v < n; ++v) {
      if (depth == 0 && opts.forced_first >= 0 && v != opts.forced_first) continue;
      const int* row = dm.d.data() + static_cast<std::size_t>(v) * n;
      int cov = 0;
      for (int u : open) {
        int r = dl[u] - pos;
        if (r > n - 1) r = n - 1;  // real distances stay below the sentinel
        if (row[u] <= r) ++cov;
      }
      if (cov > 0) cands.push_back({v, cov});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.cov != b.cov ? a.cov > b.cov : a.v < b.v;
    });

    std::vector<std::uint64_t> saved = covered;
    int saved_cnt = covered_cnt;
    for (const Cand& c : cands) {
      const int* row = dm.d.data() + static_cast<std::size_t>(c.v) * n;
      for (int u : open) {
        int r = dl[u] - pos;
        if (r > n - 1) r = n - 1;
        if (row[u] <= r && !is_covered(u)) {
          covered[u >> 6] |= std::uint64_t(1) << (u & 63);
          ++covered_cnt;
        }
      }
      bool skip = false;
      if (seen_total < kSeenCap) {
        auto [it, inserted] = seen[depth + 1].insert(covered);
        (void)it;
        if (!inserted)
          skip = true;
        else
          ++seen_total;
      } else if (seen[depth + 1].count(covered)) {
        skip = true;
      }
      if (!skip) {
        seq.push_back(c.v);
        if (dfs(depth + 1)) return true;
        seq.pop_back();
        if (budget) return false;
      }
      covered = saved;
      covered_cnt = saved_cnt;
    }
    return false;
  }
};

// Turns a covering plan into a legal process sequence: planned centers that
// are already burned when their round comes are replaced by an arbitrary
// unburned vertex, which only adds fire; the replaced center's ball is burned
// through whatever burned it first.
BurningSequence repair_plan(const Graph& g, const std::vector<int>& plan, int m) {
  std::vector<char> burned(g.n, 0);
  std::vector<int> frontier, next, out;
  int burned_cnt = 0;
  for (int t = 1; t <= m && burned_cnt < g.n; ++t) {
    int want = -1;
    if (t - 1 < static_cast<int>(plan.size())) {
      want = plan[t - 1];
      if (burned[want]) {
        want = -1;
        for (int v = 0; v < g.n; ++v)
          if (!burned[v]) {
            want = v;
            break;
          }
      }
    }
    if (want >= 0) {
      burned[want] = 1;
      ++burned_cnt;
      out.push_back(want);
    }
    next.clear();
    for (int u : frontier)
      for (int w : g.adj[u])
        if (!burned[w]) {
          burned[w] = 1;
          ++burned_cnt;
          next.push_back(w);
        }
    if (want >= 0) next.push_back(want);
    frontier.swap(next);
  }
  return BurningSequence{out};
}

void validate(const Graph& g, int m, const SolveOptions& opts) {
  if (m < 0) throw DomainError("is_m_burnable: m must be >= 0");
  if (g.n > kMaxSolverVertices)
    throw DomainError("is_m_burnable: exact solver supports at most 4096 vertices");
  if (opts.forced_first >= g.n)
    throw DomainError("is_m_burnable: forced first source out of range");
  for (int v : opts.deadline_vertices)
    if (v < 0 || v >= g.n) throw DomainError("is_m_burnable: deadline vertex out of range");
  if (!opts.deadline_vertices.empty() && opts.deadline_round < 1)
    throw DomainError("is_m_burnable: deadline round must be >= 1");
}

SolveResult solve_with(const Graph& g, const DistanceMatrix& dm, int m,
                       const SolveOptions& opts) {
  SolveResult res;
  if (g.n == 0) {
    res.verdict = Verdict::Yes;
    return res;
  }
  if (m == 0) {
    res.verdict = Verdict::No;
    return res;
  }
  Searcher s(g, dm, m, opts);
  bool found = s.dfs(0);
  res.nodes = s.nodes;
  if (found) {
    res.verdict = Verdict::Yes;
    res.witness = repair_plan(g, s.witness, m);
  } else {
    res.verdict = s.budget ? Verdict::Budget : Verdict::No;
  }
  return res;
}

}  // namespace

SolveResult is_m_burnable(const Graph& g, int m, const SolveOptions& opts) {
  validate(g, m, opts);
  DistanceMatrix dm = all_pairs_distances(g);
  return solve_with(g, dm, m, opts);
}

BurningNumberResult burning_number(const Graph& g, const SolveOptions& opts) {
  validate(g, 0, opts);
  BurningNumberResult out;
  if (g.n == 0) {
    out.verdict = Verdict::Yes;
    out.value = 0;
    return out;
  }
  DistanceMatrix dm = all_pairs_distances(g);
  // b(G) <= n: placing every vertex in some order always works.
  for (int m = 1; m <= g.n; ++m) {
    SolveResult r = solve_with(g, dm, m, opts);
    out.nodes += r.nodes;
    out.value = m;
    if (r.verdict == Verdict::Yes) {
      out.verdict = Verdict::Yes;
      out.witness = r.witness;
      return out;
    }
    if (r.verdict == Verdict::Budget) {
      out.verdict = Verdict::Budget;
      return out;
    }
  }
  throw DomainError("burning_number: search ran past the vertex count");
}

FirstSourcesResult feasible_first_sources(const Graph& g, int m, const SolveOptions& opts) {
  validate(g, m, opts);
  DistanceMatrix dm = all_pairs_distances(g);
  FirstSourcesResult out;
  for (int v = 0; v < g.n; ++v) {
    SolveOptions o = opts;
    o.forced_first = v;
    SolveResult r = solve_with(g, dm, m, o);
    if (r.verdict == Verdict::Yes)
      out.vertices.push_back(v);
    else if (r.verdict == Verdict::Budget)
      out.verdict = Verdict::Budget;
  }
  return out;
}

}  // namespace burn
