#include "burn/path_forest.hpp"

#include <pthread.h>

#include <algorithm>
#include <cstring>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "burn/errors.hpp"
#include "burn/graph.hpp"
#include "burn/util.hpp"

namespace burn {

PathForest::PathForest(std::vector<long long> ls) : lengths(std::move(ls)) {
  if (lengths.empty()) throw DomainError("path forest: needs at least one path");
  for (long long l : lengths)
    if (l < 1) throw DomainError("path forest: path order must be >= 1");
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
}

long long PathForest::order() const {
  return std::accumulate(lengths.begin(), lengths.end(), 0LL);
}

long long PathForest::shortest() const { return lengths.back(); }

std::string PathForest::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i) os << ',';
    os << lengths[i];
  }
  return os.str();
}

PathForest parse_forest(const std::string& s) {
  std::vector<long long> ls;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long v;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("forest: bad length '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("forest: bad length '" + tok + "'");
    if (v < 1) throw ParseError("forest: lengths must be >= 1");
    ls.push_back(v);
  }
  if (ls.empty()) throw ParseError("forest: empty length list");
  return PathForest(std::move(ls));
}

long long path_burning_number(long long order) {
  if (order < 1) throw DomainError("path_burning_number: order must be >= 1");
  return ceil_isqrt(order);
}

int t_value(const PathForest& t) {
  if (t.shortest() != 2) return 0;
  return static_cast<int>(std::count(t.lengths.begin(), t.lengths.end(), 2LL));
}

const char* to_string(ExceptionalClause c) {
  switch (c) {
    case ExceptionalClause::None: return "none";
    case ExceptionalClause::I: return "I";
    case ExceptionalClause::II: return "II";
    default: return "III";
  }
}

ExceptionalClause exceptional_clause(const PathForest& t, int m) {
  const int n = t.size();
  if (n < 2 || m < n) return ExceptionalClause::None;
  const long long mm = static_cast<long long>(m) * m;
  const auto& ls = t.lengths;
  // largest part plus n-1 singletons
  if (ls[0] == mm - static_cast<long long>(n - 1) * (n - 1) + 1) {
    bool rest_ones = true;
    for (int i = 1; i < n; ++i) rest_ones &= ls[i] == 1;
    if (rest_ones) return ExceptionalClause::I;
  }
  if (m > n) {
    // largest part plus n-1 parts from {2,3}
    if (ls[0] == mm - static_cast<long long>(n) * n + 2) {
      bool rest_23 = true;
      for (int i = 1; i < n; ++i) rest_23 &= ls[i] == 2 || ls[i] == 3;
      if (rest_23) return ExceptionalClause::II;
    }
    // largest part plus n-1 fives
    if (ls[0] == mm - static_cast<long long>(n - 1) * (n + 3) + 1) {
      bool rest_fives = true;
      for (int i = 1; i < n; ++i) rest_fives &= ls[i] == 5;
      if (rest_fives) return ExceptionalClause::III;
    }
  }
  return ExceptionalClause::None;
}

std::vector<PathForest> exceptional_family(int n, int m) {
  if (n < 2) throw DomainError("exceptional_family: needs n >= 2");
  if (m < n) throw DomainError("exceptional_family: needs m >= n");
  const long long mm = static_cast<long long>(m) * m;
  std::set<PathForest> out;
  {
    std::vector<long long> ls{mm - static_cast<long long>(n - 1) * (n - 1) + 1};
    ls.insert(ls.end(), n - 1, 1);
    out.insert(PathForest(ls));
  }
  if (m > n) {
    const long long head = mm - static_cast<long long>(n) * n + 2;
    for (int twos = 0; twos <= n - 1; ++twos) {
      std::vector<long long> ls{head};
      ls.insert(ls.end(), twos, 2);
      ls.insert(ls.end(), n - 1 - twos, 3);
      out.insert(PathForest(ls));
    }
    const long long head5 = mm - static_cast<long long>(n - 1) * (n + 3) + 1;
    {
      std::vector<long long> ls{head5};
      ls.insert(ls.end(), n - 1, 5);
      out.insert(PathForest(ls));
    }
  }
  return {out.begin(), out.end()};
}

bool assignment_valid(const PathForest& t, const RadiiAssignment& a, std::string* why) {
  auto explain = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (a.m < 1) return explain("m must be >= 1");
  if (static_cast<int>(a.sets.size()) != t.size())
    return explain("one radius set per path required");
  std::set<long long> used;
  for (int i = 0; i < t.size(); ++i) {
    long long sum = 0;
    for (long long o : a.sets[i]) {
      if (o < 1 || o > 2LL * a.m - 1 || o % 2 == 0)
        return explain("coverage numbers must be odd and within 1..2m-1");
      if (!used.insert(o).second) return explain("coverage number used twice");
      sum += o;
    }
    if (sum < t.lengths[i]) return explain("path " + std::to_string(i) + " not covered");
  }
  return true;
}

namespace {

// Depth-first assignment of the odd numbers 2m-1, 2m-3, ..., 1 to paths.
// State: per-path remaining need (capped below at zero). Assigning c to a
// path with need v wastes max(0, c - v); skipping c wastes c; the search
// dies when waste exceeds the slack (odds total minus needs total).
struct DecideSearch {
  int m;
  std::uint64_t node_budget;
  std::vector<long long> needs;        // original path order
  std::vector<long long> odd_suffix;   // odd_suffix[i] = sum of odds i..m-1
  std::vector<std::vector<long long>> sets;
  long long total_need = 0;
  std::uint64_t nodes = 0;
  bool budget = false;
  std::unordered_set<std::string> dead;

  static constexpr std::size_t kDeadCap = std::size_t(1) << 23;

  long long odd_at(int i) const { return 2LL * (m - i) - 1; }

  std::string key(int i) const {
    std::vector<long long> sorted;
    sorted.reserve(needs.size() + 1);
    sorted.push_back(i);
    for (long long v : needs)
      if (v > 0) sorted.push_back(v);
    std::sort(sorted.begin() + 1, sorted.end());
    std::string s(sorted.size() * sizeof(long long), '\0');
    std::memcpy(s.data(), sorted.data(), s.size());
    return s;
  }

  bool dfs(int i) {
    if (total_need == 0) return true;
    if (i == m) return false;
    if (++nodes > node_budget) {
      budget = true;
      return false;
    }
    if (odd_suffix[i] < total_need) return false;
    std::string k = key(i);
    if (dead.count(k)) return false;

    const long long c = odd_at(i);
    // largest needs first; equal needs are interchangeable, try one of each
    std::vector<int> order(needs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return needs[a] != needs[b] ? needs[a] > needs[b] : a < b; });
    long long prev = -1;
    for (int j : order) {
      if (needs[j] <= 0 || needs[j] == prev) continue;
      prev = needs[j];
      long long old = needs[j];
      long long gain = std::min(c, old);
      needs[j] -= gain;  // may go to zero exactly; cap is implicit via gain
      if (needs[j] < 0) needs[j] = 0;
      total_need -= gain;
      sets[j].push_back(c);
      if (dfs(i + 1)) return true;
      sets[j].pop_back();
      needs[j] = old;
      total_need += gain;
      if (budget) return false;
    }
    if (dfs(i + 1)) return true;  // leave c unused
    if (budget) return false;
    if (dead.size() < kDeadCap) dead.insert(std::move(k));
    return false;
  }
};

struct SearchRun {
  DecideSearch* s = nullptr;
  bool found = false;
};

extern "C" void* decide_search_entry(void* p) {
  auto* r = static_cast<SearchRun*>(p);
  r->found = r->s->dfs(0);
  return nullptr;
}

// The search recurses once per odd number, so its stack depth grows with m.
// Past this point the default thread stack is no longer a safe bet and the
// search gets its own, sized to the depth.
constexpr int kDirectStackM = 4096;

bool run_decide_search(DecideSearch& s) {
  if (s.m <= kDirectStackM) return s.dfs(0);
  SearchRun run{&s, false};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  std::size_t want = std::size_t(s.m) * 512 + (std::size_t(1) << 20);
  pthread_attr_setstacksize(&attr, std::max(want, std::size_t(PTHREAD_STACK_MIN)));
  pthread_t tid;
  int rc = pthread_create(&tid, &attr, decide_search_entry, &run);
  pthread_attr_destroy(&attr);
  if (rc != 0) {  // no room for the search stack: report as a budget stop
    s.budget = true;
    return false;
  }
  pthread_join(tid, nullptr);
  return run.found;
}

}  // namespace

PartitionDecision decide(const PathForest& t, int m, const DecideOptions& opts) {
  if (m < 1) throw DomainError("decide: m must be >= 1");
  PartitionDecision out;
  const int n = t.size();
  const long long mm = static_cast<long long>(m) * m;
  if (t.order() > mm || n > m) {
    out.verdict = Verdict::No;
    return out;
  }
  if (n == 1) {
    // single path: grab the largest odds until the order is covered
    RadiiAssignment a;
    a.m = m;
    a.sets.resize(1);
    long long sum = 0;
    for (long long o = 2LL * m - 1; sum < t.lengths[0]; o -= 2) {
      a.sets[0].push_back(o);
      sum += o;
    }
    std::sort(a.sets[0].begin(), a.sets[0].end());
    out.verdict = Verdict::Yes;
    out.assignment = std::move(a);
    return out;
  }

  // greedy probe: largest odd to the largest open need
  {
    std::vector<long long> needs = t.lengths;
    std::vector<std::vector<long long>> sets(n);
    for (long long o = 2LL * m - 1; o >= 1; o -= 2) {
      int best = -1;
      for (int j = 0; j < n; ++j)
        if (needs[j] > 0 && (best < 0 || needs[j] > needs[best])) best = j;
      if (best < 0) break;
      needs[best] -= o;
      sets[best].push_back(o);
    }
    bool done = true;
    for (long long v : needs) done &= v <= 0;
    if (done) {
      RadiiAssignment a;
      a.m = m;
      a.sets = std::move(sets);
      for (auto& s : a.sets) std::sort(s.begin(), s.end());
      out.verdict = Verdict::Yes;
      out.assignment = std::move(a);
      return out;
    }
  }

  DecideSearch s;
  s.m = m;
  s.node_budget = opts.node_budget;
  s.needs = t.lengths;
  s.sets.resize(n);
  s.total_need = t.order();
  s.odd_suffix.assign(m + 1, 0);
  for (int i = m - 1; i >= 0; --i) s.odd_suffix[i] = s.odd_suffix[i + 1] + s.odd_at(i);
  bool found = run_decide_search(s);
  out.nodes = s.nodes;
  if (found) {
    RadiiAssignment a;
    a.m = m;
    a.sets = std::move(s.sets);
    for (auto& st : a.sets) std::sort(st.begin(), st.end());
    out.verdict = Verdict::Yes;
    out.assignment = std::move(a);
  } else {
    out.verdict = s.budget ? Verdict::Budget : Verdict::No;
  }
  return out;
}

BurningSequence assignment_to_sequence(const PathForest& t, const RadiiAssignment& a) {
  std::string why;
  if (!assignment_valid(t, a, &why))
    throw DomainError("assignment_to_sequence: invalid assignment: " + why);
  if (t.order() > (1LL << 31) - 1)
    throw DomainError("assignment_to_sequence: forest too large for explicit positions");
  const int n = t.size();
  const int m = a.m;

  // Per path, keep only the coverage numbers actually needed (largest first),
  // then promote the kept numbers to the overall largest odds so the rounds
  // used are exactly 1..k. Promotion can create fresh redundancy, so loop.
  std::vector<std::vector<long long>> kept(n);
  for (int i = 0; i < n; ++i) kept[i] = a.sets[i];
  for (;;) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      std::sort(kept[i].begin(), kept[i].end(), std::greater<>());
      long long acc = 0;
      std::size_t keep = 0;
      while (keep < kept[i].size() && acc < t.lengths[i]) acc += kept[i][keep++];
      if (keep < kept[i].size()) {
        kept[i].resize(keep);
        changed = true;
      }
    }
    // promote: k largest odds overall, matched by rank
    std::vector<std::pair<long long, int>> all;  // (value, path)
    for (int i = 0; i < n; ++i)
      for (long long o : kept[i]) all.push_back({o, i});
    std::sort(all.begin(), all.end(), std::greater<>());
    std::vector<std::vector<long long>> next(n);
    for (std::size_t r = 0; r < all.size(); ++r) {
      long long promoted = 2LL * m - 1 - 2 * static_cast<long long>(r);
      if (promoted != all[r].first) changed = true;
      next[all[r].second].push_back(promoted);
    }
    kept = std::move(next);
    if (!changed) break;
  }

  // lay the intervals left to right, end-aligning the last one
  std::vector<std::pair<int, long long>> sources;  // (round, global position)
  long long base = 0;
  for (int i = 0; i < n; ++i) {
    std::sort(kept[i].begin(), kept[i].end(), std::greater<>());
    const long long l = t.lengths[i];
    long long offset = 0;
    for (long long o : kept[i]) {
      const int round = static_cast<int>(m - (o - 1) / 2);
      const long long radius = (o - 1) / 2;
      long long center;
      if (offset + o <= l) {
        center = offset + radius;
        offset += o;
      } else {
        center = std::max(l - 1 - radius, 0LL);
      }
      sources.push_back({round, base + center});
    }
    base += l;
  }
  std::sort(sources.begin(), sources.end());
  BurningSequence seq;
  for (auto& [round, v] : sources) seq.sources.push_back(static_cast<int>(v));
  return seq;
}

const char* to_string(ForestRule r) {
  switch (r) {
    case ForestRule::LinearSingleton3n2: return "linear_3n2";
    case ForestRule::LinearSingleton4n4: return "linear_4n4";
    case ForestRule::LinearSingleton5n6: return "linear_5n6";
    case ForestRule::LinearMin3_5n1: return "linear_5n1";
    case ForestRule::QuadraticBound: return "quadratic_bound";
    case ForestRule::ThreePathsRefined: return "three_paths";
    default: return "refined_bound";
  }
}

std::optional<ForestRule> theorem_predict(const PathForest& t, int m) {
  if (m < 1) throw DomainError("theorem_predict: m must be >= 1");
  const int n = t.size();
  const long long order = t.order();
  const long long mm = static_cast<long long>(m) * m;
  const long long shortest = t.shortest();
  const long long second_shortest = n >= 2 ? t.lengths[n - 2] : 0;

  if (m >= n && shortest == 1 && order <= 3LL * n - 2)
    return ForestRule::LinearSingleton3n2;
  if (m >= n && n >= 2 && shortest == 1 && second_shortest >= 2 && order <= 4LL * n - 4)
    return ForestRule::LinearSingleton4n4;
  if (m >= n && n >= 2 && shortest == 1 && second_shortest == 3 && order <= 5LL * n - 6)
    return ForestRule::LinearSingleton5n6;
  if (m >= n + 1 && shortest >= 3 && order <= 5LL * n - 1)
    return ForestRule::LinearMin3_5n1;
  if (m >= n && n >= 2 && order <= mm - static_cast<long long>(n - 1) * (n - 1) + 1) {
    // the one non-burnable shape at this bound
    bool exceptional = t.lengths[0] == mm - static_cast<long long>(n) * n + 2;
    for (int i = 1; i < n; ++i) exceptional &= t.lengths[i] == 2;
    if (!(exceptional && order == mm - static_cast<long long>(n - 1) * (n - 1) + 1))
      return ForestRule::QuadraticBound;
  }
  const int tv = t_value(t);
  if (n == 3 && m >= 3 && order <= mm - 1 - tv &&
      exceptional_clause(t, m) == ExceptionalClause::None)
    return ForestRule::ThreePathsRefined;
  if (m >= n && n >= 3 && order <= mm - static_cast<long long>(n - 1) * (n - 2) + 1 - tv &&
      exceptional_clause(t, m) == ExceptionalClause::None)
    return ForestRule::RefinedBound;
  return std::nullopt;
}

std::vector<std::vector<long long>> partitions_exact(long long total, int n, long long lo) {
  std::vector<std::vector<long long>> out;
  if (n < 1 || lo < 1 || total < static_cast<long long>(n) * lo) return out;
  std::vector<long long> cur;
  std::function<void(long long, int, long long)> rec = [&](long long rest, int parts,
                                                           long long cap) {
    if (parts == 1) {
      if (rest >= lo && rest <= cap) {
        cur.push_back(rest);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    long long hi = std::min(cap, rest - static_cast<long long>(parts - 1) * lo);
    for (long long v = hi; v >= lo; --v) {
      if (v * parts < rest) break;  // even the max can't reach the rest
      cur.push_back(v);
      rec(rest - v, parts - 1, v);
      cur.pop_back();
    }
  };
  rec(total, n, total);
  return out;
}

namespace {

// Largest order any prediction rule can reach for this n and m; the sweep
// enumerates everything up to it.
long long sweep_cap(int n, int m) {
  const long long mm = static_cast<long long>(m) * m;
  long long cap = mm - static_cast<long long>(n - 1) * (n - 2) + 1;
  cap = std::max(cap, mm - static_cast<long long>(n - 1) * (n - 1) + 1);
  if (m >= n) cap = std::max({cap, 3LL * n - 2, 4LL * n - 4, 5LL * n - 6});
  if (m >= n + 1) cap = std::max(cap, 5LL * n - 1);
  return cap;
}

}  // namespace

ForestBoundsReport verify_forest_bounds(int n, int m_lo, int m_hi, int jobs) {
  if (n < 1) throw DomainError("verify_forest_bounds: n must be >= 1");
  if (m_lo < 1 || m_hi < m_lo) throw DomainError("verify_forest_bounds: bad m range");
  if (jobs < 1) jobs = 1;
  ForestBoundsReport rep;
  rep.n = n;
  rep.m_lo = m_lo;
  rep.m_hi = m_hi;

  for (int m = m_lo; m <= m_hi; ++m) {
    std::vector<PathForest> forests;
    const long long cap = sweep_cap(n, m);
    for (long long total = n; total <= cap; ++total)
      for (auto& p : partitions_exact(total, n, 1)) forests.push_back(PathForest(p));

    std::vector<std::vector<BoundViolation>> found(jobs);
    std::vector<long long> counts(jobs, 0);
    auto work = [&](int shard) {
      for (std::size_t i = shard; i < forests.size(); i += jobs) {
        const PathForest& t = forests[i];
        auto rule = theorem_predict(t, m);
        bool exceptional = exceptional_clause(t, m) != ExceptionalClause::None;
        if (!rule && !exceptional) continue;
        bool burnable = decide(t, m).verdict == Verdict::Yes;
        ++counts[shard];
        if (rule && !burnable)
          found[shard].push_back({t, m, true, false});
        else if (exceptional && burnable)
          found[shard].push_back({t, m, false, true});
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (int s = 0; s < jobs; ++s) threads.emplace_back(work, s);
      for (auto& th : threads) th.join();
    }
    for (int s = 0; s < jobs; ++s) {
      rep.checked += counts[s];
      rep.violations.insert(rep.violations.end(), found[s].begin(), found[s].end());
    }
  }
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const BoundViolation& a, const BoundViolation& b) {
              return std::pair(a.m, a.forest.lengths) < std::pair(b.m, b.forest.lengths);
            });
  return rep;
}

}  // namespace burn
