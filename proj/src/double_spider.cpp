#include "burn/double_spider.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "burn/errors.hpp"
#include "burn/path_forest.hpp"
#include "burn/util.hpp"

namespace burn {

DoubleSpider::DoubleSpider(std::vector<int> a, std::vector<int> b)
    : arms_a(std::move(a)), arms_b(std::move(b)) {
  for (int l : arms_a)
    if (l < 1) throw DomainError("double spider: arm length must be >= 1");
  for (int l : arms_b)
    if (l < 1) throw DomainError("double spider: arm length must be >= 1");
  std::sort(arms_a.begin(), arms_a.end(), std::greater<>());
  std::sort(arms_b.begin(), arms_b.end(), std::greater<>());
  // one canonical orientation so equal shapes compare equal
  if (std::pair(arms_a.size(), arms_a) < std::pair(arms_b.size(), arms_b))
    std::swap(arms_a, arms_b);
}

int DoubleSpider::arm_count() const {
  return static_cast<int>(arms_a.size() + arms_b.size());
}

long long DoubleSpider::order() const {
  long long total = 2;
  for (int l : arms_a) total += l;
  for (int l : arms_b) total += l;
  return total;
}

int DoubleSpider::shortest_arm() const {
  int best = 0;
  for (int l : arms_a) best = best == 0 ? l : std::min(best, l);
  for (int l : arms_b) best = best == 0 ? l : std::min(best, l);
  return best;
}

std::string DoubleSpider::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < arms_a.size(); ++i) {
    if (i) os << ',';
    os << arms_a[i];
  }
  os << '/';
  for (std::size_t i = 0; i < arms_b.size(); ++i) {
    if (i) os << ',';
    os << arms_b[i];
  }
  return os.str();
}

DoubleSpider parse_double_spider(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw ParseError("double spider: expected 'a,.../b,...'");
  auto parse_side = [](const std::string& part) {
    std::vector<int> out;
    if (part.empty()) return out;
    std::stringstream ss(part);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      int v;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("double spider: bad arm '" + tok + "'");
      }
      if (used != tok.size()) throw ParseError("double spider: bad arm '" + tok + "'");
      if (v < 1) throw ParseError("double spider: arm lengths must be >= 1");
      out.push_back(v);
    }
    return out;
  };
  return DoubleSpider(parse_side(s.substr(0, slash)), parse_side(s.substr(slash + 1)));
}

Graph to_graph(const DoubleSpider& ds) { return build_double_spider(ds.arms_a, ds.arms_b); }

bool has_hard_subspider(const DoubleSpider& ds, int m) {
  if (m < 2) throw DomainError("has_hard_subspider: m must be >= 2");
  if (ds.arm_count() < m) throw DomainError("has_hard_subspider: needs at least m arms");
  // Arms sorted descending per head; the best k-from-A, (m-k)-from-B pick is
  // always the longest ones. A pick is hard when its two shortest same-head
  // tips are >= 2m apart and the cross pair of shortest tips is too.
  const auto& a = ds.arms_a;
  const auto& b = ds.arms_b;
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  for (int k = std::max(0, m - nb); k <= std::min(m, na); ++k) {
    bool ok = true;
    if (k >= 2 && a[k - 1] + a[k - 2] < 2 * m) ok = false;
    const int kb = m - k;
    if (ok && kb >= 2 && b[kb - 1] + b[kb - 2] < 2 * m) ok = false;
    if (ok && k >= 1 && kb >= 1 && a[k - 1] + b[kb - 1] + 1 < 2 * m) ok = false;
    if (ok) return true;
  }
  return false;
}

const char* to_string(SpiderRoute r) {
  switch (r) {
    case SpiderRoute::BigOrderExact: return "big_order_exact";
    case SpiderRoute::OrderBoundFewArms: return "order_bound_few_arms";
    case SpiderRoute::OrderBoundManyArms: return "order_bound_many_arms";
    case SpiderRoute::HardObstruction: return "hard_obstruction";
    default: return "exact";
  }
}

const char* to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Found: return "found";
    case WitnessStatus::NoneExists: return "none_exists";
    default: return "budget";
  }
}

namespace {

SpiderDecision run_exact(const DoubleSpider& ds, int m, SpiderRoute route,
                         const SpiderOptions& opts) {
  SolveOptions so;
  so.node_budget = opts.node_budget;
  SolveResult r = is_m_burnable(to_graph(ds), m, so);
  SpiderDecision out;
  out.verdict = r.verdict;
  out.route = route;
  out.nodes = r.nodes;
  if (r.verdict == Verdict::Yes && opts.want_witness) out.witness = r.witness;
  return out;
}

}  // namespace

SpiderDecision decide_double_spider(const DoubleSpider& ds, int m, const SpiderOptions& opts) {
  if (m < 2) throw DomainError("decide_double_spider: m must be >= 2");
  const int n = ds.arm_count();
  const long long order = ds.order();
  const long long bound = static_cast<long long>(m) * m + n - 2;

  if (order > bound) return run_exact(ds, m, SpiderRoute::BigOrderExact, opts);

  if (n < m) {
    SpiderDecision out;
    out.verdict = Verdict::Yes;
    out.route = SpiderRoute::OrderBoundFewArms;
    if (opts.want_witness) {
      HeadDeadlineWitness w = head_deadline_witness(ds, m, opts);
      if (w.status == WitnessStatus::Found) out.witness = w.seq;
    }
    return out;
  }
  if (m >= 3 && has_hard_subspider(ds, m)) {
    SpiderDecision out;
    out.verdict = Verdict::No;
    out.route = SpiderRoute::HardObstruction;
    return out;
  }
  if (m >= 3 && order == bound) {
    SpiderDecision out;
    out.verdict = Verdict::Yes;
    out.route = SpiderRoute::OrderBoundManyArms;
    if (opts.want_witness) {
      SpiderOptions wo = opts;
      wo.node_budget = opts.witness_budget;
      SpiderDecision exact = run_exact(ds, m, SpiderRoute::OrderBoundManyArms, wo);
      if (exact.verdict == Verdict::Yes) out.witness = exact.witness;
      out.nodes = exact.nodes;
    }
    return out;
  }
  return run_exact(ds, m, SpiderRoute::Exact, opts);
}

HeadDeadlineWitness head_deadline_witness(const DoubleSpider& ds, int m,
                                          const SpiderOptions& opts) {
  if (m < 2) throw DomainError("head_deadline_witness: m must be >= 2");
  const int n = ds.arm_count();
  if (n >= m) throw PreconditionViolated("head_deadline_witness: needs fewer arms than rounds");
  if (ds.order() > static_cast<long long>(m) * m + std::max(n - 2, 0))
    throw PreconditionViolated("head_deadline_witness: order above the guaranteed bound");

  const int short_arm = ds.shortest_arm();
  int spare = n <= 2 ? m - 2 : m - 3;
  if (n >= 1) spare = std::min(spare, short_arm);
  if (spare < 0) spare = 0;
  const int deadline = m - spare;

  HeadDeadlineWitness out;
  out.deadline = deadline;

  const Graph g = to_graph(ds);

  // Arm i occupies positions base[i] .. base[i]+len-1, head side first.
  const int na = static_cast<int>(ds.arms_a.size());
  std::vector<int> base(n), alen(n), head_of(n);
  {
    int next = 2;
    for (int i = 0; i < n; ++i) {
      alen[i] = i < na ? ds.arms_a[i] : ds.arms_b[i - na];
      head_of[i] = i < na ? 0 : 1;
      base[i] = next;
      next += alen[i];
    }
  }

  // Fast path: try first sources that reach both heads by the deadline and
  // cover everything near them; the leftover arm tails form a path forest
  // burnable with the remaining m-1 rounds.
  struct Start {
    int vertex, da, db;
  };
  std::vector<Start> starts;
  starts.push_back({0, 0, 1});
  starts.push_back({1, 1, 0});
  if (n <= 2) {
    for (int i = 0; i < n; ++i)
      for (int p = 1; p <= alen[i]; ++p) {
        int da = head_of[i] == 0 ? p : p + 1;
        int db = head_of[i] == 1 ? p : p + 1;
        if (1 + std::max(da, db) <= deadline) starts.push_back({base[i] + p - 1, da, db});
      }
  }

  for (const Start& st : starts) {
    if (1 + std::max(st.da, st.db) > deadline) continue;
    // tail of each arm left uncovered by B(start, m-1)
    std::vector<long long> tails;
    std::vector<int> tail_arm, tail_from;  // arm index, first uncovered position
    for (int i = 0; i < n; ++i) {
      int dhead;  // distance from the start to this arm's head
      if (st.vertex >= base[i] && st.vertex < base[i] + alen[i]) {
        dhead = st.vertex - base[i] + 1;
      } else {
        dhead = head_of[i] == 0 ? st.da : st.db;
      }
      int covered = m - 1 - dhead;  // arm positions 1..covered are burned in time
      if (st.vertex >= base[i] && st.vertex < base[i] + alen[i]) {
        // the start sits on this arm; outward coverage goes further
        covered = (st.vertex - base[i] + 1) + (m - 1);
      }
      if (covered >= alen[i]) continue;
      int from = std::max(covered, 0) + 1;
      tails.push_back(alen[i] - from + 1);
      tail_arm.push_back(i);
      tail_from.push_back(from);
    }

    BurningSequence seq;
    seq.sources.push_back(st.vertex);
    bool ok = true;
    if (!tails.empty()) {
      PathForest residual{tails};
      // PathForest sorts descending; recover which tail went where
      std::vector<int> perm(tails.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::sort(perm.begin(), perm.end(), [&](int x, int y) {
        return tails[x] != tails[y] ? tails[x] > tails[y] : x < y;
      });
      PartitionDecision pd = decide(residual, m - 1);
      if (pd.verdict != Verdict::Yes) {
        ok = false;
      } else {
        BurningSequence sub = assignment_to_sequence(residual, *pd.assignment);
        // translate forest positions to host positions, shifting rounds by 1
        std::vector<long long> starts_in_forest(perm.size());
        long long acc = 0;
        for (std::size_t s = 0; s < perm.size(); ++s) {
          starts_in_forest[s] = acc;
          acc += residual.lengths[s];
        }
        for (std::size_t r = 0; r < sub.sources.size(); ++r) {
          long long pos = sub.sources[r];
          std::size_t s = 0;
          while (s + 1 < perm.size() && starts_in_forest[s + 1] <= pos) ++s;
          long long off = pos - starts_in_forest[s];
          int arm = tail_arm[perm[s]];
          int host = base[arm] + (tail_from[perm[s]] + static_cast<int>(off)) - 1;
          seq.sources.push_back(host);
        }
      }
    }
    if (!ok) continue;
    BurnOutcome sim = simulate(g, seq);
    if (!sim.fully_burned || sim.invalid_placement || sim.rounds_elapsed > m) continue;
    if (sim.burned_at[0] > deadline || sim.burned_at[1] > deadline) continue;
    out.status = WitnessStatus::Found;
    out.seq = seq;
    out.heads_burned_by = std::max(sim.burned_at[0], sim.burned_at[1]);
    return out;
  }

  // Exact search with the heads put on a deadline.
  SolveOptions so;
  so.node_budget = opts.node_budget;
  so.deadline_vertices = {0, 1};
  so.deadline_round = deadline;
  SolveResult r = is_m_burnable(g, m, so);
  if (r.verdict == Verdict::Yes) {
    BurnOutcome sim = simulate(g, r.witness);
    out.status = WitnessStatus::Found;
    out.seq = r.witness;
    out.heads_burned_by = std::max(sim.burned_at[0], sim.burned_at[1]);
  } else if (r.verdict == Verdict::No) {
    out.status = WitnessStatus::NoneExists;
  } else {
    out.status = WitnessStatus::Budget;
  }
  return out;
}

std::vector<DoubleSpider> enumerate_double_spiders(long long order, int n) {
  if (n < 0) throw DomainError("enumerate_double_spiders: negative arm count");
  if (order < 2 + n) throw DomainError("enumerate_double_spiders: order too small");
  std::set<DoubleSpider> out;
  if (n == 0) {
    if (order == 2) out.insert(DoubleSpider({}, {}));
    return {out.begin(), out.end()};
  }
  for (auto& arms : partitions_exact(order - 2, n, 1)) {
    // split the multiset across the two heads: choose per distinct value
    std::vector<std::pair<int, int>> groups;  // (value, count)
    for (long long v : arms) {
      if (!groups.empty() && groups.back().first == v)
        ++groups.back().second;
      else
        groups.push_back({static_cast<int>(v), 1});
    }
    std::vector<int> take(groups.size(), 0);
    for (;;) {
      std::vector<int> a, b;
      for (std::size_t i = 0; i < groups.size(); ++i) {
        for (int c = 0; c < take[i]; ++c) a.push_back(groups[i].first);
        for (int c = take[i]; c < groups[i].second; ++c) b.push_back(groups[i].first);
      }
      out.insert(DoubleSpider(a, b));
      std::size_t i = 0;
      while (i < groups.size() && take[i] == groups[i].second) take[i++] = 0;
      if (i == groups.size()) break;
      ++take[i];
    }
  }
  return {out.begin(), out.end()};
}

DoubleSpider random_double_spider(long long order, int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("random_double_spider: needs at least one arm");
  if (order < 2 + n) throw DomainError("random_double_spider: order too small");
  Rng rng(seed);
  // random composition of the arm total into n parts >= 1
  long long spare = order - 2 - n;
  std::vector<long long> cuts{0, spare};
  for (int i = 0; i < n - 1; ++i) cuts.push_back(static_cast<long long>(rng.below(spare + 1)));
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> a, b;
  for (int i = 0; i < n; ++i) {
    int arm = static_cast<int>(cuts[i + 1] - cuts[i] + 1);
    (rng.next() & 1 ? a : b).push_back(arm);
  }
  return DoubleSpider(a, b);
}

DoubleSpiderReport verify_double_spiders(int m, int n, bool sampled, long long sample_count,
                                         std::uint64_t seed, int jobs) {
  if (m < 2) throw DomainError("verify_double_spiders: m must be >= 2");
  if (n < 1) throw DomainError("verify_double_spiders: n must be >= 1");
  if (jobs < 1) jobs = 1;
  DoubleSpiderReport rep;
  rep.m = m;
  rep.n = n;
  rep.sampled = sampled;
  rep.seed = seed;
  const long long order = static_cast<long long>(m) * m + n - 2;

  std::vector<DoubleSpider> instances;
  if (sampled) {
    if (sample_count < 1) throw DomainError("verify_double_spiders: sample count must be >= 1");
    for (long long i = 0; i < sample_count; ++i)
      instances.push_back(random_double_spider(order, n, seed + static_cast<std::uint64_t>(i)));
  } else {
    instances = enumerate_double_spiders(order, n);
  }

  std::vector<std::vector<SpiderViolation>> found(jobs);
  auto work = [&](int shard) {
    for (std::size_t i = shard; i < instances.size(); i += jobs) {
      const DoubleSpider& ds = instances[i];
      if (n < m) {
        SpiderDecision d = decide_double_spider(ds, m);
        if (d.verdict != Verdict::Yes) {
          found[shard].push_back({ds, "expected burnable, verdict " +
                                          std::string(to_string(d.verdict))});
          continue;
        }
        HeadDeadlineWitness w = head_deadline_witness(ds, m);
        if (w.status != WitnessStatus::Found) {
          found[shard].push_back({ds, "no head-deadline witness: " +
                                          std::string(to_string(w.status))});
          continue;
        }
        const Graph g = to_graph(ds);
        if (!burns_within(g, w.seq, m)) {
          found[shard].push_back({ds, "witness does not replay"});
          continue;
        }
        BurnOutcome sim = simulate(g, w.seq);
        if (std::max(sim.burned_at[0], sim.burned_at[1]) > w.deadline)
          found[shard].push_back({ds, "witness misses the head deadline"});
      } else {
        SolveOptions so;
        SolveResult r = is_m_burnable(to_graph(ds), m, so);
        bool hard = has_hard_subspider(ds, m);
        if (r.verdict == Verdict::Budget)
          found[shard].push_back({ds, "exact solver ran out of budget"});
        else if ((r.verdict == Verdict::Yes) == hard)
          found[shard].push_back({ds, hard ? "hard but burnable" : "not hard yet unburnable"});
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < jobs; ++s) threads.emplace_back(work, s);
    for (auto& th : threads) th.join();
  }
  rep.checked = static_cast<long long>(instances.size());
  for (int s = 0; s < jobs; ++s)
    rep.violations.insert(rep.violations.end(), found[s].begin(), found[s].end());
  return rep;
}

}  // namespace burn
