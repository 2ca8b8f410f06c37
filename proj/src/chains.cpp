#include "burn/chains.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "burn/errors.hpp"
#include "burn/util.hpp"

namespace burn {

namespace {

using Clock = std::chrono::steady_clock;

bool out_of_time(Clock::time_point start, double budget_secs) {
  if (budget_secs <= 0.0) return false;
  return std::chrono::duration<double>(Clock::now() - start).count() > budget_secs;
}

}  // namespace

SquareForest::SquareForest(PathForest f) : forest(std::move(f)) {
  long long order = forest.order();
  long long r = floor_isqrt(order);
  if (r * r != order)
    throw NotSquareOrder("square forest: order " + std::to_string(order) +
                         " is not a perfect square");
  m = static_cast<int>(r);
}

DeficiencyCache::DeficiencyCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;  // fresh cache file, created on first record
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string n_str, m_str, lens_str, verdict;
    if (!std::getline(ls, n_str, ';') || !std::getline(ls, m_str, ';') ||
        !std::getline(ls, lens_str, ';') || !std::getline(ls, verdict))
      throw ParseError("cache line " + std::to_string(line_no) + ": expected 4 fields");
    std::vector<long long> lengths;
    std::stringstream lss(lens_str);
    std::string tok;
    while (std::getline(lss, tok, ',')) lengths.push_back(std::stoll(tok));
    if (lengths.size() != static_cast<std::size_t>(std::stoi(n_str)))
      throw ParseError("cache line " + std::to_string(line_no) + ": length count mismatch");
    bool burnable;
    if (verdict == "burnable")
      burnable = true;
    else if (verdict == "deficient")
      burnable = false;
    else
      throw ParseError("cache line " + std::to_string(line_no) + ": bad verdict");
    map_[{lengths, std::stoi(m_str)}] = burnable;
  }
}

std::optional<bool> DeficiencyCache::lookup(const std::vector<long long>& lengths,
                                            int m) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find({lengths, m});
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void DeficiencyCache::record(const std::vector<long long>& lengths, int m, bool burnable) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = map_.insert({{lengths, m}, burnable});
  (void)it;
  if (!inserted || path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << lengths.size() << ';' << m << ';';
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i) out << ',';
    out << lengths[i];
  }
  out << ';' << (burnable ? "burnable" : "deficient") << '\n';
}

std::size_t DeficiencyCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

std::optional<bool> is_burnable_cached(const PathForest& t, int m, DeficiencyCache* cache,
                                       std::uint64_t node_budget) {
  if (cache)
    if (auto hit = cache->lookup(t.lengths, m)) return hit;
  DecideOptions opts;
  opts.node_budget = node_budget;
  PartitionDecision d = decide(t, m, opts);
  if (d.verdict == Verdict::Budget) return std::nullopt;
  bool burnable = d.verdict == Verdict::Yes;
  if (cache) cache->record(t.lengths, m, burnable);
  return burnable;
}

const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Expanded: return "expanded";
    case NodeStatus::Closed: return "closed";
    default: return "open_budget";
  }
}

const char* to_string(CertifyStatus s) {
  switch (s) {
    case CertifyStatus::Certified: return "certified";
    case CertifyStatus::Counterexample: return "counterexample";
    default: return "inconclusive";
  }
}

std::vector<SquareForest> extension_children(const SquareForest& sf, DeficiencyCache* cache,
                                             const ChainBudgets& budgets, bool* complete) {
  if (complete) *complete = true;
  auto root_burnable = is_burnable_cached(sf.forest, sf.m, cache, budgets.node_budget);
  if (!root_burnable.has_value())
    throw PreconditionViolated("extension_children: could not settle the root in budget");
  if (*root_burnable)
    throw PreconditionViolated("extension_children: root is burnable, nothing extends it");

  const long long grow = 2LL * sf.m + 1;
  std::vector<SquareForest> out;
  long long prev = -1;
  for (std::size_t i = 0; i < sf.forest.lengths.size(); ++i) {
    if (sf.forest.lengths[i] == prev) continue;  // same multiset either way
    prev = sf.forest.lengths[i];
    std::vector<long long> ls = sf.forest.lengths;
    ls[i] += grow;
    PathForest child(ls);
    auto burnable = is_burnable_cached(child, sf.m + 1, cache, budgets.node_budget);
    if (!burnable.has_value()) {
      if (complete) *complete = false;
      continue;
    }
    if (!*burnable) out.push_back(SquareForest(std::move(child)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long ExtensionNode::subtree_size() const {
  long long total = 1;
  for (const ExtensionNode& c : children) total += c.subtree_size();
  return total;
}

bool ExtensionNode::all_leaves_closed() const {
  if (children.empty()) return status == NodeStatus::Closed;
  for (const ExtensionNode& c : children)
    if (!c.all_leaves_closed()) return false;
  return true;
}

ExtensionNode expand_extension_tree(const SquareForest& root, const ChainBudgets& budgets,
                                    DeficiencyCache* cache) {
  const auto start = Clock::now();
  ExtensionNode top;
  top.forest = root;
  top.status = NodeStatus::OpenBudget;
  long long node_count = 1;
  std::deque<ExtensionNode*> queue{&top};
  while (!queue.empty()) {
    ExtensionNode* node = queue.front();
    queue.pop_front();
    if (node->forest.m >= budgets.m_budget || node_count >= budgets.tree_node_budget ||
        out_of_time(start, budgets.time_budget_secs)) {
      node->status = NodeStatus::OpenBudget;
      continue;
    }
    bool complete = true;
    std::vector<SquareForest> kids = extension_children(node->forest, cache, budgets, &complete);
    if (!complete) {
      node->status = NodeStatus::OpenBudget;
      continue;
    }
    if (kids.empty()) {
      node->status = NodeStatus::Closed;
      continue;
    }
    node->status = NodeStatus::Expanded;
    node->children.reserve(kids.size());
    for (SquareForest& k : kids) {
      ExtensionNode child;
      child.forest = std::move(k);
      child.status = NodeStatus::OpenBudget;
      node->children.push_back(std::move(child));
      ++node_count;
    }
    // enqueue only after the children vector is final; queued pointers must
    // not be invalidated by further push_backs
    for (ExtensionNode& c : node->children) queue.push_back(&c);
  }
  return top;
}

DeficientScan enumerate_deficient(int n, long long min_len, int m_lo, int m_hi,
                                  DeficiencyCache* cache, const ChainBudgets& budgets) {
  if (n < 1) throw DomainError("enumerate_deficient: n must be >= 1");
  if (min_len < 1) throw DomainError("enumerate_deficient: min length must be >= 1");
  const auto start = Clock::now();
  DeficientScan scan;
  for (int m = m_lo; m <= m_hi; ++m) {
    const long long mm = static_cast<long long>(m) * m;
    for (auto& p : partitions_exact(mm, n, min_len)) {
      PathForest t(p);
      if (out_of_time(start, budgets.time_budget_secs)) {
        scan.complete = false;
        scan.frontier = "time budget at m=" + std::to_string(m) + " forest=" + t.to_string();
        return scan;
      }
      auto burnable = is_burnable_cached(t, m, cache, budgets.node_budget);
      if (!burnable.has_value()) {
        scan.complete = false;
        scan.frontier = "node budget at m=" + std::to_string(m) + " forest=" + t.to_string();
        return scan;
      }
      if (!*burnable) scan.found.push_back(SquareForest(std::move(t)));
    }
  }
  std::sort(scan.found.begin(), scan.found.end());
  return scan;
}

namespace {

// Largest m whose square-order members need direct checking: above it, the
// largest component of any order-m^2 member with n components of length at
// least min_len exceeds min_len + 2m - 2, so removing 2m - 1 vertices from it
// descends to an order-(m-1)^2 member of the same family, and deficiency
// descends with it.
int descent_window_end(int n, long long min_len, int m_min) {
  int last = m_min - 1;
  const int scan_hi =
      n + static_cast<int>(ceil_isqrt(static_cast<long long>(n) * n + n * min_len)) + 2;
  for (int m = m_min; m <= scan_hi; ++m) {
    const long long mm = static_cast<long long>(m) * m;
    const long long longest_floor = (mm + n - 1) / n;  // every member has a component >= this
    if (longest_floor < min_len + 2LL * m - 1) last = m;
  }
  return last;
}

// Time budgets cover the whole call: each step below gets what remains.
std::optional<ChainBudgets> budget_slice(const ChainBudgets& budgets, Clock::time_point start) {
  ChainBudgets slice = budgets;
  if (budgets.time_budget_secs > 0.0) {
    double left = budgets.time_budget_secs -
                  std::chrono::duration<double>(Clock::now() - start).count();
    if (left <= 0.0) return std::nullopt;
    slice.time_budget_secs = left;
  }
  return slice;
}

CertifyResult certify_impl(int n, long long min_len, const ChainBudgets& budgets,
                           DeficiencyCache* cache, bool expand_trees) {
  if (n < 1) throw DomainError("certify_threshold: n must be >= 1");
  if (min_len < 1) throw DomainError("certify_threshold: min length must be >= 1");
  const auto start = Clock::now();
  CertifyResult res;
  res.n = n;
  res.min_len = min_len;
  res.m_min = static_cast<int>(ceil_isqrt(static_cast<long long>(n) * min_len));
  res.threshold_m = descent_window_end(n, min_len, res.m_min);
  res.max_m_reached = res.m_min - 1;

  for (int m = res.m_min; m <= res.threshold_m; ++m) {
    auto slice = budget_slice(budgets, start);
    if (!slice) {
      res.status = CertifyStatus::Inconclusive;
      res.frontier = "time budget at m=" + std::to_string(m);
      return res;
    }
    DeficientScan scan = enumerate_deficient(n, min_len, m, m, cache, *slice);
    if (!scan.complete) {
      res.status = CertifyStatus::Inconclusive;
      res.frontier = scan.frontier;
      return res;
    }
    res.max_m_reached = m;
    for (SquareForest& s : scan.found) res.seeds.push_back(std::move(s));
  }
  if (!res.seeds.empty()) {
    res.status = CertifyStatus::Counterexample;
    res.counterexample = res.seeds.front();
    if (expand_trees) {
      for (const SquareForest& seed : res.seeds) {
        auto slice = budget_slice(budgets, start);
        if (!slice) {
          slice = budgets;
          slice->tree_node_budget = 0;  // out of time: record the seed unexpanded
        }
        ExtensionNode tree = expand_extension_tree(seed, *slice, cache);
        res.tree_sizes.push_back(tree.subtree_size());
      }
    }
    return res;
  }
  res.status = CertifyStatus::Certified;
  return res;
}

}  // namespace

CertifyResult certify_threshold(int n, long long min_len, const ChainBudgets& budgets,
                                DeficiencyCache* cache) {
  return certify_impl(n, min_len, budgets, cache, true);
}

ThresholdResult compute_threshold(int n, const ChainBudgets& budgets, DeficiencyCache* cache) {
  if (n < 1) throw DomainError("compute_threshold: n must be >= 1");
  constexpr long long kScanCap = 100000;  // defensive only, never expected to bind
  const auto start = Clock::now();
  ThresholdResult out;
  std::optional<SquareForest> last_counterexample;
  for (long long L = 1; L <= kScanCap; ++L) {
    auto slice = budget_slice(budgets, start);
    if (!slice) {
      out.status = CertifyStatus::Inconclusive;
      out.frontier = "time budget at min_len=" + std::to_string(L);
      return out;
    }
    // trees are not expanded during the scan; the certified L has no seeds
    // and the witness below needs just one deficient member
    CertifyResult r = certify_impl(n, L, *slice, cache, false);
    if (r.status == CertifyStatus::Certified) {
      out.status = CertifyStatus::Certified;
      out.value = L;
      out.witness_below = last_counterexample;
      out.certified = std::move(r);
      return out;
    }
    if (r.status == CertifyStatus::Inconclusive) {
      out.status = CertifyStatus::Inconclusive;
      out.frontier = "min_len=" + std::to_string(L) + ": " + r.frontier;
      return out;
    }
    last_counterexample = std::move(r.counterexample);
  }
  out.status = CertifyStatus::Inconclusive;
  out.frontier = "no certified threshold up to " + std::to_string(kScanCap);
  return out;
}

// ---- odd-number exchange machinery ----

OddSequence OddSequence::arithmetic(long long first, long long step) {
  if (first < 1 || first % 2 == 0) throw DomainError("odd sequence: first term must be odd");
  if (step < 2 || step % 2 == 1) throw DomainError("odd sequence: step must be even");
  return OddSequence{[first, step](long long i) {
    if (i < 1) throw DomainError("odd sequence: index must be >= 1");
    return first + (i - 1) * step;
  }};
}

OddSequence OddSequence::from_values(std::vector<long long> vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < 1 || vals[i] % 2 == 0)
      throw DomainError("odd sequence: terms must be positive odd numbers");
    if (i && vals[i] <= vals[i - 1])
      throw DomainError("odd sequence: terms must be strictly increasing");
  }
  return OddSequence{[vals = std::move(vals)](long long i) {
    if (i < 1) throw DomainError("odd sequence: index must be >= 1");
    if (i > static_cast<long long>(vals.size()))
      throw GuardExhausted("odd sequence: ran past the provided terms");
    return vals[i - 1];
  }};
}

std::vector<long long> OddSequence::prefix(long long count) const {
  std::vector<long long> out;
  out.reserve(count);
  for (long long i = 1; i <= count; ++i) out.push_back(at(i));
  return out;
}

bool exchange_valid(const std::vector<OddSequence>& seqs, const ExchangePartition& p,
                    std::string* why) {
  auto explain = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const std::size_t n = seqs.size();
  if (p.prefix_len.size() != n || p.parts.size() != n || p.offsets.size() != n)
    return explain("sizes disagree with the sequence count");
  long long offset_sum = 0;
  for (long long x : p.offsets) offset_sum += x;
  if (offset_sum != 0) return explain("offsets must sum to zero");

  std::multiset<long long> prefix_union;
  for (std::size_t j = 0; j < n; ++j)
    for (long long i = 1; i <= p.prefix_len[j]; ++i) prefix_union.insert(seqs[j].at(i));

  std::multiset<long long> part_union;
  for (std::size_t j = 0; j < n; ++j) {
    long long want = p.offsets[j];
    for (long long i = 1; i <= p.prefix_len[j]; ++i) want += seqs[j].at(i);
    long long got = 0;
    for (long long v : p.parts[j]) {
      got += v;
      part_union.insert(v);
    }
    if (got != want)
      return explain("part " + std::to_string(j) + " sums to " + std::to_string(got) +
                     ", wanted " + std::to_string(want));
  }
  if (part_union != prefix_union)
    return explain("parts are not a rearrangement of the prefixes");
  std::set<long long> distinct(part_union.begin(), part_union.end());
  if (distinct.size() != part_union.size()) return explain("a value appears twice");
  return true;
}

namespace {

// Evaluation that treats running past a finite sequence as absence.
std::optional<long long> seq_at(const OddSequence& s, long long i) {
  try {
    return s.at(i);
  } catch (const GuardExhausted&) {
    return std::nullopt;
  }
}

OddSequence shifted(const OddSequence& seq, long long by) {
  auto at = seq.at;
  return OddSequence{[at, by](long long i) { return at(i + by); }};
}

}  // namespace

ExchangePartition exchange_partition_two(const OddSequence& a, const OddSequence& b,
                                         long long x, long long guard) {
  if (guard < 1) throw DomainError("exchange: guard must be >= 1");
  ExchangePartition out;
  out.prefix_len = {0, 0};
  out.parts = {{}, {}};
  out.offsets = {x, -x};
  if (x == 0) return out;

  if (x > 0 && x % 2 == 0) {
    // swap k = x/2 prefix terms of a for their successors sitting in b
    const long long k = x / 2;
    std::set<long long> swapped, targets;
    long long a_hi = 0, b_hi = 0;
    long long jb = 1;
    for (long long i = 1; i <= guard && static_cast<long long>(swapped.size()) < k; ++i) {
      auto va = seq_at(a, i);
      if (!va) break;
      const long long want = *va + 2;  // increasing in i, so jb only moves right
      while (jb <= guard) {
        auto vb = seq_at(b, jb);
        if (!vb || *vb >= want) break;
        ++jb;
      }
      if (jb > guard) break;
      auto vb = seq_at(b, jb);
      if (vb && *vb == want) {
        swapped.insert(*va);
        targets.insert(want);
        a_hi = i;
        b_hi = jb;
      }
    }
    if (static_cast<long long>(swapped.size()) < k)
      throw GuardExhausted("exchange: not enough swappable terms within the guard");
    out.prefix_len = {a_hi, b_hi};
    for (long long i = 1; i <= a_hi; ++i) {
      long long v = a.at(i);
      if (!swapped.count(v)) out.parts[0].push_back(v);
    }
    for (long long v : targets) out.parts[0].push_back(v);
    for (long long i = 1; i <= b_hi; ++i) {
      long long v = b.at(i);
      if (!targets.count(v)) out.parts[1].push_back(v);
    }
    for (long long v : swapped) out.parts[1].push_back(v);
    std::sort(out.parts[0].begin(), out.parts[0].end());
    std::sort(out.parts[1].begin(), out.parts[1].end());
    return out;
  }

  // odd or negative x: donate head terms of a until the remainder is even
  // and nonnegative, then run the even case on the tail
  long long acc = 0;
  for (long long l = 0; l <= guard; ++l) {
    if (l > 0) {
      auto v = seq_at(a, l);
      if (!v) break;
      acc += *v;
    }
    long long rest = x + acc;
    if (rest >= 0 && rest % 2 == 0) {
      ExchangePartition inner = exchange_partition_two(shifted(a, l), b, rest, guard);
      out.prefix_len = {l + inner.prefix_len[0], inner.prefix_len[1]};
      out.parts[0] = std::move(inner.parts[0]);
      out.parts[1] = std::move(inner.parts[1]);
      for (long long i = 1; i <= l; ++i) out.parts[1].push_back(a.at(i));
      std::sort(out.parts[1].begin(), out.parts[1].end());
      return out;
    }
  }
  throw GuardExhausted("exchange: could not rebalance within the guard");
}

ExchangePartition exchange_partition_multi(const std::vector<OddSequence>& seqs,
                                           const std::vector<long long>& xs, long long guard) {
  const std::size_t n = seqs.size();
  if (n < 2) throw DomainError("exchange: needs at least two sequences");
  if (xs.size() != n) throw DomainError("exchange: one offset per sequence required");
  long long sum = 0;
  for (long long x : xs) sum += x;
  if (sum != 0) throw DomainError("exchange: offsets must sum to zero");

  ExchangePartition out;
  out.prefix_len.assign(n, 0);
  out.parts.assign(n, {});
  out.offsets = xs;

  if (n == 2) {
    ExchangePartition two = exchange_partition_two(seqs[0], seqs[1], xs[0], guard);
    out.prefix_len = two.prefix_len;
    out.parts = two.parts;
  } else {
    // pick the sequence with the most successors in the last one, merge the
    // two, solve the smaller instance, then split the merged prefix apart
    const OddSequence& last = seqs[n - 1];
    const long long probe = std::min<long long>(guard, 256);
    std::size_t partner = 0;
    long long best = -1;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      long long hits = 0, jb = 1;
      for (long long i = 1; i <= probe; ++i) {
        auto v = seq_at(seqs[j], i);
        if (!v) break;
        const long long want = *v + 2;
        while (jb <= probe) {
          auto vb = seq_at(last, jb);
          if (!vb || *vb >= want) break;
          ++jb;
        }
        if (jb > probe) break;
        auto vb = seq_at(last, jb);
        if (vb && *vb == want) ++hits;
      }
      if (hits > best) {
        best = hits;
        partner = j;
      }
    }
    const OddSequence& sa = seqs[partner];

    std::vector<long long> merged_vals;
    merged_vals.reserve(guard);
    {
      long long ia = 1, ib = 1;
      while (static_cast<long long>(merged_vals.size()) < guard) {
        auto va = seq_at(sa, ia);
        auto vb = seq_at(last, ib);
        if (va && (!vb || *va < *vb)) {
          merged_vals.push_back(*va);
          ++ia;
        } else if (vb) {
          merged_vals.push_back(*vb);
          ++ib;
        } else {
          break;
        }
      }
    }
    OddSequence merged = OddSequence::from_values(std::move(merged_vals));

    std::vector<std::size_t> order;  // partner moves next to the merged slot
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (j != partner) order.push_back(j);
    order.push_back(partner);

    std::vector<OddSequence> inner_seqs;
    std::vector<long long> inner_xs;
    for (std::size_t j = 0; j + 2 < n; ++j) {
      inner_seqs.push_back(seqs[order[j]]);
      inner_xs.push_back(xs[order[j]]);
    }
    inner_seqs.push_back(merged);
    inner_xs.push_back(xs[partner] + xs[n - 1]);
    ExchangePartition inner = exchange_partition_multi(inner_seqs, inner_xs, guard);

    // the merged prefix is the union of one prefix from each constituent;
    // classify each term to find the two lengths
    long long m1 = 0, m2 = 0, pa = 1, pb = 1;
    for (long long i = 1; i <= inner.prefix_len[n - 2]; ++i) {
      long long v = merged.at(i);
      for (;;) {
        auto va = seq_at(sa, pa);
        if (va && *va < v) {
          ++pa;
          continue;
        }
        if (va && *va == v) {
          m1 = pa++;
          break;
        }
        auto vb = seq_at(last, pb);
        if (vb && *vb < v) {
          ++pb;
          continue;
        }
        if (vb && *vb == v) {
          m2 = pb++;
          break;
        }
        throw GuardExhausted("exchange: merged term missing from both constituents");
      }
    }

    // rebalance the tails so each constituent's sum identity holds; the
    // merged part keeps its sum, so the donor offset cancels the excess
    long long prefix2 = 0;
    for (long long i = 1; i <= m2; ++i) prefix2 += last.at(i);
    ExchangePartition fix = exchange_partition_two(shifted(sa, m1), shifted(last, m2),
                                                   -prefix2 - xs[n - 1], guard);

    for (std::size_t j = 0; j + 2 < n; ++j) {
      out.prefix_len[order[j]] = inner.prefix_len[j];
      out.parts[order[j]] = std::move(inner.parts[j]);
    }
    out.prefix_len[partner] = m1 + fix.prefix_len[0];
    out.prefix_len[n - 1] = m2 + fix.prefix_len[1];
    out.parts[partner] = std::move(inner.parts[n - 2]);
    out.parts[partner].insert(out.parts[partner].end(), fix.parts[0].begin(),
                              fix.parts[0].end());
    out.parts[n - 1] = std::move(fix.parts[1]);
    std::sort(out.parts[partner].begin(), out.parts[partner].end());
  }

  // closing step: extend every prefix to the largest used value, each new
  // term joining the part of the sequence it came from
  long long vmax = 0;
  for (const auto& part : out.parts)
    for (long long v : part) vmax = std::max(vmax, v);
  for (std::size_t j = 0; j < n; ++j) {
    long long i = out.prefix_len[j];
    while (i + 1 <= guard) {
      auto v = seq_at(seqs[j], i + 1);
      if (!v || *v > vmax) break;
      ++i;
      out.parts[j].push_back(*v);
    }
    out.prefix_len[j] = i;
    std::sort(out.parts[j].begin(), out.parts[j].end());
  }
  return out;
}

// ---- constructive burnable completions ----

namespace {

struct LabeledPath {
  long long len = 0;
  std::vector<long long> set;
  bool residual = false;
};

SquareCompletion pack_completion(int m, std::vector<LabeledPath> paths) {
  std::stable_sort(paths.begin(), paths.end(),
                   [](const LabeledPath& a, const LabeledPath& b) { return a.len > b.len; });
  SquareCompletion out;
  out.m = m;
  out.assignment.m = m;
  out.residual_index = -1;
  std::vector<long long> lengths;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    lengths.push_back(paths[i].len);
    out.assignment.sets.push_back(std::move(paths[i].set));
    if (paths[i].residual) out.residual_index = static_cast<int>(i);
  }
  out.forest = PathForest(std::move(lengths));
  return out;
}

constexpr long long kMaxCompletionLength = 1LL << 24;  // the residual set is O(m) long

}  // namespace

SquareCompletion complete_evens_to_square(const std::vector<long long>& evens) {
  const int n = static_cast<int>(evens.size());
  if (n < 1) throw DomainError("complete_evens_to_square: needs at least one length");
  std::vector<long long> ls = evens;
  std::sort(ls.begin(), ls.end(), std::greater<>());
  if (ls[0] > kMaxCompletionLength)
    throw DomainError("complete_evens_to_square: length too large");
  for (long long l : ls) {
    if (l % 2 != 0) throw PreconditionViolated("complete_evens_to_square: lengths must be even");
    if (l < 8LL * n)
      throw PreconditionViolated("complete_evens_to_square: lengths must be at least 8n");
  }

  // Path i (by descending length) takes the pair {2 t_i - 1, 2(n+i) - 1} with
  // t_i = l_i/2 - n - i + 1. The t_i decrease strictly and stay above 2n, so
  // the big halves miss the small halves; every leftover odd goes to one
  // residual path, reaching order m^2 exactly.
  const int m = static_cast<int>(ls[0] / 2 - n);
  std::vector<LabeledPath> paths;
  std::set<long long> used;
  for (int i = 0; i < n; ++i) {
    long long t = ls[i] / 2 - n - i;
    long long big = 2 * t - 1;
    long long small = 2LL * (n + i + 1) - 1;
    paths.push_back({ls[i], {small, big}, false});
    used.insert(big);
    used.insert(small);
  }
  long long residual = static_cast<long long>(m) * m;
  for (long long l : ls) residual -= l;
  if (residual > 0) {
    std::vector<long long> rest;
    for (long long v = 1; v < 2LL * m; v += 2)
      if (!used.count(v)) rest.push_back(v);
    paths.push_back({residual, std::move(rest), true});
  }
  return pack_completion(m, std::move(paths));
}

SquareCompletion complete_to_square(const std::vector<long long>& lengths) {
  const int n = static_cast<int>(lengths.size());
  if (n < 1) throw DomainError("complete_to_square: needs at least one length");
  for (long long l : lengths)
    if (l < 10LL * n - 1)
      throw PreconditionViolated("complete_to_square: lengths must be at least 10n-1");

  // odd inputs drop to even by reserving the small odds 1, 3, ...; those
  // reserved numbers are below every value the even core hands out, so they
  // can be taken back from the residual afterwards
  std::vector<std::pair<long long, int>> odds;  // (length, original index)
  std::vector<long long> core;
  std::vector<long long> reserved(n, 0);
  for (int i = 0; i < n; ++i)
    if (lengths[i] % 2 == 1) odds.push_back({lengths[i], i});
  std::sort(odds.begin(), odds.end(), std::greater<>());
  for (std::size_t i = 0; i < odds.size(); ++i) reserved[odds[i].second] = 2LL * (i + 1) - 1;
  for (int i = 0; i < n; ++i) core.push_back(lengths[i] - reserved[i]);

  SquareCompletion even_done = complete_evens_to_square(core);

  // hand the even core's paths back to owners; equal lengths are
  // interchangeable, so consume owner slots per distinct value
  std::map<long long, std::vector<int>> owner_by_len;
  for (int i = 0; i < n; ++i) owner_by_len[core[i]].push_back(i);

  std::vector<LabeledPath> paths;
  LabeledPath residual;
  residual.residual = true;
  bool have_residual = false;
  // grab the residual up front; the pull-backs below draw from it no matter
  // where it landed in the sorted forest
  if (even_done.residual_index >= 0) {
    residual.len = even_done.forest.lengths[even_done.residual_index];
    residual.set = even_done.assignment.sets[even_done.residual_index];
    have_residual = true;
  }
  for (std::size_t i = 0; i < even_done.forest.lengths.size(); ++i) {
    if (static_cast<int>(i) == even_done.residual_index) continue;
    long long l = even_done.forest.lengths[i];
    auto& owners = owner_by_len[l];
    int owner = owners.back();
    owners.pop_back();
    std::vector<long long> set = even_done.assignment.sets[i];
    if (reserved[owner] > 0) {
      long long res = reserved[owner];
      auto it = std::find(residual.set.begin(), residual.set.end(), res);
      if (it == residual.set.end())
        throw PreconditionViolated("complete_to_square: reserved odd left the residual");
      residual.set.erase(it);
      residual.len -= res;
      set.push_back(res);
      std::sort(set.begin(), set.end());
      l += res;
    }
    paths.push_back({l, std::move(set), false});
  }
  if (have_residual && residual.len > 0) paths.push_back(std::move(residual));
  return pack_completion(even_done.m, std::move(paths));
}

}  // namespace burn
