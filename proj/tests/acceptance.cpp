// Acceptance checklist. Each criterion prints one PASS/FAIL line; the exit
// code is the number of failures. Slow sweeps are marked with their budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <thread>
#include <set>
#include <string>
#include <vector>

#include "burn/chains.hpp"
#include "burn/double_spider.hpp"
#include "burn/errors.hpp"
#include "burn/graph.hpp"
#include "burn/path_forest.hpp"
#include "burn/simulate.hpp"
#include "burn/solver.hpp"
#include "burn/util.hpp"
#include "json.hpp"

using namespace burn;
using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;  // first failure, for the FAIL line
  std::vector<std::string> notes;

  void fail(const std::string& d) {
    if (ok) detail = d;
    ok = false;
  }
};

long long ceil_isqrt(long long v) {
  long long r = 0;
  while (r * r < v) ++r;
  return r;
}

int hw_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? static_cast<int>(n) : 1;
}

// ---- 1: path formula ----------------------------------------------------

Outcome path_formula() {
  Outcome out;
  for (long long l = 1; l <= 25; ++l) {
    auto r = burning_number(build_path(l));
    if (r.verdict != Verdict::Yes || r.value != ceil_isqrt(l)) {
      out.fail("solver b(path " + std::to_string(l) + ") = " + std::to_string(r.value));
      return out;
    }
    auto replay = simulate(build_path(l), r.witness);
    if (!replay.fully_burned || replay.rounds_elapsed != r.value)
      out.fail("witness replay mismatch at l=" + std::to_string(l));
  }
  for (long long l = 1; l <= 2000; ++l) {
    long long need = ceil_isqrt(l);
    for (int m = 1; m <= 50; ++m) {
      Verdict want = m >= need ? Verdict::Yes : Verdict::No;
      if (decide(PathForest({l}), m).verdict != want) {
        out.fail("decide((" + std::to_string(l) + ")," + std::to_string(m) + ")");
        return out;
      }
    }
  }
  return out;
}

// ---- 2: decider vs exact solver on all small forests --------------------

Outcome decider_vs_solver() {
  Outcome out;
  long long checked = 0;
  for (long long total = 1; total <= 18; ++total) {
    for (int parts = 1; parts <= total; ++parts) {
      for (const auto& lens : partitions_exact(total, parts, 1)) {
        PathForest f(lens);
        Graph g = build_path_forest(lens);
        for (int m = 1; m <= 6; ++m) {
          Verdict a = decide(f, m).verdict;
          Verdict b = is_m_burnable(g, m).verdict;
          ++checked;
          if (a != b) {
            out.fail(f.to_string() + " m=" + std::to_string(m) + ": decider " +
                     to_string(a) + ", solver " + to_string(b));
            return out;
          }
        }
      }
    }
  }
  if (checked != 1596 * 6) out.fail("expected 9576 comparisons, ran " + std::to_string(checked));
  out.notes.push_back(std::to_string(checked) + " comparisons");
  return out;
}

// ---- 3: exceptional families are never burnable at their m --------------

Outcome exceptional_members() {
  Outcome out;
  long long checked = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int m = std::max(n, 3); m <= 12; ++m) {
      for (const auto& f : exceptional_family(n, m)) {
        ++checked;
        if (exceptional_clause(f, m) == ExceptionalClause::None) {
          out.fail(f.to_string() + " not recognized at m=" + std::to_string(m));
          return out;
        }
        if (decide(f, m).verdict != Verdict::No) {
          out.fail(f.to_string() + " burnable at m=" + std::to_string(m));
          return out;
        }
      }
    }
  }
  if (checked == 0) out.fail("no members enumerated");
  out.notes.push_back(std::to_string(checked) + " members");
  return out;
}

// ---- 4: forest bound sweeps ----------------------------------------------

Outcome forest_bound_sweeps() {
  Outcome out;
  for (auto [n, lo, hi] : {std::tuple{3, 3, 8}, std::tuple{4, 4, 7}}) {
    auto rep = verify_forest_bounds(n, lo, hi, hw_jobs());
    if (!rep.violations.empty()) {
      out.fail("n=" + std::to_string(n) + ": " + std::to_string(rep.violations.size()) +
               " violations, first " + rep.violations.front().forest.to_string());
      return out;
    }
    if (rep.checked == 0) {
      out.fail("n=" + std::to_string(n) + ": nothing checked");
      return out;
    }
    out.notes.push_back("n=" + std::to_string(n) + ": " + std::to_string(rep.checked) +
                        " forests clean");
  }
  return out;
}

// ---- 5: linear-order burnability clauses ---------------------------------

Outcome linear_clauses() {
  Outcome out;
  long long checked = 0;
  for (int n = 2; n <= 8; ++n) {
    // smallest path 1, next >= 2, order <= 4n-4: n-burnable
    for (long long total = 2 * n - 1; total <= 4 * n - 4; ++total)
      for (const auto& lens : partitions_exact(total, n, 1)) {
        if (lens.back() != 1 || lens[n - 2] < 2) continue;
        ++checked;
        if (decide(PathForest(lens), n).verdict != Verdict::Yes) {
          out.fail("clause i: " + PathForest(lens).to_string() + " n=" + std::to_string(n));
          return out;
        }
      }
    // smallest 1, next exactly 3, order <= 5n-6: n-burnable
    for (long long total = 3 * n - 2; total <= 5 * n - 6; ++total)
      for (const auto& lens : partitions_exact(total, n, 1)) {
        if (lens.back() != 1 || lens[n - 2] != 3) continue;
        ++checked;
        if (decide(PathForest(lens), n).verdict != Verdict::Yes) {
          out.fail("clause ii: " + PathForest(lens).to_string() + " n=" + std::to_string(n));
          return out;
        }
      }
    // all paths >= 3, order <= 5n-1: (n+1)-burnable
    for (long long total = 3 * n; total <= 5 * n - 1; ++total)
      for (const auto& lens : partitions_exact(total, n, 3)) {
        ++checked;
        if (decide(PathForest(lens), n + 1).verdict != Verdict::Yes) {
          out.fail("clause iii: " + PathForest(lens).to_string() + " n=" + std::to_string(n));
          return out;
        }
      }
  }
  if (checked == 0) out.fail("no instances enumerated");
  out.notes.push_back(std::to_string(checked) + " instances");
  return out;
}

// ---- 6: double spider sweeps ---------------------------------------------

Outcome double_spider_sweeps() {
  Outcome out;
  for (auto [m, n] : {std::pair{4, 2}, {4, 3}, {5, 2}, {5, 3}, {5, 4}}) {
    auto rep = verify_double_spiders(m, n, false, 0, 1, hw_jobs());
    if (!rep.violations.empty()) {
      out.fail("(" + std::to_string(m) + "," + std::to_string(n) + "): " +
               rep.violations.front().ds.to_string() + ": " + rep.violations.front().reason);
      return out;
    }
    if (rep.checked == 0) {
      out.fail("(" + std::to_string(m) + "," + std::to_string(n) + "): nothing checked");
      return out;
    }
    out.notes.push_back("(" + std::to_string(m) + "," + std::to_string(n) + "): " +
                        std::to_string(rep.checked) + " exhaustive");
  }
  auto rep = verify_double_spiders(6, 5, true, 1000, 1, hw_jobs());
  if (!rep.violations.empty())
    out.fail("(6,5) sampled: " + rep.violations.front().ds.to_string() + ": " +
             rep.violations.front().reason);
  else if (rep.checked != 1000)
    out.fail("(6,5) sampled: drew " + std::to_string(rep.checked) + " of 1000");
  else
    out.notes.push_back("(6,5): 1000 sampled");
  return out;
}

// ---- 7: hard subspiders are unburnable ------------------------------------

Outcome hard_obstruction() {
  Outcome out;
  DoubleSpider tight({3, 3}, {3});
  if (!has_hard_subspider(tight, 3) || is_m_burnable(to_graph(tight), 3).verdict != Verdict::No) {
    out.fail("3,3/3 should be a hard non-burnable instance at m=3");
    return out;
  }
  long long hard_count = 0;
  for (long long order = 4; order <= 20; ++order) {
    for (int arms = 2; arms <= order - 2; ++arms) {
      for (const auto& ds : enumerate_double_spiders(order, arms)) {
        for (int m = 2; m <= std::min(4, arms); ++m) {
          if (!has_hard_subspider(ds, m)) continue;
          ++hard_count;
          if (is_m_burnable(to_graph(ds), m).verdict != Verdict::No) {
            out.fail(ds.to_string() + " hard at m=" + std::to_string(m) + " yet burnable");
            return out;
          }
        }
      }
    }
  }
  if (hard_count == 0) out.fail("no hard instances found up to order 20");
  out.notes.push_back(std::to_string(hard_count) + " hard instances all unburnable");
  return out;
}

// ---- 8: the 5,5,6 spider --------------------------------------------------

Outcome spider_556() {
  Outcome out;
  Graph g = build_spider({5, 5, 6});
  auto bn = burning_number(g);
  if (bn.verdict != Verdict::Yes || bn.value != 4) {
    out.fail("burning number " + std::to_string(bn.value));
    return out;
  }
  auto firsts = feasible_first_sources(g, 4);
  if (firsts.verdict != Verdict::Yes) {
    out.fail("first-source scan hit a budget");
    return out;
  }
  // head 0; length-5 arms are 1..5 and 6..10; the length-6 arm is 11..16.
  // Every optimal sequence starts on a length-5 arm, but at either of its
  // first two vertices, not only the one adjacent to the head.
  if (firsts.vertices != std::vector<int>{1, 2, 6, 7}) {
    std::string got;
    for (int v : firsts.vertices) got += std::to_string(v) + " ";
    out.fail("first sources: " + got);
    return out;
  }
  if (!burns_within(g, BurningSequence{{2, 14, 8, 10}}, 4)) {
    out.fail("(2,14,8,10) should burn in 4 rounds");
    return out;
  }
  for (int v : {0, 3, 11, 16}) {
    SolveOptions opts;
    opts.forced_first = v;
    if (is_m_burnable(g, 4, opts).verdict != Verdict::No) {
      out.fail("a 4-round sequence may not start at " + std::to_string(v));
      return out;
    }
  }
  out.notes.push_back("optimal first sources {1,2,6,7}: first two vertices of each");
  out.notes.push_back("length-5 arm, so head-adjacent starts are not the only ones;");
  out.notes.push_back("(2,14,8,10) is an optimal sequence starting one step in");
  return out;
}

// ---- 9: length thresholds -------------------------------------------------

Outcome length_thresholds() {
  Outcome out;
  const long long want[] = {0, 0, 3, 18, 26};
  for (int n = 2; n <= 4; ++n) {
    ChainBudgets budgets;
    budgets.time_budget_secs = 7200;  // wall-clock cap, far above observed need
    auto r = compute_threshold(n, budgets);
    if (r.status != CertifyStatus::Certified) {
      out.fail("n=" + std::to_string(n) + ": " + to_string(r.status) + " at " + r.frontier);
      return out;
    }
    if (r.value != want[n]) {
      out.fail("n=" + std::to_string(n) + ": threshold " + std::to_string(r.value));
      return out;
    }
    if (!r.witness_below) {
      out.fail("n=" + std::to_string(n) + ": no witness below the threshold");
      return out;
    }
    const auto& w = *r.witness_below;
    long long shortest = w.forest.lengths.back();
    if (shortest != r.value - 1 || decide(w.forest, w.m).verdict != Verdict::No) {
      out.fail("n=" + std::to_string(n) + ": witness " + w.forest.to_string() +
               " is not a deficient member at " + std::to_string(r.value - 1));
      return out;
    }
    json evidence{{"n", n},
                  {"L", r.value},
                  {"threshold_m", r.certified.threshold_m},
                  {"max_m_reached", r.certified.max_m_reached},
                  {"verdict", to_string(r.status)},
                  {"witness_below", w.forest.to_string()},
                  {"seeds", json::array()},
                  {"tree_sizes", r.certified.tree_sizes}};
    for (const auto& s : r.certified.seeds) evidence["seeds"].push_back(s.forest.to_string());
    std::string path = "ln_evidence_n" + std::to_string(n) + ".json";
    {
      std::ofstream f(path);
      f << evidence.dump(2) << "\n";
      if (!f) {
        out.fail("cannot write " + path);
        return out;
      }
    }
    std::ifstream back(path);
    json parsed = json::parse(back);
    if (parsed["verdict"] != "certified" || parsed["L"] != r.value) {
      out.fail(path + " does not round-trip");
      return out;
    }
    out.notes.push_back("L(" + std::to_string(n) + ") = " + std::to_string(r.value) +
                        ", evidence in " + path);
  }
  return out;
}

// ---- 10: the growth tree of 17,15,4 ---------------------------------------

const ExtensionNode* child_named(const ExtensionNode& node, const std::string& name) {
  for (const auto& c : node.children)
    if (c.forest.forest.to_string() == name) return &c;
  return nullptr;
}

Outcome growth_tree() {
  Outcome out;
  SquareForest root{PathForest({17, 15, 4})};
  if (root.m != 6 || decide(root.forest, 6).verdict != Verdict::No) {
    out.fail("17,15,4 should be deficient at m=6");
    return out;
  }
  auto tree = expand_extension_tree(root);
  if (!tree.all_leaves_closed() || tree.subtree_size() != 7) {
    out.fail("tree size " + std::to_string(tree.subtree_size()) +
             (tree.all_leaves_closed() ? "" : ", open leaves"));
    return out;
  }
  // the three maximal growth chains, root to leaf
  const std::vector<std::vector<std::string>> chains = {
      {"17,17,15", "30,17,17"},
      {"28,17,4", "43,17,4"},
      {"30,15,4", "30,30,4"},
  };
  for (const auto& chain : chains) {
    const ExtensionNode* at = &tree;
    for (const auto& name : chain) {
      at = child_named(*at, name);
      if (!at) {
        out.fail("chain link " + name + " missing");
        return out;
      }
    }
    if (!at->children.empty() || at->status != NodeStatus::Closed) {
      out.fail(chain.back() + " should be a closed leaf");
      return out;
    }
  }
  if (tree.children.size() != 3) {
    out.fail("root has " + std::to_string(tree.children.size()) + " children");
    return out;
  }
  out.notes.push_back("7 nodes, 3 maximal chains, every leaf closed");
  return out;
}

// ---- 11: constructive machinery on seeded random inputs -------------------

Outcome seeded_constructions() {
  Outcome out;

  // square completions
  Rng comp_rng(2026);
  for (int iter = 0; iter < 500; ++iter) {
    int n = 1 + static_cast<int>(comp_rng.below(3));
    std::vector<long long> lens(n);
    for (auto& l : lens) l = 10 * n - 1 + static_cast<long long>(comp_rng.below(61));
    SquareCompletion c = complete_to_square(lens);
    const std::string tag = "completion " + std::to_string(iter);
    if (c.forest.order() != 1LL * c.m * c.m) {
      out.fail(tag + ": order is not m^2");
      return out;
    }
    std::string why;
    if (!assignment_valid(c.forest, c.assignment, &why)) {
      out.fail(tag + ": " + why);
      return out;
    }
    std::vector<long long> pool = c.forest.lengths;
    for (long long l : lens) {
      auto it = std::find(pool.begin(), pool.end(), l);
      if (it == pool.end()) {
        out.fail(tag + ": input " + std::to_string(l) + " missing from the forest");
        return out;
      }
      pool.erase(it);
    }
    if (decide(c.forest, c.m).verdict != Verdict::Yes) {
      out.fail(tag + ": decider rejects the completed forest");
      return out;
    }
  }

  // odd exchanges across residue splits
  Rng ex_rng(515253);
  int spot_checked = 0;
  for (int iter = 0; iter < 500; ++iter) {
    int n = 2 + static_cast<int>(ex_rng.below(4));
    std::vector<int> residues(n);
    std::iota(residues.begin(), residues.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(residues[i], residues[static_cast<int>(ex_rng.below(i + 1))]);
    std::vector<OddSequence> seqs;
    seqs.reserve(n);
    for (int r : residues) seqs.push_back(OddSequence::arithmetic(2 * r + 1, 2 * n));
    std::vector<long long> xs(n, 0);
    for (int i = 0; i + 1 < n; ++i) {
      xs[i] = static_cast<long long>(ex_rng.below(61)) - 30;
      xs[n - 1] -= xs[i];
    }
    const std::string tag = "exchange " + std::to_string(iter);
    ExchangePartition p;
    try {
      p = exchange_partition_multi(seqs, xs, 131072);
    } catch (const GuardExhausted& e) {
      out.fail(tag + ": " + e.what());
      return out;
    }
    std::string why;
    if (!exchange_valid(seqs, p, &why)) {
      out.fail(tag + ": " + why);
      return out;
    }
    // the parts tile a run of odd numbers from 1, so they certify the
    // forest of part sums at m = (largest odd + 1) / 2
    long long max_odd = 0;
    std::vector<std::pair<long long, std::vector<long long>>> sized;
    for (const auto& part : p.parts) {
      if (part.empty()) continue;
      long long sum = 0;
      for (long long v : part) {
        sum += v;
        max_odd = std::max(max_odd, v);
      }
      sized.push_back({sum, part});
    }
    if (sized.empty()) continue;  // zero offsets may settle with empty prefixes
    std::sort(sized.begin(), sized.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    long long m = (max_odd + 1) / 2;
    std::vector<long long> lens;
    RadiiAssignment a;
    a.m = static_cast<int>(m);
    for (auto& [sum, part] : sized) {
      lens.push_back(sum);
      a.sets.push_back(part);
    }
    PathForest f(lens);
    if (f.order() != m * m) {
      out.fail(tag + ": part sums total " + std::to_string(f.order()) + ", want m^2");
      return out;
    }
    if (!assignment_valid(f, a, &why)) {
      out.fail(tag + ": " + why);
      return out;
    }
    if (m <= 2000) {
      ++spot_checked;
      if (decide(f, static_cast<int>(m)).verdict != Verdict::Yes) {
        out.fail(tag + ": decider rejects the part-sum forest");
        return out;
      }
    } else {
      DecideOptions o;
      o.node_budget = 5'000'000;
      Verdict v = decide(f, static_cast<int>(m), o).verdict;
      if (v == Verdict::No) {
        out.fail(tag + ": decider refutes the part-sum forest at m=" + std::to_string(m));
        return out;
      }
      if (v == Verdict::Yes) ++spot_checked;
    }
  }
  out.notes.push_back("500 completions and 500 exchanges verified; " +
                      std::to_string(spot_checked) + " exchange forests re-decided");
  return out;
}

}  // namespace

int main() {
  setbuf(stdout, nullptr);
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"path burning formula", path_formula},
      {"decider agrees with the exact solver", decider_vs_solver},
      {"exceptional families stay unburnable", exceptional_members},
      {"forest bound sweeps clean", forest_bound_sweeps},
      {"linear-order clauses hold", linear_clauses},
      {"double spider sweeps clean", double_spider_sweeps},
      {"hard subspiders block burning", hard_obstruction},
      {"spider 5,5,6 optimal starts", spider_556},
      {"length thresholds certified", length_thresholds},
      {"growth tree of 17,15,4", growth_tree},
      {"seeded constructions verified", seeded_constructions},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("unexpected exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (o.ok) {
      std::printf("PASS %2d  %-42s %6lld ms\n", idx, c.name, static_cast<long long>(ms));
    } else {
      std::printf("FAIL %2d  %-42s %6lld ms\n         %s\n", idx, c.name,
                  static_cast<long long>(ms), o.detail.c_str());
      ++failures;
    }
    for (const auto& note : o.notes) std::printf("         %s\n", note.c_str());
  }
  if (failures == 0)
    std::printf("acceptance: all %d criteria passed\n", idx);
  else
    std::printf("acceptance: %d of %d criteria FAILED\n", failures, idx);
  return failures;
}
