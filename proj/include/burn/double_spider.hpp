#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "burn/graph.hpp"
#include "burn/simulate.hpp"
#include "burn/solver.hpp"

namespace burn {

// Two adjacent heads, each with disjoint paths (arms) hanging off it.
// Degenerate head loads (0 or 1 arm on a side) are allowed; those shapes are
// paths and spiders.
struct DoubleSpider {
  std::vector<int> arms_a, arms_b;  // arm lengths, each >= 1, sorted descending

  DoubleSpider() = default;
  DoubleSpider(std::vector<int> a, std::vector<int> b);

  int arm_count() const;
  long long order() const;   // arms + 2 heads
  int shortest_arm() const;  // 0 when there are no arms
  std::string to_string() const;  // "5,5/6"

  bool operator==(const DoubleSpider&) const = default;
  bool operator<(const DoubleSpider& o) const {
    return std::pair(arms_a, arms_b) < std::pair(o.arms_a, o.arms_b);
  }
};

DoubleSpider parse_double_spider(const std::string& s);  // "5,5/6"

// Head A = 0, head B = 1, arms of A then arms of B, head side first.
Graph to_graph(const DoubleSpider& ds);

// True iff some m of the arms have tips pairwise at distance >= 2m
// (same head: l_i + l_j, across heads: l_i + l_j + 1). Hosting such a
// subdivision rules out m-burnability. Requires m >= 2 and at least m arms.
bool has_hard_subspider(const DoubleSpider& ds, int m);

enum class SpiderRoute {
  BigOrderExact,       // order above every known bound; solver decides
  OrderBoundFewArms,   // arm_count < m: burnable by the order bound
  OrderBoundManyArms,  // arm_count >= m >= 3, no hard subspider: burnable
  HardObstruction,     // hard subspider present: not burnable
  Exact,               // no theorem applies; solver decides
};

const char* to_string(SpiderRoute r);

struct SpiderOptions {
  std::uint64_t node_budget = 50'000'000;
  std::uint64_t witness_budget = 4'000'000;  // extra effort for optional witnesses
  bool want_witness = false;
};

struct SpiderDecision {
  Verdict verdict = Verdict::No;
  SpiderRoute route = SpiderRoute::Exact;
  std::optional<BurningSequence> witness;  // on Yes, when requested and found
  std::uint64_t nodes = 0;
};

// m-burnability of a double spider. Instances the structure theorems cover
// are answered without search; the rest go to the exact solver.
// Requires m >= 2. Witnesses on theorem routes are best effort within
// witness_budget; the verdict itself never depends on finding one.
SpiderDecision decide_double_spider(const DoubleSpider& ds, int m, const SpiderOptions& opts = {});

enum class WitnessStatus { Found, NoneExists, Budget };

const char* to_string(WitnessStatus s);

struct HeadDeadlineWitness {
  WitnessStatus status = WitnessStatus::NoneExists;
  BurningSequence seq;
  int heads_burned_by = 0;  // round by which both heads are burned
  int deadline = 0;         // the bound heads_burned_by had to meet
};

// A witness with both heads burned early: by round m - min(l, m-2) when
// arm_count <= 2, by round m - min(l, m-3) otherwise, where l is the
// shortest arm. Defined for arm_count < m and order <= m^2 + arm_count - 2.
HeadDeadlineWitness head_deadline_witness(const DoubleSpider& ds, int m, const SpiderOptions& opts = {});

struct SpiderViolation {
  DoubleSpider ds;
  std::string reason;
};

struct DoubleSpiderReport {
  int m = 0, n = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  long long checked = 0;
  std::vector<SpiderViolation> violations;
};

// Sweeps n-arm double spiders of order m^2 + n - 2. For n < m every
// instance must be m-burnable with a head-deadline witness; for n >= m >= 3
// instances must be m-burnable exactly when no hard subspider exists.
// sampled = true draws sample_count instances from the seeded generator
// instead of the full enumeration.
DoubleSpiderReport verify_double_spiders(int m, int n, bool sampled = false,
                                         long long sample_count = 0,
                                         std::uint64_t seed = 1, int jobs = 1);

// All n-arm double spiders with the given order, arms sorted descending on
// each side, (A,B) and (B,A) identified. Sorted, deduplicated.
std::vector<DoubleSpider> enumerate_double_spiders(long long order, int n);

// One uniform-ish random instance from the seeded generator.
DoubleSpider random_double_spider(long long order, int n, std::uint64_t seed);

}  // namespace burn
