#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "burn/path_forest.hpp"

namespace burn {

// A path forest whose order is a perfect square m^2. The natural habitat of
// deficiency: a square-order forest is deficient iff not m-burnable.
struct SquareForest {
  PathForest forest;
  int m = 0;

  SquareForest() = default;
  explicit SquareForest(PathForest f);  // throws NotSquareOrder

  bool operator==(const SquareForest&) const = default;
  bool operator<(const SquareForest& o) const {
    return std::pair(m, forest.lengths) < std::pair(o.m, o.forest.lengths);
  }
};

// Append-only store of decide() verdicts keyed by (lengths, m). With a path,
// existing records are loaded up front and every new record is appended;
// thread safe. Line format: "n;m;l1,l2,...;burnable|deficient".
class DeficiencyCache {
 public:
  DeficiencyCache() = default;
  explicit DeficiencyCache(std::string path);

  std::optional<bool> lookup(const std::vector<long long>& lengths, int m) const;
  void record(const std::vector<long long>& lengths, int m, bool burnable);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::string path_;
  std::map<std::pair<std::vector<long long>, int>, bool> map_;
};

// Cached decide(); cache may be null. nullopt when the node budget ran out
// before a verdict (never cached).
std::optional<bool> is_burnable_cached(const PathForest& t, int m, DeficiencyCache* cache,
                                       std::uint64_t node_budget);

struct ChainBudgets {
  std::uint64_t node_budget = 200'000'000;  // per decide() call
  int m_budget = 64;           // nodes at m >= m_budget are not expanded
  long long tree_node_budget = 200'000;
  double time_budget_secs = 0.0;
};

// The square-order extension order: a child grows exactly one component by
// 2m+1 (so the child has order (m+1)^2) and must itself be deficient.
// Children are deduplicated as multisets and sorted.
// Throws PreconditionViolated when sf is not deficient. When complete is
// given, it is set to false if some candidate's verdict ran out of budget,
// in which case the returned children may be an undercount.
std::vector<SquareForest> extension_children(const SquareForest& sf,
                                             DeficiencyCache* cache = nullptr,
                                             const ChainBudgets& budgets = {},
                                             bool* complete = nullptr);

enum class NodeStatus {
  Expanded,   // children computed and attached
  Closed,     // deficient leaf: provably no deficient child
  OpenBudget, // expansion stopped by a budget
};

const char* to_string(NodeStatus s);

struct ExtensionNode {
  SquareForest forest;
  NodeStatus status = NodeStatus::Closed;
  std::vector<ExtensionNode> children;

  long long subtree_size() const;
  bool all_leaves_closed() const;
};

// Breadth-first expansion from a deficient root.
ExtensionNode expand_extension_tree(const SquareForest& root,
                                    const ChainBudgets& budgets = {},
                                    DeficiencyCache* cache = nullptr);

// Deficient n-component forests of order m^2, every component >= min_len,
// for m in [m_lo, m_hi]. found is sorted; complete is false when a verdict
// ran out of budget (frontier says where).
struct DeficientScan {
  std::vector<SquareForest> found;
  bool complete = true;
  std::string frontier;
};

DeficientScan enumerate_deficient(int n, long long min_len, int m_lo, int m_hi,
                                  DeficiencyCache* cache = nullptr,
                                  const ChainBudgets& budgets = {});

enum class CertifyStatus { Certified, Counterexample, Inconclusive };

const char* to_string(CertifyStatus s);

struct CertifyResult {
  CertifyStatus status = CertifyStatus::Inconclusive;
  int n = 0;
  long long min_len = 0;  // the candidate threshold
  int m_min = 0;          // least m with m^2 >= n*min_len
  int threshold_m = 0;    // last m whose square forests need direct checking
  int max_m_reached = 0;
  std::vector<SquareForest> seeds;       // deficient members found in the window
  std::vector<long long> tree_sizes;     // extension tree size per seed
  std::optional<SquareForest> counterexample;
  std::string frontier;  // where a budget ran out, when Inconclusive
};

// Decides whether every n-path forest with all components >= min_len and
// square order is burnable. Any deficient member of order m^2 with
// m > threshold_m shrinks (largest component minus 2m-1) to a deficient
// member of order (m-1)^2 still within the family, so checking the finite
// window [m_min, threshold_m] settles the question.
CertifyResult certify_threshold(int n, long long min_len, const ChainBudgets& budgets = {},
                                DeficiencyCache* cache = nullptr);

struct ThresholdResult {
  CertifyStatus status = CertifyStatus::Inconclusive;
  long long value = 0;  // least min_len that certifies
  std::optional<SquareForest> witness_below;  // deficient member at value-1
  CertifyResult certified;                    // the evidence at value
  std::string frontier;
};

// Least L such that certify_threshold(n, L) certifies, by linear scan.
ThresholdResult compute_threshold(int n, const ChainBudgets& budgets = {},
                                  DeficiencyCache* cache = nullptr);

// ---- odd-number exchange machinery ----

// Strictly increasing positive odd integers, 1-based evaluation.
struct OddSequence {
  std::function<long long(long long)> at;

  static OddSequence arithmetic(long long first, long long step);  // step even, first odd
  static OddSequence from_values(std::vector<long long> vals);
  std::vector<long long> prefix(long long count) const;
};

// parts[j] holds sum(prefix of seqs[j], prefix_len[j]) + offsets[j]; the
// parts are pairwise disjoint and their union is exactly the union of the
// prefixes.
struct ExchangePartition {
  std::vector<long long> prefix_len;
  std::vector<std::vector<long long>> parts;
  std::vector<long long> offsets;
};

bool exchange_valid(const std::vector<OddSequence>& seqs, const ExchangePartition& p,
                    std::string* why = nullptr);

// Two disjoint sequences; the first part's sum moves by x (even when the
// prefix parity allows, fixed up by borrowing head terms otherwise).
// guard bounds how far into either sequence the scan may look.
ExchangePartition exchange_partition_two(const OddSequence& a, const OddSequence& b,
                                         long long x, long long guard = 4096);

// n sequences, pairwise disjoint unions, offsets summing to zero. The used
// prefixes are extended so their union is a run of consecutive odd numbers;
// extension terms join the part of the sequence that owns them.
ExchangePartition exchange_partition_multi(const std::vector<OddSequence>& seqs,
                                           const std::vector<long long>& xs,
                                           long long guard = 4096);

// ---- constructive burnable completions ----

struct SquareCompletion {
  int m = 0;
  PathForest forest;  // inputs plus the residual path
  RadiiAssignment assignment;  // indexed like forest.lengths
  int residual_index = -1;     // position of the residual path, -1 if none
};

// Even lengths, each >= 8n: gives every input path exactly two odd coverage
// numbers summing to its length and hands every remaining odd below 2m to a
// residual path, reaching order m^2 exactly.
SquareCompletion complete_evens_to_square(const std::vector<long long>& evens);

// Lengths >= 10n-1 of any parity: odd inputs are shifted down to even by
// reserving a small odd number each, the even core is completed, and the
// reserved odds move from the residual to their paths.
SquareCompletion complete_to_square(const std::vector<long long>& lengths);

}  // namespace burn
