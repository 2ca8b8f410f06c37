#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "burn/simulate.hpp"
#include "burn/solver.hpp"

namespace burn {

// Disjoint union of paths. Lengths are path orders (vertex counts), kept
// sorted descending, every entry >= 1.
struct PathForest {
  std::vector<long long> lengths;

  PathForest() = default;
  explicit PathForest(std::vector<long long> ls);

  long long order() const;
  int size() const { return static_cast<int>(lengths.size()); }
  long long shortest() const;
  std::string to_string() const;  // "17,15,4"

  bool operator==(const PathForest&) const = default;
  bool operator<(const PathForest& o) const { return lengths < o.lengths; }
};

PathForest parse_forest(const std::string& s);  // "17,15,4"

// Burning number of the path on `order` vertices.
long long path_burning_number(long long order);

// Number of order-2 components when the shortest component has order 2,
// else 0.
int t_value(const PathForest& t);

// The known families of forests that sit at the refined order bound yet are
// not m-burnable.
enum class ExceptionalClause { None, I, II, III };

const char* to_string(ExceptionalClause c);

// Which family t belongs to for this m, if any. Meaningful for m >= n >= 2;
// II and III require m > n.
ExceptionalClause exceptional_clause(const PathForest& t, int m);

// Every member for the given n and m, deduplicated, sorted.
std::vector<PathForest> exceptional_family(int n, int m);

// Coverage certificate: sets[i] is the set of odd numbers 2r+1 for the radii
// r used on path i. Pairwise disjoint subsets of {1,3,...,2m-1} with
// sum(sets[i]) >= lengths[i].
struct RadiiAssignment {
  int m = 0;
  std::vector<std::vector<long long>> sets;
};

bool assignment_valid(const PathForest& t, const RadiiAssignment& a, std::string* why = nullptr);

struct PartitionDecision {
  Verdict verdict = Verdict::No;
  std::optional<RadiiAssignment> assignment;  // present on Yes
  std::uint64_t nodes = 0;
};

struct DecideOptions {
  std::uint64_t node_budget = 100'000'000;
};

// Exact m-burnability of a path forest, via search over odd coverage
// assignments. Requires m >= 1.
PartitionDecision decide(const PathForest& t, int m, const DecideOptions& opts = {});

// Turns a coverage certificate into source positions on
// build_path_forest(t.lengths); the result replays under simulate.
BurningSequence assignment_to_sequence(const PathForest& t, const RadiiAssignment& a);

// Sufficient conditions with closed-form order bounds. Each names the bound
// it applies; predictions never contradict decide.
enum class ForestRule {
  LinearSingleton3n2,  // order <= 3n-2, shortest = 1: n-burnable
  LinearSingleton4n4,  // order <= 4n-4, shortest = 1, next shortest >= 2: n-burnable
  LinearSingleton5n6,  // order <= 5n-6, shortest = 1, next shortest = 3: n-burnable
  LinearMin3_5n1,      // order <= 5n-1, shortest >= 3: (n+1)-burnable
  QuadraticBound,      // order <= m^2-(n-1)^2+1, one family excepted
  ThreePathsRefined,   // n = 3, order <= m^2-1-t
  RefinedBound,        // order <= m^2-(n-1)(n-2)+1-t
};

const char* to_string(ForestRule r);

// The first rule that promises m-burnability of t, if any.
std::optional<ForestRule> theorem_predict(const PathForest& t, int m);

struct BoundViolation {
  PathForest forest;
  int m = 0;
  bool predicted_burnable = false;
  bool actually_burnable = false;
};

struct ForestBoundsReport {
  int n = 0;
  int m_lo = 0, m_hi = 0;
  long long checked = 0;
  std::vector<BoundViolation> violations;
};

// For each m in [m_lo, m_hi], enumerates every n-path forest with order
// within the refined bound and checks decide() against the prediction
// (burnable unless the order bound rules it out or it is exceptional).
ForestBoundsReport verify_forest_bounds(int n, int m_lo, int m_hi, int jobs = 1);

// Nonincreasing lists of exactly n values >= lo summing to total.
std::vector<std::vector<long long>> partitions_exact(long long total, int n, long long lo);

}  // namespace burn
