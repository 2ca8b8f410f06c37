#pragma once

#include <cstdint>
#include <vector>

#include "burn/graph.hpp"
#include "burn/simulate.hpp"

namespace burn {

enum class Verdict { Yes, No, Budget };

const char* to_string(Verdict v);

struct SolveOptions {
  std::uint64_t node_budget = 50'000'000;
  double time_budget_secs = 0.0;  // 0 disables the wall clock
  int forced_first = -1;          // when >= 0, the first source must be this vertex
  // Every listed vertex must be burned by the end of deadline_round.
  std::vector<int> deadline_vertices;
  int deadline_round = 0;
};

struct SolveResult {
  Verdict verdict = Verdict::No;
  BurningSequence witness;  // filled when verdict == Yes
  std::uint64_t nodes = 0;
};

// Exact m-burnability on any graph: searches sequences (x_1..x_k), k <= m,
// such that the balls B(x_i, m-i) cover V and d(x_i, x_j) >= j-i for i < j.
SolveResult is_m_burnable(const Graph& g, int m, const SolveOptions& opts = {});

struct BurningNumberResult {
  Verdict verdict = Verdict::No;
  int value = 0;  // on Budget: the least m not yet excluded
  BurningSequence witness;
  std::uint64_t nodes = 0;
};

BurningNumberResult burning_number(const Graph& g, const SolveOptions& opts = {});

struct FirstSourcesResult {
  Verdict verdict = Verdict::Yes;  // Budget if any start was inconclusive
  std::vector<int> vertices;       // sorted ascending
};

// All vertices that begin at least one witnessing sequence for m rounds.
FirstSourcesResult feasible_first_sources(const Graph& g, int m, const SolveOptions& opts = {});

}  // namespace burn
