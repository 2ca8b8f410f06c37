#pragma once

#include <optional>
#include <vector>

#include "burn/graph.hpp"

namespace burn {

inline constexpr int kNeverBurned = -1;

// sources[t-1] is placed at the start of round t, before that round's spread.
struct BurningSequence {
  std::vector<int> sources;
};

struct BurnOutcome {
  bool fully_burned = false;
  // Round in which the last vertex burned; kNeverBurned while any remain.
  int rounds_elapsed = kNeverBurned;
  std::vector<int> burned_at;  // per vertex; kNeverBurned if untouched
  // Round whose placement landed on an already burned vertex, if any.
  // The process stops there; nothing later is applied.
  std::optional<int> invalid_placement;
};

// Runs the burning process. In round t the source (if the sequence still has
// one) is placed, then every unburned neighbor of a vertex burned in a prior
// round burns. Spreading continues after the sequence is exhausted until
// either everything is burned or the fire stops growing.
BurnOutcome simulate(const Graph& g, const BurningSequence& seq);

// True iff seq burns g completely within m rounds with no invalid placement
// and at most m sources.
bool burns_within(const Graph& g, const BurningSequence& seq, int m);

}  // namespace burn
