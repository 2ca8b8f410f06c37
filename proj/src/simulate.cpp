#include "burn/simulate.hpp"

#include "burn/errors.hpp"

namespace burn {

BurnOutcome simulate(const Graph& g, const BurningSequence& seq) {
  for (int s : seq.sources)
    if (s < 0 || s >= g.n) throw DomainError("simulate: source out of range");

  BurnOutcome out;
  out.burned_at.assign(g.n, kNeverBurned);
  int burned = 0;
  std::vector<int> frontier, next;

  for (int t = 1; burned < g.n; ++t) {
    bool placed = false;
    if (t <= static_cast<int>(seq.sources.size())) {
      int s = seq.sources[t - 1];
      if (out.burned_at[s] != kNeverBurned) {
        out.invalid_placement = t;
        return out;
      }
      out.burned_at[s] = t;
      ++burned;
      placed = true;
      // The new source spreads starting next round.
    }
    next.clear();
    for (int u : frontier)
      for (int w : g.adj[u])
        if (out.burned_at[w] == kNeverBurned) {
          out.burned_at[w] = t;
          ++burned;
          next.push_back(w);
        }
    if (placed) next.push_back(seq.sources[t - 1]);
    frontier.swap(next);
    if (burned == g.n) {
      out.fully_burned = true;
      out.rounds_elapsed = t;
      return out;
    }
    if (frontier.empty() && t >= static_cast<int>(seq.sources.size())) return out;
  }
  // Only reachable for the empty graph.
  out.fully_burned = true;
  out.rounds_elapsed = 0;
  return out;
}

bool burns_within(const Graph& g, const BurningSequence& seq, int m) {
  if (static_cast<int>(seq.sources.size()) > m) return false;
  BurnOutcome out = simulate(g, seq);
  return out.fully_burned && !out.invalid_placement && out.rounds_elapsed <= m;
}

}  // namespace burn
