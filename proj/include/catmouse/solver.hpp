#pragma once

#include <cstdint>
#include <vector>

#include "catmouse/engine.hpp"
#include "catmouse/graph.hpp"

namespace catmouse {

struct SolverOptions {
  int max_cats = 3;
  Convention convention = Convention::MoveThenShoot;
  bool parallel = true;            // layer-parallel frontier expansion
  bool subset_dominance = false;   // skip states with a visited subset (answers unchanged)
  int capacity_n = 24;             // subset-search size guard
};

struct WinSearch {
  bool win = false;
  Schedule witness;                // shortest, deterministic; valid when win
  std::uint64_t explored = 0;      // distinct states discovered
};

struct RoundOutcome {
  int r = 0;
  bool win = false;
  std::uint64_t explored = 0;
};

struct SolveResult {
  int n = 0;
  bool solved = false;
  int h = -1;
  Schedule witness;
  std::vector<RoundOutcome> per_r;
};

// Shot sets that can change the successor of position set a (as a bit mask):
// subsets of N(a) of size <= r under MoveThenShoot, subsets of a under
// ShootThenMove. Emitted in ascending prefix order (lexicographic on the
// sorted vertex sequences), starting with the empty set.
std::vector<std::uint32_t> pruned_shots(std::uint32_t a_mask, const Tree& t, int r,
                                        Convention conv);

// Breadth-first reachability of the empty set from an arbitrary start set.
WinSearch cats_win_from(const Tree& t, std::uint32_t start_mask, int r,
                        const SolverOptions& opt = {});

// Standard game: start from all vertices.
WinSearch cats_win(const Tree& t, int r, const SolverOptions& opt = {});

// h(T): least r with cats_win true, trying r = 1..max_cats.
SolveResult hunter_number(const Tree& t, const SolverOptions& opt = {});

}  // namespace catmouse
