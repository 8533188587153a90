#pragma once

#include <string>
#include <vector>

#include "catmouse/engine.hpp"
#include "catmouse/graph.hpp"

namespace catmouse {

// Guard metadata for one stage of the improved schedule. first_round indexes
// schedule.rounds. Rounds at first_round + even offsets are the stage's "odd"
// rounds: with the stage grid aligned to the start class, the mouse sits in
// the class opposite the centre just before those shots land.
struct StageInfo {
  std::string name;
  int first_round = 0;
  int length = 0;       // always even
  int odd_guard = -1;   // guard target on stage-odd rounds (-1: guard idles)
  int even_guard = -1;  // guard target on stage-even rounds
};

struct BigComponent {
  ForestComponent comp;       // component of t - centre with order > n/4
  int b = -1;                 // centre of the component (host-tree id)
  int attach = -1;            // unique component vertex adjacent to the centre of t
  bool centre_in_v1 = false;  // b lies in the same bipartition class as the centre
};

struct DecompositionPlan {
  int n = 0;
  int centre = -1;
  std::vector<BigComponent> big;             // ascending by smallest contained id
  std::vector<ForestComponent> small_comps;  // order <= n/4
};

// The guard/soldier schedule for the V1-variant (ClassOne + MoveThenShoot),
// plus the stage plan it was generated from. alignment_offset is 1 when a
// wait round was prepended because the centre fell in canonical class 2.
struct VariantSchedule {
  Schedule schedule;
  int declared_even_length = 0;
  int alignment_offset = 0;
  std::vector<StageInfo> stages;  // empty for the order-<=9 base case
};

// Centre decomposition into big (> n/4) and small components; requires n >= 10.
DecompositionPlan decompose(const Tree& t);

// ceil(log2 n) cats for the standard game: a guard shoots the centre every
// round while the remaining cats clean the components recursively.
Schedule basic_strategy(const Tree& t);

// ceil(log2(n)/2) cats for the V1-variant.
VariantSchedule improved_strategy(const Tree& t);

// Standard-game schedule from a variant schedule: S,S when |S| is odd;
// S, one wait round, S when |S| is even.
Schedule variant_to_standard(const VariantSchedule& vs, const Tree& t);

}  // namespace catmouse
