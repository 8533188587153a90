#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catmouse/strategy.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "catmouse/graph.hpp"
#include "catmouse/solver.hpp"

using namespace catmouse;

namespace {

int ceil_log2(int n) {
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

// Cat budget the improved strategy must respect: ceil(ceil_log2(n) / 2),
// floored at one cat so the one-vertex tree still gets a shooter.
int improved_budget(int n) { return std::max(1, (ceil_log2(n) + 1) / 2); }

int basic_budget(int n) { return std::max(1, ceil_log2(n)); }

const GameSemantics kStandard{Convention::MoveThenShoot, InitialDomain::AllVertices};
const GameSemantics kVariant{Convention::MoveThenShoot, InitialDomain::ClassOne};

bool certified_standard(const Tree& t, const Schedule& s) {
  return verify_winning(t, s, kStandard);
}

bool certified_variant(const Tree& t, const Schedule& s) {
  return verify_winning(t, s, kVariant);
}

int max_shot_size(const Schedule& s) {
  int m = 0;
  for (const auto& round : s.rounds) m = std::max<int>(m, round.size());
  return m;
}

// Structural invariants of the stage plan: even lengths, grid alignment,
// contiguous tiling of the core rounds, guard shots present with the right
// bipartition class for their parity slot.
void check_stage_plan(const Tree& t, const VariantSchedule& vs) {
  const int len = static_cast<int>(vs.schedule.rounds.size());
  CHECK(vs.declared_even_length == len);
  CHECK(len % 2 == 0);
  const int off = vs.alignment_offset;
  CHECK((off == 0 || off == 1));
  if (t.n() <= 9) {
    CHECK(vs.stages.empty());
    return;
  }
  REQUIRE(!vs.stages.empty());
  const Bipartition bip = bipartition(t);
  // Stage-odd rounds land while the mouse set sits in canonical class 2, so
  // an odd guard must target class 2 when no wait round was prepended and
  // class 1 when one was.
  const int odd_class = off == 0 ? 2 : 1;
  const int even_class = off == 0 ? 1 : 2;
  int cursor = off;
  for (const StageInfo& st : vs.stages) {
    CHECK(st.first_round == cursor);
    CHECK(st.length > 0);
    CHECK(st.length % 2 == 0);
    CHECK((st.first_round - off) % 2 == 0);
    CHECK(!st.name.empty());
    if (st.odd_guard >= 0) CHECK(bip.side[st.odd_guard] == odd_class);
    if (st.even_guard >= 0) CHECK(bip.side[st.even_guard] == even_class);
    for (int i = st.first_round; i < st.first_round + st.length; ++i) {
      REQUIRE(i < len);
      const int g = ((i - st.first_round) % 2 == 0) ? st.odd_guard : st.even_guard;
      if (g >= 0) {
        const auto& round = vs.schedule.rounds[i];
        CHECK(std::find(round.begin(), round.end(), g) != round.end());
      }
    }
    cursor += st.length;
  }
  // Stages tile everything except the alignment rounds.
  CHECK(cursor == len - off);
}

void check_improved_tree(const Tree& t) {
  const VariantSchedule vs = improved_strategy(t);
  CHECK(vs.schedule.r <= improved_budget(t.n()));
  CHECK(max_shot_size(vs.schedule) <= vs.schedule.r);
  CHECK(certified_variant(t, vs.schedule));
  check_stage_plan(t, vs);
  const Schedule std_sched = variant_to_standard(vs, t);
  const std::size_t vlen = vs.schedule.rounds.size();
  if (vlen % 2 == 1) {
    CHECK(std_sched.rounds.size() == 2 * vlen);
  } else {
    CHECK(std_sched.rounds.size() == 2 * vlen + 1);
  }
  CHECK(std_sched.r == vs.schedule.r);
  CHECK(certified_standard(t, std_sched));
}

int stage_count(const VariantSchedule& vs, const std::string& prefix) {
  int c = 0;
  for (const StageInfo& st : vs.stages)
    if (st.name.rfind(prefix, 0) == 0) ++c;
  return c;
}

}  // namespace

TEST_CASE("basic strategy examples") {
  // One vertex: a single cat shoots the only vertex once.
  const Schedule one = basic_strategy(Tree(1, {}));
  CHECK(one.r == 1);
  CHECK(one.rounds == std::vector<std::vector<int>>{{0}});

  // Two vertices: shoot an endpoint twice.
  const Schedule two = basic_strategy(make_path(2));
  CHECK(two.r == 1);
  CHECK(two.rounds == std::vector<std::vector<int>>{{0}, {0}});

  // Paths up to nine vertices need one cat.
  const Schedule nine = basic_strategy(make_path(9));
  CHECK(nine.r == 1);
  CHECK(certified_standard(make_path(9), nine));

  // The ten-vertex three-legged spider is the smallest two-cat tree; the
  // recursive bound still allows ceil(log2 10) = 4.
  const Tree h = make_spider({3, 3, 3});
  const Schedule hs = basic_strategy(h);
  CHECK(hs.r >= 2);
  CHECK(hs.r <= 4);
  CHECK(certified_standard(h, hs));
}

TEST_CASE("basic strategy certified on every tree through order 11") {
  for (int n = 1; n <= 11; ++n) {
    for (const Tree& t : enumerate_trees(n)) {
      const Schedule s = basic_strategy(t);
      CHECK(s.r <= basic_budget(n));
      CHECK(max_shot_size(s) <= s.r);
      CHECK(certified_standard(t, s));
    }
  }
}

TEST_CASE("basic strategy on larger random trees") {
  for (int n : {50, 200, 701}) {
    for (std::uint64_t seed : {11u, 97u}) {
      const Tree t = random_tree(n, seed);
      const Schedule s = basic_strategy(t);
      CHECK(s.r <= basic_budget(n));
      CHECK(static_cast<int>(s.rounds.size()) <= 2 * n + 10);
      CHECK(certified_standard(t, s));
    }
  }
}

TEST_CASE("basic strategy is deterministic") {
  const Tree t = random_tree(80, 5);
  const Schedule a = basic_strategy(t);
  const Schedule b = basic_strategy(t);
  CHECK(a.rounds == b.rounds);
  CHECK(a.r == b.r);
}

TEST_CASE("decompose examples") {
  // Twelve-vertex path: centre 5, two big halves, nothing small.
  const DecompositionPlan p12 = decompose(make_path(12));
  CHECK(p12.n == 12);
  CHECK(p12.centre == 5);
  REQUIRE(p12.big.size() == 2);
  CHECK(p12.small_comps.empty());
  CHECK(p12.big[0].comp.to_parent == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(p12.big[1].comp.to_parent == std::vector<int>{6, 7, 8, 9, 10, 11});
  CHECK(p12.big[0].b == 2);
  CHECK(p12.big[0].attach == 4);
  CHECK_FALSE(p12.big[0].centre_in_v1);
  CHECK(p12.big[1].b == 8);
  CHECK(p12.big[1].attach == 6);
  CHECK_FALSE(p12.big[1].centre_in_v1);

  // Star on ten vertices: hub centre, nine small singleton components.
  const DecompositionPlan star = decompose(make_star(9));
  CHECK(star.centre == 0);
  CHECK(star.big.empty());
  CHECK(star.small_comps.size() == 9);
  for (const auto& c : star.small_comps) CHECK(c.tree.n() == 1);

  // Subdivided complete binary tree of depth 3: every big component holds
  // more than a quarter of the 29 vertices.
  const DecompositionPlan tk = decompose(make_tk(3).tree);
  CHECK(tk.n == 29);
  for (const auto& b : tk.big) CHECK(b.comp.tree.n() > 7);

  CHECK_THROWS_AS(decompose(make_path(9)), std::invalid_argument);
}

TEST_CASE("decompose classifies component centres by bipartition class") {
  // Legs of length four put the component centre two steps from the hub:
  // same class, so all three components are mixed-case components.
  const DecompositionPlan s444 = decompose(make_spider({4, 4, 4}));
  REQUIRE(s444.big.size() == 3);
  for (const auto& b : s444.big) CHECK(b.centre_in_v1);

  // Legs of length five put the component centre three steps away.
  const DecompositionPlan s555 = decompose(make_spider({5, 5, 5}));
  REQUIRE(s555.big.size() == 3);
  for (const auto& b : s555.big) CHECK_FALSE(b.centre_in_v1);

  const DecompositionPlan mixed = decompose(make_spider({4, 5, 5}));
  REQUIRE(mixed.big.size() == 3);
  CHECK(mixed.big[0].centre_in_v1);
  CHECK_FALSE(mixed.big[1].centre_in_v1);
  CHECK_FALSE(mixed.big[2].centre_in_v1);

  // Sixteen-vertex path: both halves have centres four steps from vertex 7.
  const DecompositionPlan p16 = decompose(make_path(16));
  REQUIRE(p16.big.size() == 2);
  CHECK(p16.centre == 7);
  CHECK(p16.big[0].centre_in_v1);
  CHECK(p16.big[1].centre_in_v1);
}

TEST_CASE("improved strategy examples") {
  // One vertex, one cat.
  const Tree k1(1, {});
  const VariantSchedule vk1 = improved_strategy(k1);
  CHECK(vk1.schedule.r == 1);
  CHECK(certified_variant(k1, vk1.schedule));

  // The smallest two-cat tree fits in ceil(log2(10)/2) = 2 cats.
  const Tree h = make_spider({3, 3, 3});
  const VariantSchedule vh = improved_strategy(h);
  CHECK(vh.schedule.r <= 2);
  CHECK(certified_variant(h, vh.schedule));
}

TEST_CASE("improved strategy certified on every tree through order 11") {
  for (int n = 1; n <= 11; ++n) {
    for (const Tree& t : enumerate_trees(n)) check_improved_tree(t);
  }
}

TEST_CASE("improved strategy covers every mixed-component count") {
  // Zero mixed components, two big ones, wait round prepended (class-2 centre).
  const Tree p12 = make_path(12);
  const VariantSchedule v12 = improved_strategy(p12);
  CHECK(v12.alignment_offset == 1);
  CHECK(stage_count(v12, "seal-first") == 0);
  CHECK(stage_count(v12, "clean-opposite") == 2);
  check_improved_tree(p12);

  // Three opposite-class big components.
  check_improved_tree(make_spider({5, 5, 5}));

  // One mixed component plus two opposite-class ones.
  const Tree s455 = make_spider({4, 5, 5});
  const VariantSchedule v455 = improved_strategy(s455);
  CHECK(stage_count(v455, "seal-first") == 1);
  CHECK(stage_count(v455, "clean-opposite") == 2);
  CHECK(stage_count(v455, "clean-second-far") == 0);
  check_improved_tree(s455);

  // Two mixed components (sixteen-vertex path), handoff-free endgame.
  const Tree p16 = make_path(16);
  const VariantSchedule v16 = improved_strategy(p16);
  CHECK(stage_count(v16, "clean-second-far") == 1);
  CHECK(stage_count(v16, "handoff") == 0);
  check_improved_tree(p16);

  // Three mixed components with the soldier-assisted handoff stage.  Short
  // legs leave nothing behind the near gate, so that cleaning stage is empty.
  const Tree s444 = make_spider({4, 4, 4});
  const VariantSchedule v444 = improved_strategy(s444);
  CHECK(v444.alignment_offset == 0);
  CHECK(stage_count(v444, "handoff") == 1);
  CHECK(stage_count(v444, "clean-third") == 1);
  CHECK(stage_count(v444, "clean-first-far") == 1);
  CHECK(stage_count(v444, "clean-second-near") == 0);
  check_improved_tree(s444);

  // Deeper legs exercise nonempty near-side pieces in both mixed stages.
  const Tree s777 = make_spider({7, 7, 7});
  const VariantSchedule v777 = improved_strategy(s777);
  CHECK(stage_count(v777, "clean-first-far") == 1);
  CHECK(stage_count(v777, "clean-first-near") == 1);
  CHECK(stage_count(v777, "clean-second-near") == 1);
  check_improved_tree(s777);
}

TEST_CASE("improved strategy keeps the small-component stage for stray leaves") {
  // Hub leaves sit in class 2: their start side is empty, so their slots are
  // silent, yet the stage must still run so the guard's centre shots catch
  // any straggler that slipped through the hub earlier.
  const Tree t = make_spider({4, 4, 4, 1, 1});
  const VariantSchedule vs = improved_strategy(t);
  bool found = false;
  for (const StageInfo& st : vs.stages) {
    if (st.name.rfind("clean-small", 0) == 0) {
      found = true;
      CHECK(st.length >= 2);
    }
  }
  CHECK(found);
  check_improved_tree(t);
}

TEST_CASE("improved strategy on random trees") {
  for (int n : {10, 19, 33, 57, 64, 120}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      check_improved_tree(random_tree(n, seed));
    }
  }
}

TEST_CASE("improved strategy schedule length stays linear") {
  const Tree t = random_tree(500, 42);
  const VariantSchedule vs = improved_strategy(t);
  CHECK(static_cast<int>(vs.schedule.rounds.size()) <= 30 * 500);
  CHECK(vs.schedule.r <= improved_budget(500));
  CHECK(certified_variant(t, vs.schedule));
}

TEST_CASE("improved strategy is deterministic") {
  const Tree t = random_tree(64, 9);
  const VariantSchedule a = improved_strategy(t);
  const VariantSchedule b = improved_strategy(t);
  CHECK(a.schedule.rounds == b.schedule.rounds);
  CHECK(a.schedule.r == b.schedule.r);
  REQUIRE(a.stages.size() == b.stages.size());
  for (std::size_t i = 0; i < a.stages.size(); ++i) {
    CHECK(a.stages[i].name == b.stages[i].name);
    CHECK(a.stages[i].first_round == b.stages[i].first_round);
    CHECK(a.stages[i].length == b.stages[i].length);
  }
}

TEST_CASE("strategy cat counts dominate exact hunter numbers") {
  for (int n = 1; n <= 10; ++n) {
    for (const Tree& t : enumerate_trees(n)) {
      const SolveResult exact = hunter_number(t);
      REQUIRE(exact.solved);
      CHECK(exact.h <= basic_strategy(t).r);
      CHECK(exact.h <= improved_strategy(t).schedule.r);
    }
  }
}

TEST_CASE("variant to standard transform examples") {
  // Four-vertex path end to end: the variant schedule has even length, so the
  // standard schedule is S, wait, S.
  const Tree p4 = make_path(4);
  const VariantSchedule vs = improved_strategy(p4);
  REQUIRE(vs.schedule.rounds.size() % 2 == 0);
  const Schedule s = variant_to_standard(vs, p4);
  CHECK(s.rounds.size() == 2 * vs.schedule.rounds.size() + 1);
  const std::size_t half = vs.schedule.rounds.size();
  for (std::size_t i = 0; i < half; ++i) {
    CHECK(s.rounds[i] == vs.schedule.rounds[i]);
    CHECK(s.rounds[half + 1 + i] == vs.schedule.rounds[i]);
  }
  CHECK(s.rounds[half].empty());
  CHECK(certified_standard(p4, s));

  // Odd-length variant schedules double without a separator.
  VariantSchedule odd;
  odd.schedule.r = 1;
  odd.schedule.rounds = {{0}, {}, {0}};
  const Schedule doubled = variant_to_standard(odd, make_path(2));
  CHECK(doubled.rounds ==
        std::vector<std::vector<int>>{{0}, {}, {0}, {0}, {}, {0}});
}
