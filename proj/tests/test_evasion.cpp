#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catmouse/evasion.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "catmouse/engine.hpp"
#include "catmouse/graph.hpp"
#include "catmouse/rng.hpp"

using namespace catmouse;

namespace {

// Independent gamma: count "10" substrings of the binary string.
int gamma_oracle(std::uint64_t n) {
  std::string s;
  if (n == 0) s = "0";
  while (n) {
    s.insert(s.begin(), char('0' + (n & 1)));
    n >>= 1;
  }
  int c = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == '1' && s[i + 1] == '0') ++c;
  return c;
}

// Independent boundary: importants not in the set at tree distance exactly 2
// from a member of the set.
std::vector<int> boundary_oracle(const SubdividedTree& st,
                                 const std::vector<int>& members) {
  std::set<int> in(members.begin(), members.end());
  std::set<int> out;
  for (int v = 0; v < st.tree.n(); ++v) {
    if (!st.important[v] || in.count(v)) continue;
    for (int s : st.tree.neighbors(v)) {
      for (int u : st.tree.neighbors(s)) {
        if (u != v && in.count(u)) out.insert(v);
      }
    }
  }
  return std::vector<int>(out.begin(), out.end());
}

std::uint64_t important_count(const SubdividedTree& st, const std::vector<int>& pos) {
  std::uint64_t c = 0;
  for (int v : pos)
    if (st.important[v]) ++c;
  return c;
}

}  // namespace

TEST_CASE("gamma examples and oracle") {
  CHECK(catmouse::gamma(0) == 0);
  CHECK(catmouse::gamma(1) == 0);
  CHECK(catmouse::gamma(2) == 1);
  CHECK(catmouse::gamma(3) == 0);
  CHECK(catmouse::gamma(42) == 3);
  for (std::uint64_t n = 0; n <= 5000; ++n) CHECK(catmouse::gamma(n) == gamma_oracle(n));
  CHECK(catmouse::gamma(0xAAAAAAAAAAAAAAAAull) == 32);
}

TEST_CASE("beta examples") {
  CHECK(beta(0) == 0);
  for (int a = 0; a <= 10; ++a) CHECK(beta(std::uint64_t{1} << a) == 1);
  CHECK(beta(3) == 2);
  CHECK(beta(7) == 2);
  CHECK(beta(40) == 2);
  CHECK(beta(42) == 3);
}

TEST_CASE("beta matches the brute-force oracle") {
  CHECK(beta_bruteforce(0) == 0);
  CHECK(beta_bruteforce(1) == 1);
  CHECK(beta_bruteforce(7) == 2);
  for (std::uint64_t n = 0; n <= 512; ++n) CHECK(beta(n) == beta_bruteforce(n));
  CHECK_THROWS_AS(beta_bruteforce(4097), CapacityError);
  CHECK_THROWS_AS(beta_bruteforce(5, 7), CapacityError);
}

TEST_CASE("arithmetic lemma holds on an exhaustive range") {
  CHECK(catmouse::gamma(42) <= beta(42));
  const CheckReport rep = check_arithmetic_lemma(std::uint64_t{1} << 16);
  CHECK(rep.checked == (std::uint64_t{1} << 16));
  CHECK(rep.violations == 0);
  const CheckReport serial = check_arithmetic_lemma(std::uint64_t{1} << 16, false);
  CHECK(serial.checked == rep.checked);
  CHECK(serial.violations == rep.violations);
  CHECK_THROWS_AS(check_arithmetic_lemma((std::uint64_t{1} << 20) + 1), CapacityError);
}

TEST_CASE("approximate lemma sampling") {
  // Hand pair: |42-40| = 2 <= 2^1 and |beta(42)-beta(40)| = 1 <= 1.
  CHECK(std::abs(beta(42) - beta(40)) <= 1);
  const CheckReport rep = check_approximate_lemma(10000, 7);
  CHECK(rep.checked == 10000);
  CHECK(rep.violations == 0);
  const CheckReport again = check_approximate_lemma(10000, 7);
  CHECK(again.checked == rep.checked);
}

TEST_CASE("special number examples and invariants") {
  CHECK(special_n(1) == 0);
  CHECK(special_n(2) == 2);
  CHECK(special_n(4) == 10);
  CHECK(special_n(6) == 42);
  CHECK(special_n(8) == 170);
  for (int k = 1; k <= 60; ++k) {
    const std::uint64_t n = special_n(k);
    CHECK(n <= (std::uint64_t{1} << (k + 1)) - 1);
    CHECK(catmouse::gamma(n) == k / 2);
    CHECK(beta(n) == k / 2);
  }
  CHECK_THROWS_AS(special_n(0), std::invalid_argument);
  CHECK_THROWS_AS(special_n(63), std::invalid_argument);
}

TEST_CASE("important boundary examples") {
  const SubdividedTree st = make_tk(3);
  CHECK(important_boundary(st, {}).empty());
  std::vector<int> all;
  for (int v = 0; v < st.tree.n(); ++v)
    if (st.important[v]) all.push_back(v);
  CHECK(important_boundary(st, all).empty());
  CHECK(important_boundary(st, {0}) == std::vector<int>{1, 2});
  CHECK(important_boundary(st, {1}) == std::vector<int>{0, 3, 4});
  CHECK_THROWS_AS(important_boundary(st, {st.edge_subdivider[1]}),
                  std::invalid_argument);
}

TEST_CASE("important boundary matches the distance-two oracle") {
  const SubdividedTree st = make_tk(4);
  std::vector<int> imps;
  for (int v = 0; v < st.tree.n(); ++v)
    if (st.important[v]) imps.push_back(v);
  Rng rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    const int sz = rng.below_int(static_cast<int>(imps.size()) + 1);
    std::vector<int> members;
    for (int i : rng.sample(static_cast<int>(imps.size()), sz))
      members.push_back(imps[i]);
    CHECK(important_boundary(st, members) == boundary_oracle(st, members));
  }
}

TEST_CASE("weak boundary report matches a from-scratch enumeration") {
  const SubdividedTree st = make_tk(2);
  std::uint64_t viol = 0;
  long long min_slack = LLONG_MAX;
  for (std::uint32_t mask = 0; mask < 128; ++mask) {
    std::vector<int> members;
    for (int v = 0; v < 7; ++v)
      if (mask & (1u << v)) members.push_back(v);
    const long long m =
        static_cast<long long>(boundary_oracle(st, members).size());
    const long long slack = 6 * m - catmouse::gamma(members.size()) + 2;
    if (slack < 0) ++viol;
    min_slack = std::min(min_slack, slack);
  }
  const BoundaryReport rep = check_weak_boundary(2, BoundaryMode::Exhaustive());
  CHECK(rep.k == 2);
  CHECK(rep.checked == 128);
  CHECK(rep.violations == viol);
  CHECK(rep.violations == 0);
  CHECK(rep.min_scaled_slack == min_slack);
  CHECK(rep.slack_scale == 6);
}

TEST_CASE("weak boundary holds exhaustively at depth three") {
  const BoundaryReport rep = check_weak_boundary(3, BoundaryMode::Exhaustive());
  CHECK(rep.checked == (std::uint64_t{1} << 15));
  CHECK(rep.violations == 0);
  CHECK_THROWS_AS(check_weak_boundary(4, BoundaryMode::Exhaustive()),
                  std::invalid_argument);
}

TEST_CASE("weak boundary sampling is clean and deterministic") {
  const BoundaryReport a = check_weak_boundary(8, BoundaryMode::Sample(50000, 3));
  CHECK(a.checked == 50000);
  CHECK(a.violations == 0);
  const BoundaryReport b = check_weak_boundary(8, BoundaryMode::Sample(50000, 3));
  CHECK(a.min_scaled_slack == b.min_scaled_slack);
  CHECK(a.violations == b.violations);
}

TEST_CASE("eps boundary and the intermediate bound") {
  const Rational half{1, 2};
  const BoundaryReport ex = check_eps_boundary(3, half, BoundaryMode::Exhaustive());
  CHECK(ex.checked == (std::uint64_t{1} << 15));
  CHECK(ex.violations == 0);
  CHECK(ex.intermediate_violations == 0);
  CHECK(ex.slack_scale == 2);
  const BoundaryReport sm =
      check_eps_boundary(10, half, BoundaryMode::Sample(10000, 11));
  CHECK(sm.checked == 10000);
  CHECK(sm.violations == 0);
  CHECK(sm.intermediate_violations == 0);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/20").p == 1);
  CHECK(parse_rational("1/20").q == 20);
  CHECK(parse_rational("0.05").p == 1);
  CHECK(parse_rational("0.05").q == 20);
  CHECK(parse_rational("0.5").p == 1);
  CHECK(parse_rational("0.5").q == 2);
  CHECK(parse_rational("0.2").p == 1);
  CHECK(parse_rational("0.2").q == 5);
  CHECK(parse_rational("2/8").p == 1);
  CHECK(parse_rational("2/8").q == 4);
  CHECK(parse_rational("3").p == 3);
  CHECK(parse_rational("3").q == 1);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("corollary budgets") {
  CHECK(corollary_budget(100, BudgetVariant::Weak, {}) == 2);
  CHECK(corollary_budget(39, BudgetVariant::Weak, {}) == 0);
  CHECK(corollary_budget(16, BudgetVariant::Strong, {1, 20}) == 3);
  CHECK(corollary_budget(8, BudgetVariant::Strong, {1, 20}) == 1);
  CHECK(corollary_budget(4, BudgetVariant::Strong, {1, 20}) == 0);
  CHECK_THROWS_AS(corollary_budget(0, BudgetVariant::Weak, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(corollary_budget(8, BudgetVariant::Strong, {1, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(corollary_budget(8, BudgetVariant::Strong, {0, 1}),
                  std::invalid_argument);
}

TEST_CASE("survival on the depth-two tree: hand-checked dynamics and audit") {
  const SubdividedTree st = make_tk(2);
  REQUIRE(st.tree.n() == 13);

  // Empty schedule: the full set never shrinks.
  Schedule empty;
  empty.r = 1;
  const SurvivalReport r0 = survival_run(st, empty, true);
  CHECK(r0.k == 2);
  CHECK(r0.n_target == 2);
  CHECK(r0.c == 0);
  CHECK(r0.rounds == 0);
  CHECK(r0.even_counts == std::vector<std::uint64_t>{7});
  CHECK(r0.survives);
  CHECK(r0.audits.empty());

  // One subdivider shot, then a wait: every important vertex returns.
  Schedule s1;
  s1.r = 1;
  s1.rounds = {{7}, {}};
  const SurvivalReport r1 = survival_run(st, s1, true);
  CHECK(r1.even_counts == std::vector<std::uint64_t>{7, 7});
  REQUIRE(r1.audits.size() == 1);
  const StepAudit& a1 = r1.audits[0];
  CHECK(a1.even_round == 0);
  CHECK(a1.x_size == 2);
  CHECK(a1.boundary == 3);
  CHECK(a1.edge_total == 1);
  CHECK(a1.shot_total == 0);
  CHECK(a1.w_total == 0);
  CHECK(a1.next_important == 7);
  CHECK(a1.parts_hold);
  CHECK(a1.chain_holds);
  REQUIRE(a1.components.size() == 1);
  CHECK(a1.components[0].vertices == 5);
  CHECK(a1.components[0].edges_cut == 1);
  CHECK(a1.components[0].isolated == 0);
  CHECK(a1.components[0].w == 0);

  // Shot on an important vertex in the second round.
  Schedule s2;
  s2.r = 1;
  s2.rounds = {{7}, {0}};
  const SurvivalReport r2 = survival_run(st, s2, true);
  CHECK(r2.even_counts == std::vector<std::uint64_t>{7, 6});
  REQUIRE(r2.audits.size() == 1);
  CHECK(r2.audits[0].shot_total == 1);
  CHECK(r2.audits[0].next_important == 6);
  CHECK(r2.audits[0].chain_holds);

  // Cutting all four component edges isolates everything: w flag raised.
  Schedule s3;
  s3.r = 4;
  s3.rounds = {{7, 8, 9, 10}, {}};
  const SurvivalReport r3 = survival_run(st, s3, true);
  CHECK(r3.c == 4);
  CHECK(r3.even_counts == std::vector<std::uint64_t>{7, 3});
  REQUIRE(r3.audits.size() == 1);
  const StepAudit& a3 = r3.audits[0];
  CHECK(a3.edge_total == 4);
  CHECK(a3.w_total == 1);
  REQUIRE(a3.components.size() == 1);
  CHECK(a3.components[0].isolated == 5);
  CHECK(a3.parts_hold);
  CHECK(a3.chain_holds);
  CHECK(r3.survives);
}

TEST_CASE("survival dynamics bit-match the game engine") {
  const SubdividedTree st = make_tk(4);
  const Schedule s = uniform_random_schedule(st, 2, 16, 99);
  const SurvivalReport rep = survival_run(st, s, true);
  CHECK(rep.audit_ok);
  const GameSemantics sem{Convention::MoveThenShoot, InitialDomain::AllVertices};
  const GameTrace trace = run_schedule(st.tree, s, sem);
  REQUIRE(trace.entries.size() == 17);
  std::vector<std::uint64_t> expect;
  for (const TraceEntry& e : trace.entries)
    if (e.round % 2 == 0) expect.push_back(important_count(st, e.positions));
  CHECK(rep.even_counts == expect);
}

TEST_CASE("adversary schedules: shape and determinism") {
  const SubdividedTree st = make_tk(5);
  const int c = 2;
  const int rounds = 20;
  const Schedule ur = uniform_random_schedule(st, c, rounds, 5);
  const Schedule gr = greedy_schedule(st, c, rounds, 5);
  const Schedule sw = sweep_schedule(st, c, rounds, 5);
  const Schedule ts = truncated_strategy_schedule(st, c, rounds, 5);
  for (const Schedule* s : {&ur, &gr, &sw, &ts}) {
    CHECK(static_cast<int>(s->rounds.size()) == rounds);
    CHECK(s->r == c);
    for (const auto& round : s->rounds) {
      CHECK(static_cast<int>(round.size()) <= c);
      CHECK(std::is_sorted(round.begin(), round.end()));
      for (int v : round) {
        CHECK(v >= 0);
        CHECK(v < st.tree.n());
      }
    }
  }
  // Sweep shoots subdividing vertices only.
  for (const auto& round : sw.rounds)
    for (int v : round) CHECK_FALSE(st.important[v]);
  CHECK(uniform_random_schedule(st, c, rounds, 5).rounds == ur.rounds);
  CHECK(greedy_schedule(st, c, rounds, 5).rounds == gr.rounds);
  CHECK(sweep_schedule(st, c, rounds, 5).rounds == sw.rounds);
  CHECK(truncated_strategy_schedule(st, c, rounds, 5).rounds == ts.rounds);
  CHECK(uniform_random_schedule(st, c, rounds, 6).rounds != ur.rounds);
}

TEST_CASE("mouse survives the budgeted adversaries at depth eight") {
  const SubdividedTree st = make_tk(8);
  const int c = corollary_budget(8, BudgetVariant::Strong, {1, 20});
  REQUIRE(c == 1);
  const std::uint64_t target = special_n(8);
  REQUIRE(target == 170);
  int audited = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (int gen = 0; gen < 4; ++gen) {
      Schedule s;
      switch (gen) {
        case 0: s = uniform_random_schedule(st, c, 32, seed); break;
        case 1: s = greedy_schedule(st, c, 32, seed); break;
        case 2: s = sweep_schedule(st, c, 32, seed); break;
        default: s = truncated_strategy_schedule(st, c, 32, seed); break;
      }
      const SurvivalReport rep = survival_run(st, s, true);
      CHECK(rep.survives);
      CHECK(rep.audit_ok);
      for (std::uint64_t cnt : rep.even_counts) CHECK(cnt >= target);
      audited += static_cast<int>(rep.audits.size());
    }
  }
  CHECK(audited == 20 * 4 * 16);
}
