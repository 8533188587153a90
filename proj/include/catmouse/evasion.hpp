#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catmouse/engine.hpp"
#include "catmouse/graph.hpp"

namespace catmouse {

// Count of "10" digit pairs in the binary expansion: positions i >= 1 with
// bit i set and bit i-1 clear. gamma(0) == 0.
int gamma(std::uint64_t n);

// Minimal number of terms expressing n as a sum/difference of powers of two;
// computed via the non-adjacent signed-digit form.
int beta(std::uint64_t n);

// Independent oracle for beta: iterative deepening over term counts with
// exponents <= 14. Guards: n <= 2^12, max_terms <= 6.
int beta_bruteforce(std::uint64_t n, int max_terms = 6);

// The mouse-count target: the number whose binary expansion is floor(k/2)
// repeats of "10". Satisfies special_n(k) <= 2^(k+1)-1 and
// gamma(special_n(k)) == floor(k/2).
std::uint64_t special_n(int k);

// Vertex boundary in B_k of a set of important vertices: importants not in
// the set but adjacent (in B_k) to one that is. Tree-vertex ids in and out,
// ascending.
std::vector<int> important_boundary(const SubdividedTree& st,
                                    const std::vector<int>& members);

struct BoundaryMode {
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  static BoundaryMode Exhaustive() { return BoundaryMode{true, 0, 0}; }
  static BoundaryMode Sample(std::uint64_t samples, std::uint64_t seed) {
    return BoundaryMode{false, samples, seed};
  }
};

struct BoundaryReport {
  int k = 0;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;               // stated-bound failures
  std::uint64_t intermediate_violations = 0;  // gamma <= m + log2(m) + 4 failures
  // Minimum of scale*|dX| - scale*bound over all checked X, in units of
  // 1/scale (scale = 6 for the weak bound, eps.q for the eps bound).
  long long min_scaled_slack = 0;
  long long slack_scale = 1;
};

// Exact nonnegative rational (for epsilon arguments and budgets).
struct Rational {
  long long p = 0;
  long long q = 1;
};

// Accepts "p/q" and decimal strings like "0.05"; exact conversion.
Rational parse_rational(const std::string& s);

// Weak boundary bound |dX| >= (gamma(|X|) - 2) / 6 over subsets of V(B_k).
// Exhaustive mode requires k <= 3 (2^15 subsets).
BoundaryReport check_weak_boundary(int k, const BoundaryMode& mode);

// Refined bound |dX| >= gamma(|X|) - eps*k, checked exactly as
// q|dX| >= q*gamma - p*k; also audits the intermediate bound
// gamma(|X|) <= |dX| + log2|dX| + 4 per subset.
BoundaryReport check_eps_boundary(int k, const Rational& eps,
                                  const BoundaryMode& mode);

struct CheckReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};

// beta(n) >= gamma(n) for all 1 <= n <= limit (limit <= 2^20).
CheckReport check_arithmetic_lemma(std::uint64_t limit, bool parallel = true);

// Sampled pairs 1 <= m, n <= 2^18 with k the smallest positive integer
// satisfying |m - n| <= 2^k: |beta(m) - beta(n)| <= k.
CheckReport check_approximate_lemma(std::uint64_t samples, std::uint64_t seed);

enum class BudgetVariant { Weak, Strong };

// Cat budget under which mouse survival is asserted: floor(k/40) for the
// weak variant, floor((1/4 - eps) * k) for the strong one.
int corollary_budget(int k, BudgetVariant variant, const Rational& eps = {1, 20});

// Audit of one even-round step A_{2i} -> A_{2i+2} against the inductive
// inequality chain, reconstructed from the live state: X is the n_target
// smallest surviving importants, split into B_k components of X plus its
// boundary.
struct ComponentAudit {
  int vertices = 0;   // |V(X_j)|
  int edges_cut = 0;  // |E_j|: component edges whose subdivider is shot at 2i+1
  int shots_in = 0;   // |Y_j|: component vertices shot at 2i+2
  int isolated = 0;   // |R_j|: vertices isolated once E_j is removed
  int w = 0;          // 1 iff |E_j| == |V(X_j)| - 1
};

struct StepAudit {
  int even_round = 0;        // the step covers rounds 2i+1 and 2i+2
  int x_size = 0;
  int boundary = 0;          // |dX|
  int edge_total = 0;        // sum |E_j|
  int shot_total = 0;        // sum |Y_j|
  int w_total = 0;
  int next_important = 0;    // |A_{2i+2} ∩ importants|
  bool parts_hold = false;   // |R_j| <= |E_j|+w_j all j; edge_total <= c; shot_total <= c
  bool chain_holds = false;  // next_important >= x_size + boundary - 2c - w_total
  std::vector<ComponentAudit> components;
};

struct SurvivalReport {
  int k = 0;
  std::uint64_t n_target = 0;  // special_n(k)
  int c = 0;                   // cat budget: largest shot set in the schedule
  int rounds = 0;              // rounds executed
  std::vector<std::uint64_t> even_counts;  // |A_{2i} ∩ importants|, 2i = 0,2,...
  std::vector<StepAudit> audits;           // filled when auditing
  bool survives = false;  // every recorded count >= n_target
  bool audit_ok = true;   // every audited step passes both checks
};

// Runs the possible-position recurrence A_{i+1} = N(A_i) \ C_{i+1} from
// A_0 = V(T_k) and records important-vertex counts at even rounds.
SurvivalReport survival_run(const SubdividedTree& st, const Schedule& s, bool audit);

// Adversary schedule generators (deterministic in the seed).
Schedule uniform_random_schedule(const SubdividedTree& st, int c, int rounds,
                                 std::uint64_t seed);
// Simulates the dynamics and shoots reachable vertices with the most live
// neighbours (seeded jitter breaks ties).
Schedule greedy_schedule(const SubdividedTree& st, int c, int rounds,
                         std::uint64_t seed);
// Cyclic windows over the subdividing vertices in heap order.
Schedule sweep_schedule(const SubdividedTree& st, int c, int rounds,
                        std::uint64_t seed);
// The recursive centre-guarding generator's schedule with every round
// truncated to the budget, cycled to the requested length.
Schedule truncated_strategy_schedule(const SubdividedTree& st, int c, int rounds,
                                     std::uint64_t seed);

}  // namespace catmouse
