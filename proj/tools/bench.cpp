// Compares the OpenMP solver and arithmetic kernels against their serial
// reference paths: same answers required, wall times reported.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include "catmouse/evasion.hpp"
#include "catmouse/graph.hpp"
#include "catmouse/solver.hpp"

using namespace catmouse;

namespace {

using Clock = std::chrono::steady_clock;

double run_ms(const std::function<void()>& fn) {
  const auto t0 = Clock::now();
  fn();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& kernel, double serial_ms, double parallel_ms, bool match) {
  std::cout << kernel << ": serial " << serial_ms << " ms, parallel " << parallel_ms
            << " ms, match=" << (match ? "yes" : "NO") << "\n";
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(1);
  bool all_match = true;

  {
    const Tree t = random_tree(18, 12345);
    SolverOptions serial;
    serial.parallel = false;
    SolverOptions parallel;
    parallel.parallel = true;
    WinSearch ws;
    WinSearch wp;
    const double ts = run_ms([&] { ws = cats_win(t, 2, serial); });
    const double tp = run_ms([&] { wp = cats_win(t, 2, parallel); });
    const bool match = ws.win == wp.win && ws.explored == wp.explored &&
                       ws.witness.rounds == wp.witness.rounds;
    all_match = all_match && match;
    report("solver subset-BFS (n=18, r=2)", ts, tp, match);
  }

  {
    const std::uint64_t limit = std::uint64_t{1} << 20;
    CheckReport rs;
    CheckReport rp;
    const double ts = run_ms([&] { rs = check_arithmetic_lemma(limit, false); });
    const double tp = run_ms([&] { rp = check_arithmetic_lemma(limit, true); });
    const bool match = rs.checked == rp.checked && rs.violations == rp.violations;
    all_match = all_match && match;
    report("arithmetic lemma sweep (n <= 2^20)", ts, tp, match);
  }

  {
    // Single-kernel timing for the survival harness (no parallel variant).
    const SubdividedTree st = make_tk(12);
    SurvivalReport rep;
    const double ts = run_ms([&] {
      const Schedule s = greedy_schedule(st, 2, 48, 7);
      rep = survival_run(st, s, true);
    });
    std::cout << "survival harness (k=12, audited): " << ts << " ms, survives="
              << (rep.survives ? "yes" : "NO") << "\n";
  }

  return all_match ? 0 : 1;
}
