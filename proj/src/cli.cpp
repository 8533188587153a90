#include "catmouse/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catmouse/engine.hpp"
#include "catmouse/evasion.hpp"
#include "catmouse/graph.hpp"
#include "catmouse/io.hpp"
#include "catmouse/solver.hpp"
#include "catmouse/strategy.hpp"

namespace catmouse::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSurveyOrderCap = 12;
constexpr int kLowerboundDepthCap = 20;

int ceil_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

ordered_json schedule_obj(const Schedule& s, const GameSemantics& sem) {
  ordered_json j;
  j["r"] = s.r;
  j["semantics"] = convention_name(sem.convention);
  j["initial_domain"] = initial_domain_name(sem.initial_domain);
  j["rounds"] = s.rounds;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void require_shots_in_range(const Schedule& s, const Tree& t) {
  for (const std::vector<int>& round : s.rounds)
    for (int v : round)
      if (v < 0 || v >= t.n())
        throw std::invalid_argument("schedule shoots vertex " + std::to_string(v) +
                                    ", but the tree has order " + std::to_string(t.n()));
}

struct SolveArgs {
  std::string tree;
  int max_cats = 3;
  std::string semantics = "paper";
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Tree t = read_tree_file(a.tree);
  SolverOptions opt;
  opt.max_cats = a.max_cats;
  opt.convention = parse_convention(a.semantics);
  const SolveResult res = hunter_number(t, opt);
  const GameSemantics sem{opt.convention, InitialDomain::AllVertices};
  ordered_json j;
  j["n"] = res.n;
  j["solved"] = res.solved;
  if (res.h >= 0)
    j["h"] = res.h;
  else
    j["h"] = nullptr;
  if (res.solved)
    j["witness"] = schedule_obj(res.witness, sem);
  else
    j["witness"] = nullptr;
  ordered_json per = ordered_json::array();
  for (const RoundOutcome& ro : res.per_r) {
    ordered_json e;
    e["r"] = ro.r;
    e["win"] = ro.win;
    e["explored"] = ro.explored;
    per.push_back(std::move(e));
  }
  j["per_r"] = std::move(per);
  out << j.dump() << "\n";
  return 0;
}

struct VerifyArgs {
  std::string tree;
  std::string schedule;
  std::string semantics;  // empty: use the schedule file's semantics
  bool trace = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Tree t = read_tree_file(a.tree);
  GameSemantics sem;
  Schedule s = schedule_from_json(read_text_file(a.schedule), &sem);
  if (!a.semantics.empty()) sem.convention = parse_convention(a.semantics);
  require_shots_in_range(s, t);
  const Bipartition bip = bipartition(t);
  const GameTrace tr = run_schedule(t, s, sem, &bip);
  ordered_json j;
  j["outcome"] = tr.cats_win ? "CatsWin" : "MouseSurvives";
  if (tr.cats_win)
    j["win_round"] = tr.win_round;
  else
    j["win_round"] = nullptr;
  j["rounds_run"] = static_cast<int>(tr.entries.size()) - 1;
  if (a.trace) j["trace"] = format_trace(tr);
  out << j.dump() << "\n";
  return 0;
}

struct StrategyArgs {
  std::string tree;
  std::string algo = "basic";
  std::string emit;
  bool certify = false;
  bool transform = false;
};

int cmd_strategy(const StrategyArgs& a, std::ostream& out, std::ostream& err) {
  const Tree t = read_tree_file(a.tree);
  Schedule s;
  GameSemantics sem;
  if (a.algo == "basic") {
    s = basic_strategy(t);
  } else if (a.algo == "improved") {
    const VariantSchedule vs = improved_strategy(t);
    if (a.transform) {
      s = variant_to_standard(vs, t);
    } else {
      s = vs.schedule;
      sem.initial_domain = InitialDomain::ClassOne;
    }
  } else {
    throw std::invalid_argument("unknown algorithm \"" + a.algo +
                                "\" (expected basic|improved)");
  }
  const std::string payload = schedule_json(s, sem);
  if (!a.emit.empty()) {
    std::ofstream f(a.emit);
    if (!f) throw std::invalid_argument("cannot open output file: " + a.emit);
    f << payload << "\n";
  }
  out << payload << "\n";
  if (a.certify) {
    const Bipartition bip = bipartition(t);
    if (!verify_winning(t, s, sem, &bip)) {
      err << "certification failed: schedule does not catch the mouse\n";
      return 1;
    }
  }
  return 0;
}

struct GenArgs {
  std::string family;
  int n = 0;
  int k = 0;
  std::string legs;
  std::uint64_t seed = 0;
  std::string emit;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  Tree t;
  if (a.family == "path") {
    t = make_path(a.n);
  } else if (a.family == "star") {
    if (a.n < 1) throw std::invalid_argument("star: --n must be at least 1");
    t = make_star(a.n - 1);
  } else if (a.family == "spider") {
    std::vector<int> legs;
    std::stringstream ss(a.legs);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        const int leg = std::stoi(tok, &used);
        if (used != tok.size() || leg < 1) throw std::invalid_argument(tok);
        legs.push_back(leg);
      } catch (const std::exception&) {
        throw std::invalid_argument("spider: cannot parse --legs \"" + a.legs + "\"");
      }
    }
    if (legs.empty())
      throw std::invalid_argument("spider: --legs requires a comma-separated list");
    t = make_spider(legs);
  } else if (a.family == "tk") {
    t = make_tk(a.k).tree;
  } else if (a.family == "random") {
    t = random_tree(a.n, a.seed);
  } else {
    throw std::invalid_argument("unknown family \"" + a.family +
                                "\" (expected path|star|spider|tk|random)");
  }
  std::ostringstream text;
  write_tree(text, t);
  if (!a.emit.empty()) write_tree_file(a.emit, t);
  out << text.str();
  return 0;
}

struct SurveyArgs {
  int max_order = 0;
  std::string csv;
};

int cmd_survey(const SurveyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max_order < 1) throw std::invalid_argument("survey: --max-order must be at least 1");
  if (a.max_order > kSurveyOrderCap)
    throw CapacityError("survey: enumeration is capped at order 12");
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "id,canonical,n,contains_h,h,basic_cats,improved_cats,log2_bound,half_log2_bound\n";
  int id = 0;
  int violations = 0;
  {
    const int n = a.max_order;
    for (const Tree& t : enumerate_trees(n)) {
      const bool with_h = contains_H(t);
      const SolveResult res = hunter_number(t);
      const Schedule basic = basic_strategy(t);
      const VariantSchedule improved = improved_strategy(t);
      const int log2_bound = std::max(1, ceil_log2(n));
      const int half_bound = std::max(1, (ceil_log2(n) + 1) / 2);
      ordered_json row;
      row["id"] = id;
      row["canonical"] = canonical_form(t);
      row["n"] = n;
      row["contains_h"] = with_h;
      if (res.solved)
        row["h"] = res.h;
      else
        row["h"] = nullptr;
      row["basic_cats"] = basic.r;
      row["improved_cats"] = improved.schedule.r;
      row["log2_bound"] = log2_bound;
      row["half_log2_bound"] = half_bound;
      rows.push_back(row);
      csv << id << "," << canonical_form(t) << "," << n << "," << (with_h ? 1 : 0) << ","
          << (res.solved ? std::to_string(res.h) : std::string("")) << "," << basic.r << ","
          << improved.schedule.r << "," << log2_bound << "," << half_bound << "\n";
      const auto fail = [&](const std::string& what) {
        err << "survey invariant violated for row " << id << " (n=" << n << "): " << what
            << "\n";
        ++violations;
      };
      if (res.solved) {
        if ((res.h == 1) != !with_h) fail("h == 1 must match H-freeness");
        if (res.h > improved.schedule.r) fail("h exceeds the improved cat count");
      }
      if (improved.schedule.r > half_bound) fail("improved count exceeds ceil(log2(n)/2)");
      if (basic.r > log2_bound) fail("basic count exceeds ceil(log2 n)");
      ++id;
    }
  }
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw std::invalid_argument("cannot open output file: " + a.csv);
    f << csv.str();
  }
  out << rows.dump() << "\n";
  return violations ? 1 : 0;
}

struct LowerboundArgs {
  int k = 0;
  std::string eps = "1/20";
  int schedules = 10;
  int rounds = 0;  // 0: default 4k
  int c = -1;      // <0: corollary budget
  std::uint64_t seed = 1;
  bool audit = false;
  std::string adversary = "all";
};

int cmd_lowerbound(const LowerboundArgs& a, std::ostream& out) {
  if (a.k < 1) throw std::invalid_argument("lowerbound: --k must be at least 1");
  if (a.k > kLowerboundDepthCap)
    throw CapacityError("lowerbound: simulation capped at k = 20");
  if (a.schedules < 1)
    throw std::invalid_argument("lowerbound: --schedules must be at least 1");
  const Rational eps = parse_rational(a.eps);
  const int c = a.c >= 0 ? a.c : corollary_budget(a.k, BudgetVariant::Strong, eps);
  const int rounds = a.rounds > 0 ? a.rounds : 4 * a.k;
  const SubdividedTree st = make_tk(a.k);

  std::vector<std::string> generators;
  if (a.adversary == "all") {
    generators = {"random", "greedy", "sweep", "strategy"};
  } else if (a.adversary == "random" || a.adversary == "greedy" ||
             a.adversary == "sweep" || a.adversary == "strategy") {
    generators = {a.adversary};
  } else {
    throw std::invalid_argument("unknown adversary \"" + a.adversary +
                                "\" (expected all|random|greedy|sweep|strategy)");
  }

  const auto build = [&](const std::string& name, std::uint64_t seed) {
    if (name == "random") return uniform_random_schedule(st, c, rounds, seed);
    if (name == "greedy") return greedy_schedule(st, c, rounds, seed);
    if (name == "sweep") return sweep_schedule(st, c, rounds, seed);
    return truncated_strategy_schedule(st, c, rounds, seed);
  };

  ordered_json per_gen = ordered_json::array();
  std::uint64_t total = 0;
  std::uint64_t survived = 0;
  std::uint64_t audit_failures = 0;
  std::uint64_t min_count = UINT64_MAX;
  for (const std::string& name : generators) {
    std::uint64_t gen_survived = 0;
    std::uint64_t gen_audit_failures = 0;
    std::uint64_t gen_min = UINT64_MAX;
    for (int i = 0; i < a.schedules; ++i) {
      const Schedule s = build(name, a.seed + static_cast<std::uint64_t>(i));
      const SurvivalReport rep = survival_run(st, s, a.audit);
      ++total;
      if (rep.survives) ++gen_survived;
      if (!rep.audit_ok) ++gen_audit_failures;
      for (std::uint64_t cnt : rep.even_counts) gen_min = std::min(gen_min, cnt);
    }
    survived += gen_survived;
    audit_failures += gen_audit_failures;
    min_count = std::min(min_count, gen_min);
    ordered_json g;
    g["name"] = name;
    g["schedules"] = a.schedules;
    g["survived"] = gen_survived;
    g["audit_failures"] = gen_audit_failures;
    g["min_important_count"] = gen_min;
    per_gen.push_back(std::move(g));
  }

  ordered_json j;
  j["k"] = a.k;
  j["n_target"] = special_n(a.k);
  j["c"] = c;
  j["eps"] = std::to_string(eps.p) + "/" + std::to_string(eps.q);
  j["rounds"] = rounds;
  j["schedules"] = total;
  j["survived"] = survived;
  j["audit"] = a.audit;
  j["audit_failures"] = audit_failures;
  j["min_important_count"] = min_count;
  j["per_generator"] = std::move(per_gen);
  const bool ok = survived == total && audit_failures == 0;
  j["all_survive"] = survived == total;
  j["all_audits_ok"] = audit_failures == 0;
  out << j.dump() << "\n";
  return ok ? 0 : 1;
}

struct ArithArgs {
  std::string check;
  std::uint64_t limit = std::uint64_t{1} << 20;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  int k = 3;
  std::string eps;  // empty: weak bound
};

int cmd_arith(const ArithArgs& a, std::ostream& out) {
  ordered_json j;
  j["check"] = a.check;
  std::uint64_t bad = 0;
  if (a.check == "arithmetic") {
    const CheckReport rep = check_arithmetic_lemma(a.limit);
    j["limit"] = a.limit;
    j["checked"] = rep.checked;
    j["violations"] = rep.violations;
    bad = rep.violations;
  } else if (a.check == "approximate") {
    const std::uint64_t samples = a.samples ? a.samples : 100000;
    const CheckReport rep = check_approximate_lemma(samples, a.seed);
    j["samples"] = samples;
    j["seed"] = a.seed;
    j["checked"] = rep.checked;
    j["violations"] = rep.violations;
    bad = rep.violations;
  } else if (a.check == "boundary") {
    const BoundaryMode mode =
        a.samples ? BoundaryMode::Sample(a.samples, a.seed) : BoundaryMode::Exhaustive();
    BoundaryReport rep;
    if (a.eps.empty()) {
      rep = check_weak_boundary(a.k, mode);
      j["bound"] = "weak";
    } else {
      const Rational eps = parse_rational(a.eps);
      rep = check_eps_boundary(a.k, eps, mode);
      j["bound"] = "eps";
      j["eps"] = std::to_string(eps.p) + "/" + std::to_string(eps.q);
    }
    j["k"] = rep.k;
    j["mode"] = a.samples ? "sample" : "exhaustive";
    if (a.samples) j["seed"] = a.seed;
    j["checked"] = rep.checked;
    j["violations"] = rep.violations;
    j["intermediate_violations"] = rep.intermediate_violations;
    j["min_scaled_slack"] = rep.min_scaled_slack;
    j["slack_scale"] = rep.slack_scale;
    bad = rep.violations + rep.intermediate_violations;
  } else {
    throw std::invalid_argument("unknown check \"" + a.check +
                                "\" (expected arithmetic|approximate|boundary)");
  }
  out << j.dump() << "\n";
  return bad ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cats-vs-invisible-mouse toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Exact hunter number of a tree");
  solve->add_option("--tree", solve_args.tree, "tree file")->required();
  solve->add_option("--max-cats", solve_args.max_cats, "largest cat count to try");
  solve->add_option("--semantics", solve_args.semantics, "paper|stm");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a schedule against a tree");
  verify->add_option("--tree", verify_args.tree, "tree file")->required();
  verify->add_option("--schedule", verify_args.schedule, "schedule JSON file")->required();
  auto* verify_sem = verify->add_option("--semantics", verify_args.semantics,
                                        "override the schedule's convention");
  verify->add_flag("--trace", verify_args.trace, "include the round-by-round trace");

  StrategyArgs strategy_args;
  auto* strategy = app.add_subcommand("strategy", "Generate a winning schedule");
  strategy->add_option("--tree", strategy_args.tree, "tree file")->required();
  strategy->add_option("--algo", strategy_args.algo, "basic|improved");
  strategy->add_option("--emit", strategy_args.emit, "also write the schedule here");
  strategy->add_flag("--certify", strategy_args.certify, "verify the schedule wins");
  strategy->add_flag("--transform", strategy_args.transform,
                     "convert the variant schedule to the standard game");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Emit a tree from a named family");
  gen->add_option("--family", gen_args.family, "path|star|spider|tk|random")->required();
  gen->add_option("--n", gen_args.n, "tree order (path/star/random)");
  gen->add_option("--k", gen_args.k, "depth parameter (tk)");
  gen->add_option("--legs", gen_args.legs, "comma-separated leg lengths (spider)");
  gen->add_option("--seed", gen_args.seed, "random seed (random)");
  gen->add_option("--emit", gen_args.emit, "also write the tree here");

  SurveyArgs survey_args;
  auto* survey = app.add_subcommand("survey", "Solve every tree up to an order");
  survey->add_option("--max-order", survey_args.max_order, "largest order (<= 12)")
      ->required();
  survey->add_option("--csv", survey_args.csv, "also write rows as CSV here");

  LowerboundArgs lower_args;
  auto* lower = app.add_subcommand("lowerbound", "Mouse survival on subdivided trees");
  lower->add_option("--k", lower_args.k, "depth of the subdivided tree")->required();
  lower->add_option("--eps", lower_args.eps, "rational epsilon in (0, 1/4)");
  lower->add_option("--schedules", lower_args.schedules, "schedules per adversary");
  lower->add_option("--rounds", lower_args.rounds, "rounds per schedule (default 4k)");
  lower->add_option("--c", lower_args.c, "cat budget override");
  lower->add_option("--seed", lower_args.seed, "base seed");
  lower->add_flag("--audit", lower_args.audit, "audit the inductive step");
  lower->add_option("--adversary", lower_args.adversary,
                    "all|random|greedy|sweep|strategy");

  ArithArgs arith_args;
  auto* arith = app.add_subcommand("arith", "Counting-lemma checks");
  arith->add_option("--check", arith_args.check, "arithmetic|approximate|boundary")
      ->required();
  arith->add_option("--limit", arith_args.limit, "range bound (arithmetic)");
  arith->add_option("--samples", arith_args.samples, "sample count");
  arith->add_option("--seed", arith_args.seed, "sample seed");
  arith->add_option("--k", arith_args.k, "depth (boundary)");
  arith->add_option("--eps", arith_args.eps, "rational epsilon (boundary)");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("catmouse");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(storage.size());
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (solve->parsed()) return cmd_solve(solve_args, out);
    if (verify->parsed()) {
      if (verify_sem->count() == 0) verify_args.semantics.clear();
      return cmd_verify(verify_args, out);
    }
    if (strategy->parsed()) return cmd_strategy(strategy_args, out, err);
    if (gen->parsed()) return cmd_gen(gen_args, out);
    if (survey->parsed()) return cmd_survey(survey_args, out, err);
    if (lower->parsed()) return cmd_lowerbound(lower_args, out);
    if (arith->parsed()) return cmd_arith(arith_args, out);
    err << "no subcommand selected\n";
    return 2;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace catmouse::cli
