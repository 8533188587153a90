#include "catmouse/evasion.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "catmouse/engine.hpp"
#include "catmouse/rng.hpp"
#include "catmouse/strategy.hpp"

namespace catmouse {

namespace {

constexpr std::uint64_t kArithmeticCap = std::uint64_t{1} << 20;
constexpr std::uint64_t kBruteValueCap = std::uint64_t{1} << 12;
constexpr int kBruteTermCap = 6;
constexpr int kBruteExponentCap = 14;
constexpr std::uint64_t kSampleValueCap = std::uint64_t{1} << 18;
constexpr int kExhaustiveDepthCap = 3;
constexpr int kSampleDepthCap = 22;

// Can v be written as a sum of at most t signed powers of two with
// exponents <= e? Pruned by |v| <= t * 2^e.
bool reachable(long long v, int t, int e) {
  if (v == 0) return true;
  if (t == 0 || e < 0) return false;
  const long long cap = static_cast<long long>(t) << e;
  if (v > cap || -v > cap) return false;
  const long long p = 1ll << e;
  return reachable(v - p, t - 1, e) || reachable(v + p, t - 1, e) ||
         reachable(v, t, e - 1);
}

// Heap-order adjacency of the complete binary tree with bn vertices.
inline int heap_parent(int h) { return (h - 1) / 2; }

// Visits subsets X of the bn-vertex complete binary tree as pairs
// (|X|, |boundary(X)|), either all of them or a seeded Bernoulli sample.
template <typename Fn>
std::uint64_t enumerate_boundary(int k, const BoundaryMode& mode, Fn&& visit) {
  if (k < 1) throw std::invalid_argument("boundary check: k must be positive");
  if (mode.exhaustive) {
    if (k > kExhaustiveDepthCap)
      throw std::invalid_argument("boundary check: exhaustive mode is limited to k <= 3");
    const int bn = (1 << (k + 1)) - 1;
    std::vector<std::uint32_t> adj(bn, 0);
    for (int h = 0; h < bn; ++h) {
      if (h > 0) adj[h] |= std::uint32_t{1} << heap_parent(h);
      if (2 * h + 1 < bn) adj[h] |= std::uint32_t{1} << (2 * h + 1);
      if (2 * h + 2 < bn) adj[h] |= std::uint32_t{1} << (2 * h + 2);
    }
    const std::uint32_t full = (std::uint32_t{1} << bn) - 1;
    for (std::uint32_t mask = 0;; ++mask) {
      std::uint32_t nb = 0;
      for (std::uint32_t m = mask; m; m &= m - 1)
        nb |= adj[__builtin_ctz(m)];
      visit(__builtin_popcount(mask), __builtin_popcount(nb & ~mask));
      if (mask == full) break;
    }
    return std::uint64_t{1} << bn;
  }
  if (k > kSampleDepthCap)
    throw CapacityError("boundary check: sampled mode is limited to k <= 22");
  const int bn = (1 << (k + 1)) - 1;
  Rng rng(mode.seed);
  std::vector<std::uint32_t> in_stamp(bn, 0), out_stamp(bn, 0);
  std::uint32_t gen = 0;
  std::vector<int> xs;
  for (std::uint64_t i = 0; i < mode.samples; ++i) {
    ++gen;
    // Random density, then independent inclusion: covers sparse and dense X.
    const std::uint64_t thr = rng.next_u64();
    xs.clear();
    for (int h = 0; h < bn; ++h) {
      if (rng.next_u64() < thr) {
        xs.push_back(h);
        in_stamp[h] = gen;
      }
    }
    int b = 0;
    const auto touch = [&](int h) {
      if (h < bn && in_stamp[h] != gen && out_stamp[h] != gen) {
        out_stamp[h] = gen;
        ++b;
      }
    };
    for (int h : xs) {
      if (h > 0) touch(heap_parent(h));
      touch(2 * h + 1);
      touch(2 * h + 2);
    }
    visit(static_cast<int>(xs.size()), b);
  }
  return mode.samples;
}

// gamma(n) <= |boundary| + log2|boundary| + 4; with an empty boundary the
// subset is empty or everything, so gamma(n) <= 4 suffices.
bool intermediate_bound_holds(int g, int m) {
  const int d = g - m - 4;
  if (d <= 0) return true;
  return d < 31 && (1 << d) <= m;
}

std::uint64_t count_intersection(const PositionSet& a, const PositionSet& b) {
  const std::vector<std::uint64_t>& aw = a.words();
  const std::vector<std::uint64_t>& bw = b.words();
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < aw.size(); ++i)
    c += static_cast<std::uint64_t>(__builtin_popcountll(aw[i] & bw[i]));
  return c;
}

bool contains_vertex(const std::vector<int>& shot, int v) {
  return std::find(shot.begin(), shot.end(), v) != shot.end();
}

// Inductive-step bookkeeping for one even round: X is the n_target
// lowest-heap-id surviving importants, examined together with its boundary.
StepAudit make_step_audit(const SubdividedTree& st, const PositionSet& a,
                          const std::vector<int>& shots1,
                          const std::vector<int>& shots2, std::uint64_t n_target,
                          int c, int even_round) {
  const int bn = st.bk_n();
  StepAudit sa;
  sa.even_round = even_round;

  std::vector<int> xh;
  for (int h = 0; h < bn && xh.size() < n_target; ++h)
    if (a.test(st.b_inv[h])) xh.push_back(h);
  sa.x_size = static_cast<int>(xh.size());

  // role: 0 outside, 1 in X, 2 in the boundary.
  std::vector<char> role(bn, 0);
  for (int h : xh) role[h] = 1;
  std::vector<int> sh = xh;
  const auto touch = [&](int h) {
    if (h < bn && role[h] == 0) {
      role[h] = 2;
      sh.push_back(h);
    }
  };
  for (int h : xh) {
    if (h > 0) touch(heap_parent(h));
    touch(2 * h + 1);
    touch(2 * h + 2);
  }
  sa.boundary = static_cast<int>(sh.size()) - sa.x_size;
  std::sort(sh.begin(), sh.end());
  const int sn = static_cast<int>(sh.size());
  const auto pos_of = [&](int h) {
    return static_cast<int>(std::lower_bound(sh.begin(), sh.end(), h) - sh.begin());
  };

  // Union-find over the members of X ∪ boundary, joined along tree edges.
  std::vector<int> uf(sn);
  std::iota(uf.begin(), uf.end(), 0);
  const auto find = [&](int x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  for (int i = 0; i < sn; ++i) {
    const int h = sh[i];
    if (h > 0 && role[heap_parent(h)] != 0) {
      const int ra = find(i);
      const int rb = find(pos_of(heap_parent(h)));
      if (ra != rb) uf[ra] = rb;
    }
  }

  std::vector<int> incident(sn, 0), uncut(sn, 0);
  std::vector<int> comp_index(sn, -1);
  for (int i = 0; i < sn; ++i) {
    const int r = find(i);
    if (comp_index[r] < 0) {
      comp_index[r] = static_cast<int>(sa.components.size());
      sa.components.push_back({});
    }
  }
  for (int i = 0; i < sn; ++i) ++sa.components[comp_index[find(i)]].vertices;

  for (int i = 0; i < sn; ++i) {
    const int h = sh[i];
    if (h == 0 || role[heap_parent(h)] == 0) continue;
    const int j = pos_of(heap_parent(h));
    const bool cut = contains_vertex(shots1, st.edge_subdivider[h]);
    ++incident[i];
    ++incident[j];
    if (cut) {
      ++sa.components[comp_index[find(i)]].edges_cut;
    } else {
      ++uncut[i];
      ++uncut[j];
    }
  }
  for (int i = 0; i < sn; ++i) {
    ComponentAudit& ca = sa.components[comp_index[find(i)]];
    if (uncut[i] == 0) ++ca.isolated;
    if (contains_vertex(shots2, st.b_inv[sh[i]])) ++ca.shots_in;
  }

  sa.parts_hold = true;
  for (ComponentAudit& ca : sa.components) {
    ca.w = (ca.edges_cut == ca.vertices - 1) ? 1 : 0;
    sa.edge_total += ca.edges_cut;
    sa.shot_total += ca.shots_in;
    sa.w_total += ca.w;
    if (ca.isolated > ca.edges_cut + ca.w) sa.parts_hold = false;
  }
  if (sa.edge_total > c || sa.shot_total > c) sa.parts_hold = false;
  return sa;
}

std::vector<int> truncate_round(const std::vector<int>& round, int c) {
  const int take = std::min<int>(c, static_cast<int>(round.size()));
  return std::vector<int>(round.begin(), round.begin() + take);
}

void check_generator_args(const SubdividedTree& st, int c, int rounds) {
  if (c < 0 || c > st.tree.n())
    throw std::invalid_argument("adversary schedule: shot budget out of range");
  if (rounds < 0)
    throw std::invalid_argument("adversary schedule: negative round count");
}

}  // namespace

int gamma(std::uint64_t n) {
  return __builtin_popcountll((n >> 1) & ~n);
}

int beta(std::uint64_t n) {
  if (n >= (std::uint64_t{1} << 62))
    throw std::invalid_argument("beta: value too large");
  int w = 0;
  while (n != 0) {
    if (n & 1) {
      ++w;
      // Non-adjacent form: emit -1 before a run of ones, +1 otherwise.
      if ((n & 3) == 3)
        ++n;
      else
        --n;
    }
    n >>= 1;
  }
  return w;
}

int beta_bruteforce(std::uint64_t n, int max_terms) {
  if (n > kBruteValueCap)
    throw CapacityError("beta_bruteforce: value above the brute-force guard");
  if (max_terms < 0 || max_terms > kBruteTermCap)
    throw CapacityError("beta_bruteforce: term budget above the guard");
  if (n == 0) return 0;
  for (int t = 1; t <= max_terms; ++t)
    if (reachable(static_cast<long long>(n), t, kBruteExponentCap)) return t;
  throw CapacityError("beta_bruteforce: no representation within the term budget");
}

std::uint64_t special_n(int k) {
  if (k < 1 || k > 62) throw std::invalid_argument("special_n: k out of range");
  std::uint64_t n = 0;
  for (int i = 0; i < k / 2; ++i) n = (n << 2) | 2;
  return n;
}

std::vector<int> important_boundary(const SubdividedTree& st,
                                    const std::vector<int>& members) {
  const int bn = st.bk_n();
  std::vector<char> in(bn, 0), out(bn, 0);
  for (int v : members) {
    if (v < 0 || v >= st.tree.n() || !st.important[v])
      throw std::invalid_argument("important_boundary: member is not important");
    in[st.b_map[v]] = 1;
  }
  const auto touch = [&](int h) {
    if (h < bn && !in[h]) out[h] = 1;
  };
  for (int h = 0; h < bn; ++h) {
    if (!in[h]) continue;
    if (h > 0) touch(heap_parent(h));
    touch(2 * h + 1);
    touch(2 * h + 2);
  }
  std::vector<int> res;
  for (int h = 0; h < bn; ++h)
    if (out[h]) res.push_back(st.b_inv[h]);
  std::sort(res.begin(), res.end());
  return res;
}

Rational parse_rational(const std::string& s) {
  const auto bad = [&s] {
    return std::invalid_argument("parse_rational: cannot parse \"" + s + "\"");
  };
  const auto parse_digits = [&bad](const std::string& d) {
    if (d.empty() || d.size() > 18) throw bad();
    for (char ch : d)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw bad();
    return std::stoll(d);
  };
  if (s.empty()) throw bad();
  long long p = 0;
  long long q = 1;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    p = parse_digits(s.substr(0, slash));
    q = parse_digits(s.substr(slash + 1));
    if (q == 0) throw bad();
  } else if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    const long long fp = parse_digits(frac);
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    p = (whole.empty() ? 0 : parse_digits(whole)) * scale + fp;
    q = scale;
  } else {
    p = parse_digits(s);
  }
  if (const long long g = std::gcd(p, q); g > 1) {
    p /= g;
    q /= g;
  }
  return {p, q};
}

BoundaryReport check_weak_boundary(int k, const BoundaryMode& mode) {
  BoundaryReport rep;
  rep.k = k;
  rep.slack_scale = 6;
  long long best = LLONG_MAX;
  rep.checked = enumerate_boundary(k, mode, [&](int x, int b) {
    // 6|boundary| >= gamma(|X|) - 2, kept as an integer slack.
    const long long slack =
        6ll * b - gamma(static_cast<std::uint64_t>(x)) + 2;
    if (slack < 0) ++rep.violations;
    best = std::min(best, slack);
  });
  rep.min_scaled_slack = rep.checked ? best : 0;
  return rep;
}

BoundaryReport check_eps_boundary(int k, const Rational& eps,
                                  const BoundaryMode& mode) {
  if (eps.q < 1 || eps.p < 0)
    throw std::invalid_argument("check_eps_boundary: malformed epsilon");
  BoundaryReport rep;
  rep.k = k;
  rep.slack_scale = eps.q;
  long long best = LLONG_MAX;
  rep.checked = enumerate_boundary(k, mode, [&](int x, int b) {
    const int g = gamma(static_cast<std::uint64_t>(x));
    // |boundary| >= gamma(|X|) - eps*k, scaled by the denominator of eps.
    const long long slack = eps.q * (b - static_cast<long long>(g)) + eps.p * k;
    if (slack < 0) ++rep.violations;
    best = std::min(best, slack);
    if (!intermediate_bound_holds(g, b)) ++rep.intermediate_violations;
  });
  rep.min_scaled_slack = rep.checked ? best : 0;
  return rep;
}

CheckReport check_arithmetic_lemma(std::uint64_t limit, bool parallel) {
  if (limit > kArithmeticCap)
    throw CapacityError("check_arithmetic_lemma: limit above the desk guard");
  std::uint64_t violations = 0;
  if (parallel) {
    long long v = 0;
    const long long lim = static_cast<long long>(limit);
#pragma omp parallel for schedule(static) reduction(+ : v)
    for (long long n = 1; n <= lim; ++n)
      if (beta(static_cast<std::uint64_t>(n)) <
          gamma(static_cast<std::uint64_t>(n)))
        ++v;
    violations = static_cast<std::uint64_t>(v);
  } else {
    for (std::uint64_t n = 1; n <= limit; ++n)
      if (beta(n) < gamma(n)) ++violations;
  }
  return {limit, violations};
}

CheckReport check_approximate_lemma(std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t violations = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t n = rng.below(kSampleValueCap) + 1;
    std::uint64_t m = n;
    switch (rng.below(3)) {
      case 0:
        m = rng.below(kSampleValueCap) + 1;
        break;
      case 1: {
        // Perturb by a power of two: the tight case of the bound.
        const std::uint64_t d = std::uint64_t{1} << rng.below_int(18);
        m = (n + d <= kSampleValueCap) ? n + d : (n > d ? n - d : n);
        break;
      }
      default:
        break;
    }
    const std::uint64_t diff = n > m ? n - m : m - n;
    // Smallest positive k with |m - n| <= 2^k.
    int kk = 1;
    while ((std::uint64_t{1} << kk) < diff) ++kk;
    if (std::abs(beta(m) - beta(n)) > kk) ++violations;
  }
  return {samples, violations};
}

int corollary_budget(int k, BudgetVariant variant, const Rational& eps) {
  if (k < 1) throw std::invalid_argument("corollary_budget: k must be positive");
  if (variant == BudgetVariant::Weak) return k / 40;
  if (eps.q < 1 || eps.p < 1 || 4 * eps.p >= eps.q)
    throw std::invalid_argument("corollary_budget: eps must lie in (0, 1/4)");
  return static_cast<int>(((eps.q - 4 * eps.p) * k) / (4 * eps.q));
}

SurvivalReport survival_run(const SubdividedTree& st, const Schedule& s,
                            bool audit) {
  const Tree& t = st.tree;
  SurvivalReport rep;
  rep.k = st.k;
  rep.n_target = special_n(st.k);
  rep.rounds = static_cast<int>(s.rounds.size());
  for (const std::vector<int>& round : s.rounds) {
    rep.c = std::max(rep.c, static_cast<int>(round.size()));
    for (int v : round)
      if (v < 0 || v >= t.n())
        throw std::invalid_argument("survival_run: shot out of range");
  }

  PositionSet imp(t.n());
  for (int v = 0; v < t.n(); ++v)
    if (st.important[v]) imp.set(v);

  PositionSet a = PositionSet::all(t.n());
  rep.even_counts.push_back(count_intersection(a, imp));
  int pending = -1;
  for (int i = 0; i < rep.rounds; ++i) {
    if (audit && i % 2 == 0 && i + 2 <= rep.rounds) {
      rep.audits.push_back(make_step_audit(st, a, s.rounds[i], s.rounds[i + 1],
                                           rep.n_target, rep.c, i));
      pending = static_cast<int>(rep.audits.size()) - 1;
    }
    a = step(a, s.rounds[i], t, Convention::MoveThenShoot);
    if ((i + 1) % 2 == 0) {
      const std::uint64_t cnt = count_intersection(a, imp);
      rep.even_counts.push_back(cnt);
      if (pending >= 0 && rep.audits[pending].even_round + 2 == i + 1) {
        StepAudit& sa = rep.audits[pending];
        sa.next_important = static_cast<int>(cnt);
        sa.chain_holds =
            static_cast<long long>(cnt) >=
            static_cast<long long>(sa.x_size) + sa.boundary - 2ll * rep.c - sa.w_total;
        pending = -1;
      }
    }
  }

  rep.survives = true;
  for (std::uint64_t cnt : rep.even_counts)
    if (cnt < rep.n_target) rep.survives = false;
  for (const StepAudit& sa : rep.audits)
    if (!sa.parts_hold || !sa.chain_holds) rep.audit_ok = false;
  return rep;
}

Schedule uniform_random_schedule(const SubdividedTree& st, int c, int rounds,
                                 std::uint64_t seed) {
  check_generator_args(st, c, rounds);
  Rng rng(seed);
  Schedule s;
  s.r = std::max(1, c);
  s.rounds.reserve(rounds);
  for (int i = 0; i < rounds; ++i) s.rounds.push_back(rng.sample(st.tree.n(), c));
  return s;
}

Schedule greedy_schedule(const SubdividedTree& st, int c, int rounds,
                         std::uint64_t seed) {
  check_generator_args(st, c, rounds);
  const Tree& t = st.tree;
  Rng rng(seed);
  Schedule s;
  s.r = std::max(1, c);
  s.rounds.reserve(rounds);
  PositionSet a = PositionSet::all(t.n());
  PositionSet na(t.n());
  std::vector<std::pair<long long, int>> ranked;
  for (int i = 0; i < rounds; ++i) {
    neighborhood_into(t, a, na);
    ranked.clear();
    for (int v : na.to_vector()) {
      long long live = 0;
      for (int u : t.neighbors(v))
        if (a.test(u)) ++live;
      // Jitter below the score granularity keeps ties seed-dependent.
      ranked.emplace_back(-(live * 16 + static_cast<long long>(rng.below(16))), v);
    }
    const std::size_t take = std::min<std::size_t>(c, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + take, ranked.end());
    std::vector<int> shot;
    for (std::size_t j = 0; j < take; ++j) shot.push_back(ranked[j].second);
    std::sort(shot.begin(), shot.end());
    s.rounds.push_back(shot);
    a = step(a, s.rounds.back(), t, Convention::MoveThenShoot);
  }
  return s;
}

Schedule sweep_schedule(const SubdividedTree& st, int c, int rounds,
                        std::uint64_t seed) {
  check_generator_args(st, c, rounds);
  std::vector<int> subs;
  subs.reserve(st.bk_n() - 1);
  for (int h = 1; h < st.bk_n(); ++h)
    subs.push_back(st.edge_subdivider[h]);
  Schedule s;
  s.r = std::max(1, c);
  s.rounds.reserve(rounds);
  if (subs.empty() || c == 0) {
    s.rounds.assign(rounds, {});
    return s;
  }
  const std::uint64_t m = subs.size();
  const std::uint64_t offset = seed % m;
  for (int i = 0; i < rounds; ++i) {
    std::vector<int> shot;
    for (int j = 0; j < c && j < static_cast<int>(m); ++j)
      shot.push_back(subs[(offset + static_cast<std::uint64_t>(i) * c + j) % m]);
    std::sort(shot.begin(), shot.end());
    s.rounds.push_back(std::move(shot));
  }
  return s;
}

Schedule truncated_strategy_schedule(const SubdividedTree& st, int c, int rounds,
                                     std::uint64_t seed) {
  check_generator_args(st, c, rounds);
  const Schedule base = basic_strategy(st.tree);
  Schedule s;
  s.r = std::max(1, c);
  s.rounds.reserve(rounds);
  const std::uint64_t len = base.rounds.size();
  const std::uint64_t offset = len ? seed % len : 0;
  for (int i = 0; i < rounds; ++i)
    s.rounds.push_back(
        truncate_round(base.rounds[(offset + static_cast<std::uint64_t>(i)) % len], c));
  return s;
}

}  // namespace catmouse
