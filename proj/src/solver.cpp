#include "catmouse/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace catmouse {

namespace {

std::vector<std::uint32_t> neighbor_masks(const Tree& t) {
  std::vector<std::uint32_t> nm(t.n(), 0);
  for (int v = 0; v < t.n(); ++v)
    for (int u : t.neighbors(v)) nm[v] |= 1u << u;
  return nm;
}

inline std::uint32_t nbhd(std::uint32_t a, const std::vector<std::uint32_t>& nm) {
  std::uint32_t out = 0;
  while (a) {
    out |= nm[__builtin_ctz(a)];
    a &= a - 1;
  }
  return out;
}

inline std::uint32_t succ_mask(std::uint32_t a, std::uint32_t c, Convention conv,
                               const std::vector<std::uint32_t>& nm) {
  return conv == Convention::MoveThenShoot ? (nbhd(a, nm) & ~c) : nbhd(a & ~c, nm);
}

void gen_shots(const std::vector<int>& cand, size_t idx, std::uint32_t cur, int left,
               std::vector<std::uint32_t>& out) {
  out.push_back(cur);
  if (left == 0) return;
  for (size_t i = idx; i < cand.size(); ++i)
    gen_shots(cand, i + 1, cur | (1u << cand[i]), left - 1, out);
}

std::vector<std::uint32_t> shots_for(std::uint32_t a, int r, Convention conv,
                                     const std::vector<std::uint32_t>& nm) {
  std::uint32_t pool = (conv == Convention::MoveThenShoot) ? nbhd(a, nm) : a;
  std::vector<int> cand;
  while (pool) {
    cand.push_back(__builtin_ctz(pool));
    pool &= pool - 1;
  }
  std::vector<std::uint32_t> out;
  gen_shots(cand, 0, 0, r, out);
  return out;
}

struct Node {
  std::uint32_t state;
  std::int32_t parent;  // index in the previous layer
  std::uint32_t shot;   // shot that produced this state
};

struct Cand {
  std::uint32_t succ;
  std::uint32_t shot;
  std::int32_t parent;
};

}  // namespace

std::vector<std::uint32_t> pruned_shots(std::uint32_t a_mask, const Tree& t, int r,
                                        Convention conv) {
  return shots_for(a_mask, r, conv, neighbor_masks(t));
}

WinSearch cats_win_from(const Tree& t, std::uint32_t start_mask, int r,
                        const SolverOptions& opt) {
  const int n = t.n();
  const int cap = std::min(opt.capacity_n, 24);
  if (n > cap)
    throw CapacityError("solver: tree order " + std::to_string(n) +
                        " exceeds the subset-search guard of " + std::to_string(cap));
  if (start_mask == 0) throw std::invalid_argument("solver: empty start set");
  if (r < 1) throw std::invalid_argument("solver: r must be at least 1");

  const std::vector<std::uint32_t> nm = neighbor_masks(t);
  std::unordered_set<std::uint32_t> visited;
  visited.reserve(1u << std::min(n, 16));
  visited.insert(start_mask);
  std::vector<std::uint32_t> visited_list;
  if (opt.subset_dominance) visited_list.push_back(start_mask);
  std::vector<std::vector<Node>> layers;
  layers.push_back({{start_mask, -1, 0}});

  auto make_witness = [&](int depth, int idx, std::uint32_t last_shot) {
    std::vector<std::uint32_t> shots{last_shot};
    for (int d = depth, i = idx; d > 0; --d) {
      shots.push_back(layers[d][i].shot);
      i = layers[d][i].parent;
    }
    std::reverse(shots.begin(), shots.end());
    Schedule s;
    s.r = r;
    for (std::uint32_t m : shots) {
      std::vector<int> round;
      while (m) {
        round.push_back(__builtin_ctz(m));
        m &= m - 1;
      }
      s.rounds.push_back(std::move(round));
    }
    return s;
  };

  for (int depth = 0;; ++depth) {
    const std::vector<Node>& layer = layers[depth];
    std::vector<Cand> cands;
    if (opt.parallel && layer.size() >= 16) {
      // static scheduling assigns ascending contiguous blocks per thread, so
      // concatenating per-thread buffers reproduces the serial order exactly
      const int nt = omp_get_max_threads();
      std::vector<std::vector<Cand>> bufs(nt);
#pragma omp parallel
      {
        std::vector<Cand>& buf = bufs[omp_get_thread_num()];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(layer.size()); ++i) {
          const std::uint32_t a = layer[i].state;
          for (std::uint32_t c : shots_for(a, r, opt.convention, nm))
            buf.push_back({succ_mask(a, c, opt.convention, nm), c,
                           static_cast<std::int32_t>(i)});
        }
      }
      for (auto& b : bufs) cands.insert(cands.end(), b.begin(), b.end());
    } else {
      for (size_t i = 0; i < layer.size(); ++i) {
        const std::uint32_t a = layer[i].state;
        for (std::uint32_t c : shots_for(a, r, opt.convention, nm))
          cands.push_back({succ_mask(a, c, opt.convention, nm), c,
                           static_cast<std::int32_t>(i)});
      }
    }
    std::vector<Node> next;
    for (const Cand& cd : cands) {
      if (cd.succ == 0) {
        WinSearch ws;
        ws.win = true;
        ws.witness = make_witness(depth, cd.parent, cd.shot);
        ws.explored = visited.size();
        return ws;
      }
      if (visited.count(cd.succ)) continue;
      if (opt.subset_dominance) {
        bool dominated = false;
        for (std::uint32_t w : visited_list)
          if ((w & ~cd.succ) == 0) {
            dominated = true;
            break;
          }
        if (dominated) continue;
      }
      visited.insert(cd.succ);
      if (opt.subset_dominance) visited_list.push_back(cd.succ);
      next.push_back({cd.succ, cd.parent, cd.shot});
    }
    if (next.empty()) {
      WinSearch ws;
      ws.explored = visited.size();
      return ws;
    }
    layers.push_back(std::move(next));
  }
}

WinSearch cats_win(const Tree& t, int r, const SolverOptions& opt) {
  const int n = t.n();
  std::uint32_t all = (n >= 32) ? ~0u : ((1u << n) - 1);
  return cats_win_from(t, all, r, opt);
}

SolveResult hunter_number(const Tree& t, const SolverOptions& opt) {
  SolveResult res;
  res.n = t.n();
  for (int r = 1; r <= opt.max_cats; ++r) {
    WinSearch ws = cats_win(t, r, opt);
    res.per_r.push_back({r, ws.win, ws.explored});
    if (ws.win) {
      res.solved = true;
      res.h = r;
      res.witness = std::move(ws.witness);
      break;
    }
  }
  return res;
}

}  // namespace catmouse
