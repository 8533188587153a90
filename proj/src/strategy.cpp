#include "catmouse/strategy.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catmouse/solver.hpp"

namespace catmouse {

namespace {

// Sub-forest piece lifted to the ids of the tree the core schedule targets.
// start_class is the piece-local bipartition class that can hold the mouse
// when the piece's cleaning slot begins; 0 means that side is empty (a lone
// vertex of the wrong class) and the slot contributes no rounds.
struct Piece {
  Tree tree;
  std::vector<int> to_host;
  int start_class = 0;
};

struct CleanResult {
  std::vector<std::vector<int>> rounds;  // piece-local ids, even length
  int cats = 0;
};

struct CoreResult {
  std::vector<std::vector<int>> rounds;
  std::vector<StageInfo> stages;
  int cats = 1;
  int start_class = 1;  // canonical class of the centre in its own tree
};

CoreResult improved_core(const Tree& t);

int rounds_width(const std::vector<std::vector<int>>& rounds) {
  int w = 0;
  for (const auto& r : rounds) w = std::max<int>(w, r.size());
  return w;
}

std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> m(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) m[i] = outer[inner[i]];
  return m;
}

// Even-length schedule clearing a mouse that starts on the given local class
// when the schedule's first round fires.
CleanResult clean_piece(const Tree& p, int start_class) {
  CleanResult out;
  if (start_class == 0) return out;
  if (p.n() <= 9) {
    const Bipartition bip = bipartition(p);
    std::uint32_t mask = 0;
    for (int x = 0; x < p.n(); ++x)
      if (bip.side[x] == start_class) mask |= std::uint32_t{1} << x;
    if (mask == 0) return out;
    const WinSearch ws = cats_win_from(p, mask, 1);
    if (!ws.win) throw std::logic_error("strategy: one-cat base clear failed");
    out.rounds = ws.witness.rounds;
    if (out.rounds.size() % 2 != 0) out.rounds.emplace_back();
    out.cats = rounds_width(out.rounds);
    return out;
  }
  CoreResult core = improved_core(p);
  out.cats = core.cats;
  if (core.start_class == start_class) {
    out.rounds = std::move(core.rounds);
  } else {
    // One wait round shifts the mouse onto the core's start class; a closing
    // wait round keeps the total length even.
    out.rounds.reserve(core.rounds.size() + 2);
    out.rounds.emplace_back();
    for (auto& r : core.rounds) out.rounds.push_back(std::move(r));
    out.rounds.emplace_back();
  }
  return out;
}

// Emits stages: fixed per-parity guard shots overlaid with sequential piece
// cleaning slots, padded with guard-only rounds up to a minimum length.
struct CoreBuilder {
  std::vector<std::vector<int>> rounds;
  std::vector<StageInfo> stages;
  int soldiers = 0;

  int guard_for(int start, int odd_guard, int even_guard) const {
    const int offset = static_cast<int>(rounds.size()) - start;
    return (offset % 2 == 0) ? odd_guard : even_guard;
  }

  void finish(const std::string& name, int start, int odd_guard, int even_guard) {
    const int len = static_cast<int>(rounds.size()) - start;
    if (len > 0) stages.push_back(StageInfo{name, start, len, odd_guard, even_guard});
  }

  void run_stage(const std::string& name, int odd_guard, int even_guard,
                 const std::vector<Piece>& pieces, int min_pairs) {
    const int start = static_cast<int>(rounds.size());
    for (const Piece& p : pieces) {
      CleanResult cr = clean_piece(p.tree, p.start_class);
      soldiers = std::max(soldiers, cr.cats);
      for (const auto& local : cr.rounds) {
        std::vector<int> shot;
        shot.reserve(local.size() + 1);
        const int g = guard_for(start, odd_guard, even_guard);
        if (g >= 0) shot.push_back(g);
        for (int x : local) shot.push_back(p.to_host[x]);
        std::sort(shot.begin(), shot.end());
        rounds.push_back(std::move(shot));
      }
    }
    while (static_cast<int>(rounds.size()) - start < 2 * min_pairs) {
      const int g = guard_for(start, odd_guard, even_guard);
      if (g >= 0)
        rounds.push_back(std::vector<int>{g});
      else
        rounds.emplace_back();
    }
    finish(name, start, odd_guard, even_guard);
  }

  void fixed_stage(const std::string& name, std::vector<int> odd_shots,
                   std::vector<int> even_shots, int odd_guard, int even_guard) {
    const int start = static_cast<int>(rounds.size());
    soldiers = std::max<int>(
        soldiers, static_cast<int>(std::max(odd_shots.size(), even_shots.size())) - 1);
    std::sort(odd_shots.begin(), odd_shots.end());
    std::sort(even_shots.begin(), even_shots.end());
    rounds.push_back(std::move(odd_shots));
    rounds.push_back(std::move(even_shots));
    finish(name, start, odd_guard, even_guard);
  }
};

// Data for a big component whose centre shares the tree centre's class: its
// centre b, the gate (b's neighbour toward the attachment vertex) and the
// far/near pieces left after removing b and the gate.
struct MixedData {
  int b_host = -1;
  int gate_host = -1;
  int a_host = -1;
  std::vector<Piece> far;
  std::vector<Piece> near_side;
};

int local_index(const std::vector<int>& to_host, int host) {
  return static_cast<int>(std::lower_bound(to_host.begin(), to_host.end(), host) -
                          to_host.begin());
}

CoreResult improved_core(const Tree& t) {
  const DecompositionPlan plan = decompose(t);
  const int v = plan.centre;
  const Bipartition bip = bipartition(t);
  const int vclass = bip.side[v];

  auto make_piece = [&](Tree tr, std::vector<int> to_host) {
    Piece p{std::move(tr), std::move(to_host), 0};
    const int cls = (bip.side[p.to_host[0]] == vclass) ? 1 : 2;
    p.start_class = (p.tree.n() == 1 && cls == 2) ? 0 : cls;
    return p;
  };

  auto mixed_info = [&](const BigComponent& bc) {
    MixedData md;
    const Tree& ct = bc.comp.tree;
    const std::vector<int>& to_host = bc.comp.to_parent;
    md.b_host = bc.b;
    md.a_host = bc.attach;
    const int b_local = local_index(to_host, bc.b);
    const int a_local = local_index(to_host, bc.attach);
    const Forest sub = remove_vertex(ct, b_local);
    std::vector<int> sub_comp_of(ct.n(), -1);
    for (std::size_t ci = 0; ci < sub.components.size(); ++ci)
      for (int lv : sub.components[ci].to_parent) sub_comp_of[lv] = static_cast<int>(ci);
    const int plus_idx = sub_comp_of[a_local];
    int gate_local = -1;
    for (int nb : ct.neighbors(b_local))
      if (sub_comp_of[nb] == plus_idx) gate_local = nb;
    if (gate_local < 0) throw std::logic_error("strategy: gate vertex not found");
    md.gate_host = to_host[gate_local];
    for (std::size_t ci = 0; ci < sub.components.size(); ++ci) {
      if (static_cast<int>(ci) == plus_idx) continue;
      const auto& c = sub.components[ci];
      md.far.push_back(make_piece(c.tree, compose(to_host, c.to_parent)));
    }
    const ForestComponent& plus = sub.components[plus_idx];
    if (plus.tree.n() > 1) {
      const int gate_in_plus = local_index(plus.to_parent, gate_local);
      const Forest star = remove_vertex(plus.tree, gate_in_plus);
      for (const auto& c : star.components)
        md.near_side.push_back(
            make_piece(c.tree, compose(to_host, compose(plus.to_parent, c.to_parent))));
    }
    return md;
  };

  // Pieces of an opposite-class big component: the components left after
  // removing its centre, attachment-side component first.
  auto opposite_pieces = [&](const BigComponent& bc) {
    std::vector<Piece> out;
    const Tree& ct = bc.comp.tree;
    const std::vector<int>& to_host = bc.comp.to_parent;
    const int b_local = local_index(to_host, bc.b);
    const Forest sub = remove_vertex(ct, b_local);
    int plus_idx = -1;
    if (bc.attach != bc.b) {
      const int a_local = local_index(to_host, bc.attach);
      for (std::size_t ci = 0; ci < sub.components.size(); ++ci) {
        const auto& tp = sub.components[ci].to_parent;
        if (std::binary_search(tp.begin(), tp.end(), a_local)) {
          plus_idx = static_cast<int>(ci);
          break;
        }
      }
    }
    auto add = [&](const ForestComponent& c) {
      out.push_back(make_piece(c.tree, compose(to_host, c.to_parent)));
    };
    if (plus_idx >= 0) add(sub.components[plus_idx]);
    for (std::size_t ci = 0; ci < sub.components.size(); ++ci)
      if (static_cast<int>(ci) != plus_idx) add(sub.components[ci]);
    return out;
  };

  // Remnants of the third mixed component once its attachment vertex and
  // centre are both covered by the stage guards.
  auto third_pieces = [&](const BigComponent& bc) {
    std::vector<Piece> out;
    const Tree& ct = bc.comp.tree;
    const std::vector<int>& to_host = bc.comp.to_parent;
    const Forest rest = remove_vertices(
        ct, {local_index(to_host, bc.attach), local_index(to_host, bc.b)});
    for (const auto& c : rest.components)
      out.push_back(make_piece(c.tree, compose(to_host, c.to_parent)));
    return out;
  };

  std::vector<const BigComponent*> mixed;
  std::vector<const BigComponent*> opposite;
  for (const BigComponent& bc : plan.big)
    (bc.centre_in_v1 ? mixed : opposite).push_back(&bc);
  const int m = static_cast<int>(mixed.size());

  std::vector<Piece> small_pieces;
  for (const auto& c : plan.small_comps)
    small_pieces.push_back(make_piece(c.tree, c.to_parent));

  MixedData d1, d2, d3;
  if (m >= 1) d1 = mixed_info(*mixed[0]);
  if (m >= 2) d2 = mixed_info(*mixed[1]);
  if (m == 3) d3 = mixed_info(*mixed[2]);

  CoreBuilder bld;

  // Opening: clear the first mixed component while its centre still shields
  // the rest of the tree, then hand the seal from its centre to the gate and
  // finally to the tree centre.
  if (m >= 1) {
    if (!d1.far.empty()) bld.run_stage("clean-first-far", -1, d1.b_host, d1.far, 1);
    bld.run_stage("seal-first-gate", d1.gate_host, d1.b_host, {}, 1);
    bld.run_stage("clean-first-near", d1.gate_host, v, d1.near_side, 1);
  }

  // Opposite-class big components: their own centre seals them one at a time.
  int oi = 0;
  for (const BigComponent* bc : opposite) {
    ++oi;
    bld.run_stage("clean-opposite-" + std::to_string(oi), bc->b, v,
                  opposite_pieces(*bc), 1);
  }

  // Near side of the second mixed component, then the small components, both
  // under the centre seal (plus the second gate once it matters).
  if (m >= 2 && !d2.near_side.empty())
    bld.run_stage("clean-second-near", d2.gate_host, v, d2.near_side, 1);
  if (!small_pieces.empty())
    bld.run_stage("clean-small", m >= 2 ? d2.gate_host : -1, v, small_pieces, 1);

  // Endgame: with three mixed components a soldier joins the guard for one
  // exchange so the seal can jump to the third component's doorstep before
  // the centre seal is released.
  if (m == 3)
    bld.fixed_stage("handoff-third", {d2.gate_host, d3.a_host}, {d2.b_host, v},
                    d2.gate_host, v);
  if (m >= 2)
    bld.run_stage("clean-second-far", m == 3 ? d3.a_host : d2.gate_host, d2.b_host,
                  d2.far, 1);
  if (m == 3)
    bld.run_stage("clean-third", d3.a_host, d3.b_host, third_pieces(*mixed[2]), 1);

  CoreResult out;
  out.rounds = std::move(bld.rounds);
  out.stages = std::move(bld.stages);
  out.cats = 1 + bld.soldiers;
  out.start_class = vclass;
  return out;
}

}  // namespace

DecompositionPlan decompose(const Tree& t) {
  const int n = t.n();
  if (n < 10)
    throw std::invalid_argument("decompose: tree must have at least 10 vertices");
  DecompositionPlan plan;
  plan.n = n;
  plan.centre = find_centre(t);
  const Bipartition bip = bipartition(t);
  const int vclass = bip.side[plan.centre];
  Forest f = remove_vertex(t, plan.centre);
  std::vector<int> comp_of(n, -1);
  for (std::size_t ci = 0; ci < f.components.size(); ++ci)
    for (int hv : f.components[ci].to_parent) comp_of[hv] = static_cast<int>(ci);
  std::vector<int> attach(f.components.size(), -1);
  for (int u : t.neighbors(plan.centre)) attach[comp_of[u]] = u;
  for (std::size_t ci = 0; ci < f.components.size(); ++ci) {
    ForestComponent& c = f.components[ci];
    if (4 * c.tree.n() > n) {
      BigComponent big;
      big.b = c.to_parent[find_centre(c.tree)];
      big.attach = attach[ci];
      big.centre_in_v1 = bip.side[big.b] == vclass;
      big.comp = std::move(c);
      plan.big.push_back(std::move(big));
    } else {
      plan.small_comps.push_back(std::move(c));
    }
  }
  if (plan.big.size() > 3)
    throw std::logic_error("decompose: more than three big components");
  return plan;
}

Schedule basic_strategy(const Tree& t) {
  const int n = t.n();
  if (n == 1) {
    Schedule s;
    s.r = 1;
    s.rounds = {{0}};
    return s;
  }
  if (n <= 9) {
    const WinSearch ws = cats_win(t, 1);
    if (!ws.win) throw std::logic_error("strategy: one-cat base clear failed");
    return ws.witness;
  }
  const int v = find_centre(t);
  const Forest f = remove_vertex(t, v);
  Schedule s;
  int soldiers = 0;
  for (const ForestComponent& c : f.components) {
    const Schedule sub = basic_strategy(c.tree);
    soldiers = std::max(soldiers, sub.r);
    for (const auto& local : sub.rounds) {
      std::vector<int> shot;
      shot.reserve(local.size() + 1);
      shot.push_back(v);
      for (int x : local) shot.push_back(c.to_parent[x]);
      std::sort(shot.begin(), shot.end());
      s.rounds.push_back(std::move(shot));
    }
  }
  s.r = 1 + soldiers;
  return s;
}

VariantSchedule improved_strategy(const Tree& t) {
  VariantSchedule vs;
  if (t.n() <= 9) {
    CleanResult cr = clean_piece(t, 1);
    vs.schedule.r = std::max(1, cr.cats);
    vs.schedule.rounds = std::move(cr.rounds);
    vs.declared_even_length = static_cast<int>(vs.schedule.rounds.size());
    return vs;
  }
  CoreResult core = improved_core(t);
  vs.schedule.r = std::max(1, core.cats);
  if (core.start_class == 1) {
    vs.schedule.rounds = std::move(core.rounds);
    vs.stages = std::move(core.stages);
  } else {
    vs.alignment_offset = 1;
    vs.schedule.rounds.reserve(core.rounds.size() + 2);
    vs.schedule.rounds.emplace_back();
    for (auto& r : core.rounds) vs.schedule.rounds.push_back(std::move(r));
    vs.schedule.rounds.emplace_back();
    vs.stages = std::move(core.stages);
    for (StageInfo& st : vs.stages) st.first_round += 1;
  }
  vs.declared_even_length = static_cast<int>(vs.schedule.rounds.size());
  return vs;
}

Schedule variant_to_standard(const VariantSchedule& vs, const Tree& t) {
  for (const auto& round : vs.schedule.rounds)
    for (int x : round)
      if (x < 0 || x >= t.n())
        throw std::invalid_argument("variant_to_standard: shot out of range");
  Schedule out;
  out.r = vs.schedule.r;
  const auto& s = vs.schedule.rounds;
  out.rounds.reserve(2 * s.size() + 1);
  out.rounds.insert(out.rounds.end(), s.begin(), s.end());
  if (s.size() % 2 == 0) out.rounds.emplace_back();
  out.rounds.insert(out.rounds.end(), s.begin(), s.end());
  return out;
}

}  // namespace catmouse
