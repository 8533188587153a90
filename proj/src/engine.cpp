#include "catmouse/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace catmouse {

void neighborhood_into(const Tree& t, const PositionSet& a, PositionSet& out) {
  out.clear();
  const std::vector<int>& xadj = t.xadj();
  const std::vector<int>& adjncy = t.adjncy();
  const std::vector<std::uint64_t>& words = a.words();
  for (size_t wi = 0; wi < words.size(); ++wi) {
    std::uint64_t w = words[wi];
    while (w) {
      int v = static_cast<int>(wi) * 64 + __builtin_ctzll(w);
      w &= w - 1;
      for (int j = xadj[v]; j < xadj[v + 1]; ++j) out.set(adjncy[j]);
    }
  }
}

PositionSet neighborhood(const Tree& t, const PositionSet& a) {
  PositionSet out(t.n());
  neighborhood_into(t, a, out);
  return out;
}

PositionSet initial_positions(const Tree& t, const GameSemantics& sem, const Bipartition* bip) {
  if (sem.initial_domain == InitialDomain::AllVertices) return PositionSet::all(t.n());
  Bipartition local;
  if (bip == nullptr) {
    local = bipartition(t);
    bip = &local;
  }
  PositionSet s(t.n());
  for (int v = 0; v < t.n(); ++v)
    if (bip->side[v] == 1) s.set(v);
  return s;
}

namespace {

void check_shot(const Tree& t, const std::vector<int>& shot, int r) {
  if (static_cast<int>(shot.size()) > r)
    throw std::invalid_argument("schedule: shot set larger than r");
  for (int x : shot)
    if (x < 0 || x >= t.n()) throw std::invalid_argument("schedule: shot vertex out of range");
}

void step_into(const PositionSet& a, const std::vector<int>& shot, const Tree& t, Convention conv,
               PositionSet& out, PositionSet& scratch) {
  if (conv == Convention::MoveThenShoot) {
    neighborhood_into(t, a, out);
    for (int x : shot) out.reset(x);
  } else {
    scratch = a;
    for (int x : shot) scratch.reset(x);
    neighborhood_into(t, scratch, out);
  }
}

}  // namespace

PositionSet step(const PositionSet& a, const std::vector<int>& shot, const Tree& t,
                 Convention conv) {
  PositionSet out(t.n());
  PositionSet scratch(t.n());
  step_into(a, shot, t, conv, out, scratch);
  return out;
}

GameTrace run_schedule(const Tree& t, const Schedule& s, const GameSemantics& sem,
                       const Bipartition* bip) {
  GameTrace tr;
  PositionSet a = initial_positions(t, sem, bip);
  tr.entries.push_back({0, {}, a.to_vector()});
  PositionSet next(t.n()), scratch(t.n());
  for (size_t i = 0; i < s.rounds.size(); ++i) {
    check_shot(t, s.rounds[i], s.r);
    step_into(a, s.rounds[i], t, sem.convention, next, scratch);
    std::swap(a, next);
    int round = static_cast<int>(i) + 1;
    tr.entries.push_back({round, s.rounds[i], a.to_vector()});
    if (a.empty()) {
      tr.cats_win = true;
      tr.win_round = round;
      break;
    }
  }
  return tr;
}

bool verify_winning(const Tree& t, const Schedule& s, const GameSemantics& sem,
                    const Bipartition* bip) {
  PositionSet a = initial_positions(t, sem, bip);
  PositionSet next(t.n()), scratch(t.n());
  for (const auto& shot : s.rounds) {
    check_shot(t, shot, s.r);
    step_into(a, shot, t, sem.convention, next, scratch);
    std::swap(a, next);
    if (a.empty()) return true;
  }
  return false;
}

}  // namespace catmouse
