#pragma once

#include <cstdint>
#include <vector>

#include "catmouse/graph.hpp"

namespace catmouse {

// Dynamic bitset over the vertices of a fixed host tree: the set of possible
// mouse positions ("contamination set").
class PositionSet {
public:
  PositionSet() = default;
  explicit PositionSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

  static PositionSet all(int n) {
    PositionSet s(n);
    for (int v = 0; v < n; ++v) s.set(v);
    return s;
  }
  static PositionSet of(int n, const std::vector<int>& vs) {
    PositionSet s(n);
    for (int v : vs) s.set(v);
    return s;
  }

  int n() const { return n_; }
  bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
  void set(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  bool empty() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }
  int size() const {
    int c = 0;
    for (std::uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }
  bool is_subset_of(const PositionSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool operator==(const PositionSet& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const PositionSet& o) const { return !(*this == o); }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = __builtin_ctzll(w);
        out.push_back(static_cast<int>(i) * 64 + b);
        w &= w - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// MoveThenShoot is the recurrence A_{i+1} = N(A_i) \ C_{i+1} (the default);
// ShootThenMove is A_{i+1} = N(A_i \ C_{i+1}).
enum class Convention { MoveThenShoot, ShootThenMove };

enum class InitialDomain { AllVertices, ClassOne };

struct GameSemantics {
  Convention convention = Convention::MoveThenShoot;
  InitialDomain initial_domain = InitialDomain::AllVertices;
};

// A cat strategy: the mouse is invisible, so strategies are oblivious shot
// schedules. r bounds the shot-set size per round.
struct Schedule {
  int r = 1;
  std::vector<std::vector<int>> rounds;
};

struct TraceEntry {
  int round = 0;               // 0 = initial state (empty shot)
  std::vector<int> shot;
  std::vector<int> positions;  // possible mouse positions after the round
};

struct GameTrace {
  std::vector<TraceEntry> entries;
  bool cats_win = false;
  int win_round = -1;  // first round whose resulting set is empty
};

// N(a): vertices adjacent to at least one member of a.
void neighborhood_into(const Tree& t, const PositionSet& a, PositionSet& out);
PositionSet neighborhood(const Tree& t, const PositionSet& a);

PositionSet initial_positions(const Tree& t, const GameSemantics& sem,
                              const Bipartition* bip = nullptr);

PositionSet step(const PositionSet& a, const std::vector<int>& shot, const Tree& t,
                 Convention conv);

// Runs the whole schedule, recording every intermediate set. Stops early at
// the first empty set.
GameTrace run_schedule(const Tree& t, const Schedule& s, const GameSemantics& sem,
                       const Bipartition* bip = nullptr);

// Trace-free certification: true iff the schedule empties the position set.
bool verify_winning(const Tree& t, const Schedule& s, const GameSemantics& sem,
                    const Bipartition* bip = nullptr);

}  // namespace catmouse
