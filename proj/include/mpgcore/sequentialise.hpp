#ifndef MPGCORE_SEQUENTIALISE_HPP
#define MPGCORE_SEQUENTIALISE_HPP

#include <functional>

#include "mpgcore/game.hpp"

namespace mpgcore {

// Two-player turn-based multi-mean-payoff sequentialisation for a coalition.
// Node ids: 0..|St|-1 are player-1 nodes (arena states); |St| + k are
// player-2 nodes, one per (state, coalition action profile) pair.
struct MMPG {
  const Game* game = nullptr;
  Coalition coalition;
  int n1 = 0;                            // |St|
  std::vector<std::pair<int, long>> v2;  // (state, coalition profile) per v2 node
  std::vector<std::vector<int>> succ;    // out-edges per node, sorted, deduplicated
  std::vector<RatVec> weights;           // |C|-dim weight vector per node

  int num_nodes() const { return n1 + static_cast<int>(v2.size()); }
  bool is_v1(int v) const { return v < n1; }
};

// One successor choice per player-2 node.
struct MemorylessP2 {
  std::vector<int> choice;  // indexed by v2 node offset (node id - n1)
};

MMPG sequentialise(const Game& g, const Coalition& c);

// Successor function of the subgame where player 2 follows s2: all player-1
// edges kept, exactly the chosen player-2 edge.
std::vector<std::vector<int>> induced_subgame(const MMPG& m, const MemorylessP2& s2);

// Calls fn for every memoryless player-2 strategy, in a deterministic
// order. fn returning false stops the enumeration.
void enumerate_p2(const MMPG& m, const std::function<bool(const MemorylessP2&)>& fn);

long count_p2(const MMPG& m);

}  // namespace mpgcore

#endif
