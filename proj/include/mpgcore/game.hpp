#ifndef MPGCORE_GAME_HPP
#define MPGCORE_GAME_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mpgcore/rational.hpp"

namespace mpgcore {

// Concurrent multi-player arena with per-player integer state weights and
// propositional state labels. Action profiles are encoded as a single index
// in mixed radix over the per-player action sets, last player fastest.
struct Game {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;  // per player
  std::vector<std::string> states;
  int init = 0;
  std::vector<std::set<std::string>> labels;   // per state
  std::vector<std::vector<long>> weights;      // [state][player]
  // [state][profile index] -> successor; -1 marks an edge removed by
  // restrict_arena (only when `partial` is set).
  std::vector<std::vector<int>> transitions;
  bool partial = false;

  int num_players() const { return static_cast<int>(players.size()); }
  int num_states() const { return static_cast<int>(states.size()); }

  long profile_count() const {
    long n = 1;
    for (const auto& a : actions) n *= static_cast<long>(a.size());
    return n;
  }
  // per-player action indices -> profile index
  long profile_index(const std::vector<int>& acts) const;
  std::vector<int> profile_actions(long idx) const;

  int state_index(const std::string& name) const;
  int player_index(const std::string& name) const;
  int action_index(int player, const std::string& name) const;
  std::string profile_key(long idx) const;

  RatVec weight_vec(int state) const {
    RatVec w;
    for (long x : weights[state]) w.push_back(Rat(x));
    return w;
  }
};

// Non-empty subset of players, sorted ascending.
struct Coalition {
  std::vector<int> members;

  std::vector<int> complement(const Game& g) const;
  bool is_grand(const Game& g) const {
    return static_cast<int>(members.size()) == g.num_players();
  }
  std::string str(const Game& g) const;
};

struct StrategyMachine {
  std::vector<std::string> internal_states;
  int init = 0;
  std::vector<std::vector<int>> delta;  // [internal][arena state] -> internal
  std::vector<int> act;                 // [internal] -> action index
};

struct StrategyProfile {
  std::vector<StrategyMachine> machines;  // one per player, player order
};

struct Configuration {
  int arena_state = 0;
  std::vector<int> internal;  // one per player

  bool operator==(const Configuration&) const = default;
};

// Ultimately periodic run: stem then cycle, as arena state indices.
struct Lasso {
  std::vector<int> stem;   // may be empty; starts at init when non-empty
  std::vector<int> cycle;  // non-empty
};

Game parse_game(const std::string& text);
StrategyProfile parse_profile(const std::string& text, const Game& g);
std::string serialize_game(const Game& g);
std::string serialize_profile(const Game& g, const StrategyProfile& p);

int step(const Game& g, int s, long profile_idx);
Configuration initial_configuration(const Game& g, const StrategyProfile& p);
Configuration run_step(const Game& g, const StrategyProfile& p,
                       const Configuration& c);

// Sub-arena on `keep`; successors outside `keep` are dropped and the result
// is flagged partial (path/circulation search only, never simulation).
Game restrict_arena(const Game& g, const std::set<int>& keep);

}  // namespace mpgcore

#endif
