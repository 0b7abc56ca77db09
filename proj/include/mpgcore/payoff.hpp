#ifndef MPGCORE_PAYOFF_HPP
#define MPGCORE_PAYOFF_HPP

#include "mpgcore/game.hpp"
#include "mpgcore/rational.hpp"

namespace mpgcore {

// Smallest (k, l), k < l, with cfg(sigma, k) = cfg(sigma, l). Uses a
// tortoise/hare scan, so only O(1) configurations are stored at a time.
std::pair<long, long> compute_index(const Game& g, const StrategyProfile& p);

// Exact mean payoff of the unique induced run: per player, the arithmetic
// mean of the weights over the cycle found by compute_index.
RatVec compute_payoff(const Game& g, const StrategyProfile& p);

Rat mean_payoff_of_cycle(const std::vector<long>& weights);

// The induced run as a lasso of arena states (stem of length k, cycle of
// length l - k).
Lasso induced_lasso(const Game& g, const StrategyProfile& p);

}  // namespace mpgcore

#endif
