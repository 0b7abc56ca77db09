#include "mpgcore/payoff.hpp"

#include <numeric>
#include <stdexcept>

namespace mpgcore {

namespace {

long configuration_space(const Game& g, const StrategyProfile& p) {
  long n = g.num_states();
  for (const auto& m : p.machines) n *= static_cast<long>(m.internal_states.size());
  return n;
}

}  // namespace

std::pair<long, long> compute_index(const Game& g, const StrategyProfile& p) {
  const long budget = configuration_space(g, p) + 1;
  // Floyd's tortoise/hare: O(1) configurations stored.
  Configuration tortoise = run_step(g, p, initial_configuration(g, p));
  Configuration hare = run_step(g, p, tortoise);
  long guard = 0;
  while (!(tortoise == hare)) {
    if (++guard > budget)
      throw std::logic_error("compute_index: step budget exceeded without a repeat");
    tortoise = run_step(g, p, tortoise);
    hare = run_step(g, p, run_step(g, p, hare));
  }
  // cycle entry point mu
  long mu = 0;
  tortoise = initial_configuration(g, p);
  while (!(tortoise == hare)) {
    tortoise = run_step(g, p, tortoise);
    hare = run_step(g, p, hare);
    ++mu;
  }
  // cycle length lambda
  long lambda = 1;
  hare = run_step(g, p, tortoise);
  while (!(tortoise == hare)) {
    hare = run_step(g, p, hare);
    ++lambda;
  }
  return {mu, mu + lambda};
}

Rat mean_payoff_of_cycle(const std::vector<long>& weights) {
  if (weights.empty()) throw std::invalid_argument("empty cycle");
  long sum = std::accumulate(weights.begin(), weights.end(), 0L);
  Rat q(sum, static_cast<long>(weights.size()));
  q.canonicalize();
  return q;
}

Lasso induced_lasso(const Game& g, const StrategyProfile& p) {
  auto [k, l] = compute_index(g, p);
  Lasso out;
  Configuration c = initial_configuration(g, p);
  for (long t = 0; t < k; ++t) {
    out.stem.push_back(c.arena_state);
    c = run_step(g, p, c);
  }
  for (long t = k; t < l; ++t) {
    out.cycle.push_back(c.arena_state);
    c = run_step(g, p, c);
  }
  return out;
}

RatVec compute_payoff(const Game& g, const StrategyProfile& p) {
  Lasso lasso = induced_lasso(g, p);
  RatVec out;
  for (int pi = 0; pi < g.num_players(); ++pi) {
    std::vector<long> w;
    for (int s : lasso.cycle) w.push_back(g.weights[s][pi]);
    out.push_back(mean_payoff_of_cycle(w));
  }
  return out;
}

}  // namespace mpgcore
