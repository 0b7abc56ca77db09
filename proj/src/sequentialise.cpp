#include "mpgcore/sequentialise.hpp"

#include <algorithm>
#include <set>

namespace mpgcore {

MMPG sequentialise(const Game& g, const Coalition& c) {
  if (c.members.empty()) throw std::invalid_argument("empty coalition");
  MMPG m;
  m.game = &g;
  m.coalition = c;
  m.n1 = g.num_states();
  std::vector<int> rest = c.complement(g);

  long cprofiles = 1;
  for (int i : c.members) cprofiles *= static_cast<long>(g.actions[i].size());
  long rprofiles = 1;
  for (int i : rest) rprofiles *= static_cast<long>(g.actions[i].size());

  m.succ.assign(m.n1, {});
  for (int s = 0; s < g.num_states(); ++s) {
    RatVec w;
    for (int i : c.members) w.push_back(Rat(g.weights[s][i]));
    m.weights.push_back(w);
  }
  for (int s = 0; s < g.num_states(); ++s) {
    // Coalition profiles with identical successor sets are interchangeable
    // (weights only depend on the state), so they share one v2 node.
    std::set<std::vector<int>> seen;
    for (long cp = 0; cp < cprofiles; ++cp) {
      // decode coalition profile cp into per-member action indices
      std::vector<int> full(g.num_players(), 0);
      long t = cp;
      for (size_t k = c.members.size(); k-- > 0;) {
        int pl = c.members[k];
        long base = static_cast<long>(g.actions[pl].size());
        full[pl] = static_cast<int>(t % base);
        t /= base;
      }
      std::set<int> succs;
      for (long rp = 0; rp < rprofiles; ++rp) {
        long u = rp;
        for (size_t k = rest.size(); k-- > 0;) {
          int pl = rest[k];
          long base = static_cast<long>(g.actions[pl].size());
          full[pl] = static_cast<int>(u % base);
          u /= base;
        }
        int succ = g.transitions[s][g.profile_index(full)];
        if (succ >= 0) succs.insert(succ);
      }
      std::vector<int> sl(succs.begin(), succs.end());
      if (sl.empty() || !seen.insert(sl).second) continue;
      int node = m.n1 + static_cast<int>(m.v2.size());
      m.v2.push_back({s, cp});
      m.succ[s].push_back(node);
      m.succ.push_back(std::move(sl));
      m.weights.push_back(m.weights[s]);
    }
  }
  return m;
}

std::vector<std::vector<int>> induced_subgame(const MMPG& m, const MemorylessP2& s2) {
  std::vector<std::vector<int>> out = m.succ;
  for (size_t k = 0; k < m.v2.size(); ++k)
    out[m.n1 + k] = {s2.choice[k]};
  return out;
}

void enumerate_p2(const MMPG& m,
                  const std::function<bool(const MemorylessP2&)>& fn) {
  size_t nv2 = m.v2.size();
  MemorylessP2 s2;
  s2.choice.resize(nv2);
  for (size_t k = 0; k < nv2; ++k) s2.choice[k] = m.succ[m.n1 + k][0];
  std::vector<size_t> pos(nv2, 0);
  for (;;) {
    if (!fn(s2)) return;
    size_t k = nv2;
    while (k-- > 0) {
      if (pos[k] + 1 < m.succ[m.n1 + k].size()) {
        ++pos[k];
        s2.choice[k] = m.succ[m.n1 + k][pos[k]];
        break;
      }
      pos[k] = 0;
      s2.choice[k] = m.succ[m.n1 + k][0];
    }
    if (k == static_cast<size_t>(-1)) return;
  }
}

long count_p2(const MMPG& m) {
  long n = 1;
  for (size_t k = 0; k < m.v2.size(); ++k)
    n *= static_cast<long>(m.succ[m.n1 + k].size());
  return n;
}

}  // namespace mpgcore
