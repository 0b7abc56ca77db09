#include "mpgcore/game.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace mpgcore {

using nlohmann::json;

long Game::profile_index(const std::vector<int>& acts) const {
  long idx = 0;
  for (size_t i = 0; i < actions.size(); ++i)
    idx = idx * static_cast<long>(actions[i].size()) + acts[i];
  return idx;
}

std::vector<int> Game::profile_actions(long idx) const {
  std::vector<int> acts(actions.size());
  for (size_t i = actions.size(); i-- > 0;) {
    long base = static_cast<long>(actions[i].size());
    acts[i] = static_cast<int>(idx % base);
    idx /= base;
  }
  return acts;
}

int Game::state_index(const std::string& name) const {
  for (int i = 0; i < num_states(); ++i)
    if (states[i] == name) return i;
  throw std::runtime_error("unknown state '" + name + "'");
}

int Game::player_index(const std::string& name) const {
  for (int i = 0; i < num_players(); ++i)
    if (players[i] == name) return i;
  throw std::runtime_error("unknown player '" + name + "'");
}

int Game::action_index(int player, const std::string& name) const {
  const auto& acts = actions[player];
  for (size_t i = 0; i < acts.size(); ++i)
    if (acts[i] == name) return static_cast<int>(i);
  throw std::runtime_error("unknown action '" + name + "' for player '" +
                           players[player] + "'");
}

std::string Game::profile_key(long idx) const {
  auto acts = profile_actions(idx);
  std::string key;
  for (size_t i = 0; i < acts.size(); ++i) {
    if (i) key += ",";
    key += actions[i][acts[i]];
  }
  return key;
}

std::vector<int> Coalition::complement(const Game& g) const {
  std::vector<int> out;
  size_t k = 0;
  for (int i = 0; i < g.num_players(); ++i) {
    if (k < members.size() && members[k] == i)
      ++k;
    else
      out.push_back(i);
  }
  return out;
}

std::string Coalition::str(const Game& g) const {
  std::string out = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += g.players[members[i]];
  }
  return out + "}";
}

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("syntax error in input file");
  return j;
}

}  // namespace

Game parse_game(const std::string& text) {
  json j = parse_json(text);
  Game g;
  if (!j.is_object()) throw std::runtime_error("game file must be an object");
  for (const auto& p : j.at("players")) g.players.push_back(p.get<std::string>());
  if (g.players.empty()) throw std::runtime_error("no players");
  {
    std::set<std::string> dup(g.players.begin(), g.players.end());
    if (dup.size() != g.players.size()) throw std::runtime_error("duplicate player");
  }
  const auto& jact = j.at("actions");
  for (const auto& p : g.players) {
    if (!jact.contains(p)) throw std::runtime_error("missing actions for player '" + p + "'");
    std::vector<std::string> acts;
    for (const auto& a : jact.at(p)) acts.push_back(a.get<std::string>());
    if (acts.empty()) throw std::runtime_error("empty action set for player '" + p + "'");
    std::set<std::string> dup(acts.begin(), acts.end());
    if (dup.size() != acts.size()) throw std::runtime_error("duplicate action for player '" + p + "'");
    g.actions.push_back(std::move(acts));
  }
  for (const auto& s : j.at("states")) g.states.push_back(s.get<std::string>());
  if (g.states.empty()) throw std::runtime_error("no states");
  {
    std::set<std::string> dup(g.states.begin(), g.states.end());
    if (dup.size() != g.states.size()) throw std::runtime_error("duplicate state");
  }
  g.init = g.state_index(j.at("init").get<std::string>());

  g.labels.assign(g.states.size(), {});
  if (j.contains("labels")) {
    for (const auto& [sname, arr] : j.at("labels").items()) {
      int si = g.state_index(sname);
      for (const auto& ap : arr) g.labels[si].insert(ap.get<std::string>());
    }
  }

  g.weights.assign(g.states.size(), std::vector<long>(g.players.size(), 0));
  const auto& jw = j.at("weights");
  for (int si = 0; si < g.num_states(); ++si) {
    if (!jw.contains(g.states[si]))
      throw std::runtime_error("missing weights for state '" + g.states[si] + "'");
    const auto& row = jw.at(g.states[si]);
    for (int pi = 0; pi < g.num_players(); ++pi) {
      if (!row.contains(g.players[pi]))
        throw std::runtime_error("missing weight for player '" + g.players[pi] +
                                 "' at state '" + g.states[si] + "'");
      const auto& val = row.at(g.players[pi]);
      if (!val.is_number_integer())
        throw std::runtime_error("non-integer weight at state '" + g.states[si] + "'");
      g.weights[si][pi] = val.get<long>();
    }
  }

  long np = g.profile_count();
  g.transitions.assign(g.states.size(), std::vector<int>(np, -1));
  const auto& jt = j.at("transitions");
  for (int si = 0; si < g.num_states(); ++si) {
    if (!jt.contains(g.states[si]))
      throw std::runtime_error("partial transition function: state '" +
                               g.states[si] + "' has no entries");
    for (const auto& [key, succ] : jt.at(g.states[si]).items()) {
      std::vector<int> acts;
      std::stringstream ss(key);
      std::string tok;
      int pi = 0;
      while (std::getline(ss, tok, ',')) {
        if (pi >= g.num_players())
          throw std::runtime_error("profile key '" + key + "' has too many actions");
        acts.push_back(g.action_index(pi, tok));
        ++pi;
      }
      if (static_cast<int>(acts.size()) != g.num_players())
        throw std::runtime_error("profile key '" + key + "' has too few actions");
      long idx = g.profile_index(acts);
      if (g.transitions[si][idx] != -1)
        throw std::runtime_error("duplicate transition entry '" + key +
                                 "' at state '" + g.states[si] + "'");
      g.transitions[si][idx] = g.state_index(succ.get<std::string>());
    }
    for (long k = 0; k < np; ++k)
      if (g.transitions[si][k] == -1)
        throw std::runtime_error("partial transition function: state '" +
                                 g.states[si] + "' missing profile '" +
                                 g.profile_key(k) + "'");
  }
  return g;
}

std::string serialize_game(const Game& g) {
  json j;
  j["players"] = g.players;
  for (int pi = 0; pi < g.num_players(); ++pi)
    j["actions"][g.players[pi]] = g.actions[pi];
  j["states"] = g.states;
  j["init"] = g.states[g.init];
  for (int si = 0; si < g.num_states(); ++si)
    j["labels"][g.states[si]] = std::vector<std::string>(g.labels[si].begin(),
                                                         g.labels[si].end());
  for (int si = 0; si < g.num_states(); ++si)
    for (int pi = 0; pi < g.num_players(); ++pi)
      j["weights"][g.states[si]][g.players[pi]] = g.weights[si][pi];
  for (int si = 0; si < g.num_states(); ++si)
    for (long k = 0; k < g.profile_count(); ++k)
      if (g.transitions[si][k] >= 0)
        j["transitions"][g.states[si]][g.profile_key(k)] =
            g.states[g.transitions[si][k]];
  return j.dump(2);
}

std::string serialize_profile(const Game& g, const StrategyProfile& p) {
  json j;
  for (int pi = 0; pi < g.num_players(); ++pi) {
    const StrategyMachine& m = p.machines[pi];
    json mj;
    mj["states"] = m.internal_states;
    mj["init"] = m.internal_states[m.init];
    for (size_t qi = 0; qi < m.internal_states.size(); ++qi) {
      for (int si = 0; si < g.num_states(); ++si)
        mj["delta"][m.internal_states[qi]][g.states[si]] =
            m.internal_states[m.delta[qi][si]];
      mj["act"][m.internal_states[qi]] = g.actions[pi][m.act[qi]];
    }
    j["machines"][g.players[pi]] = std::move(mj);
  }
  return j.dump(2);
}

StrategyProfile parse_profile(const std::string& text, const Game& g) {
  json j = parse_json(text);
  const auto& jm = j.at("machines");
  StrategyProfile p;
  for (int pi = 0; pi < g.num_players(); ++pi) {
    const auto& pname = g.players[pi];
    if (!jm.contains(pname))
      throw std::runtime_error("missing machine for player '" + pname + "'");
    const auto& m = jm.at(pname);
    StrategyMachine sm;
    for (const auto& q : m.at("states")) sm.internal_states.push_back(q.get<std::string>());
    if (sm.internal_states.empty())
      throw std::runtime_error("machine for '" + pname + "' has no states");
    auto qidx = [&](const std::string& name) {
      for (size_t i = 0; i < sm.internal_states.size(); ++i)
        if (sm.internal_states[i] == name) return static_cast<int>(i);
      throw std::runtime_error("unknown internal state '" + name + "' in machine '" + pname + "'");
    };
    sm.init = qidx(m.at("init").get<std::string>());
    sm.delta.assign(sm.internal_states.size(),
                    std::vector<int>(g.num_states(), -1));
    for (const auto& [qname, row] : m.at("delta").items()) {
      int qi = qidx(qname);
      for (const auto& [sname, qnext] : row.items())
        sm.delta[qi][g.state_index(sname)] = qidx(qnext.get<std::string>());
    }
    for (size_t qi = 0; qi < sm.internal_states.size(); ++qi)
      for (int si = 0; si < g.num_states(); ++si)
        if (sm.delta[qi][si] < 0)
          throw std::runtime_error("machine for '" + pname +
                                   "': delta not total at (" +
                                   sm.internal_states[qi] + ", " + g.states[si] + ")");
    sm.act.assign(sm.internal_states.size(), -1);
    for (const auto& [qname, aname] : m.at("act").items())
      sm.act[qidx(qname)] = g.action_index(pi, aname.get<std::string>());
    for (size_t qi = 0; qi < sm.internal_states.size(); ++qi)
      if (sm.act[qi] < 0)
        throw std::runtime_error("machine for '" + pname + "': act not total at " +
                                 sm.internal_states[qi]);
    p.machines.push_back(std::move(sm));
  }
  return p;
}

int step(const Game& g, int s, long profile_idx) {
  int succ = g.transitions[s][profile_idx];
  if (succ < 0) throw std::runtime_error("transition removed in partial arena");
  return succ;
}

Configuration initial_configuration(const Game& g, const StrategyProfile& p) {
  Configuration c;
  c.arena_state = g.init;
  for (const auto& m : p.machines) c.internal.push_back(m.init);
  return c;
}

Configuration run_step(const Game& g, const StrategyProfile& p,
                       const Configuration& c) {
  std::vector<int> acts(p.machines.size());
  for (size_t i = 0; i < p.machines.size(); ++i)
    acts[i] = p.machines[i].act[c.internal[i]];
  Configuration next;
  next.arena_state = step(g, c.arena_state, g.profile_index(acts));
  next.internal.resize(p.machines.size());
  for (size_t i = 0; i < p.machines.size(); ++i)
    next.internal[i] = p.machines[i].delta[c.internal[i]][c.arena_state];
  return next;
}

Game restrict_arena(const Game& g, const std::set<int>& keep) {
  if (!keep.count(g.init))
    throw std::runtime_error("restrict_arena: init state not in the kept set");
  Game out;
  out.players = g.players;
  out.actions = g.actions;
  out.partial = true;
  std::vector<int> remap(g.num_states(), -1);
  for (int si : keep) {
    remap[si] = static_cast<int>(out.states.size());
    out.states.push_back(g.states[si]);
    out.labels.push_back(g.labels[si]);
    out.weights.push_back(g.weights[si]);
  }
  out.init = remap[g.init];
  long np = g.profile_count();
  for (int si : keep) {
    std::vector<int> row(np, -1);
    for (long k = 0; k < np; ++k) {
      int succ = g.transitions[si][k];
      if (succ >= 0 && remap[succ] >= 0) row[k] = remap[succ];
    }
    out.transitions.push_back(std::move(row));
  }
  // a restriction of a full arena keeping all successors stays total
  out.partial = false;
  for (const auto& row : out.transitions)
    for (int v : row)
      if (v < 0) {
        out.partial = true;
        break;
      }
  return out;
}

}  // namespace mpgcore
