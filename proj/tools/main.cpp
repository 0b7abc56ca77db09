#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpgcore/decisions.hpp"
#include "mpgcore/gr1.hpp"
#include "mpgcore/oracle.hpp"
#include "mpgcore/payoff.hpp"
#include "mpgcore/reductions.hpp"

using nlohmann::json;
using namespace mpgcore;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

RatVec parse_vec(const std::string& text, size_t dim) {
  RatVec out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
  if (out.size() != dim)
    throw std::runtime_error("vector needs " + std::to_string(dim) +
                             " components");
  return out;
}

// `--spec` accepts the grammar inline or `@file`.
Gr1Spec load_spec(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return parse_gr1(slurp(arg.substr(1)));
  return parse_gr1(arg);
}

json lasso_json(const Game& g, const Lasso& l) {
  json j;
  j["stem"] = json::array();
  for (int s : l.stem) j["stem"].push_back(g.states[s]);
  j["cycle"] = json::array();
  for (int s : l.cycle) j["cycle"].push_back(g.states[s]);
  return j;
}

json vec_json(const RatVec& v) {
  json j = json::array();
  for (const Rat& r : v) j.push_back(rat_str(r));
  return j;
}

struct Output {
  std::string command;
  bool json_mode = false;
  long long ms = 0;

  int emit(const Game& g, const Verdict& v) const {
    json j;
    j["answer"] = v.answer ? "yes" : "no";
    j["command"] = command;
    j["version"] = kVersion;
    j["stats"]["coalitions_checked"] = v.stats.coalitions_checked;
    j["stats"]["lps_solved"] = v.stats.lps_solved;
    j["stats"]["time_ms"] = ms;
    json w = json::object();
    if (v.coalition) {
      json c = json::array();
      for (int i : v.coalition->members) c.push_back(g.players[i]);
      w["coalition"] = c;
    }
    if (v.improvement) w["improvement"] = vec_json(*v.improvement);
    if (v.payoff) w["payoff"] = vec_json(*v.payoff);
    if (v.lasso) w["lasso"] = lasso_json(g, *v.lasso);
    if (v.circulation) {
      json c = json::array();
      for (const auto& [a, b, z] : *v.circulation)
        c.push_back({g.states[a], g.states[b], rat_str(z)});
      w["circulation"] = c;
    }
    if (v.state_set) {
      json s = json::array();
      for (int si : *v.state_set) s.push_back(g.states[si]);
      w["state_set"] = s;
    }
    j["witness"] = w;
    if (json_mode) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << command << ": " << (v.answer ? "yes" : "no");
      if (v.coalition) std::cout << " coalition=" << v.coalition->str(g);
      if (v.payoff) std::cout << " payoff=" << vec_str(*v.payoff);
      if (v.improvement) std::cout << " improvement=" << vec_str(*v.improvement);
      std::cout << "\n";
    }
    return v.answer ? 0 : 1;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Decision procedures for the cores of concurrent multi-player "
               "mean-payoff games"};
  app.require_subcommand(1);

  std::string game_path, profile_path, state_name, vec_text, spec_text;
  std::string coalition_text, input_path, out_prefix, result_path;
  bool json_mode = false, paranoid = false;
  ValueBudget budget;
  BruteForceBudget brute;

  auto add_common = [&](CLI::App* sub, bool needs_game = true) {
    if (needs_game)
      sub->add_option("--game", game_path, "game file (JSON)")->required();
    sub->add_flag("--json", json_mode, "structured output");
    sub->add_option("--cycle-cap", budget.cycle_cap,
                    "simple-cycle enumeration cap per SCC");
    sub->add_option("--strategy-cap", budget.strategy_cap,
                    "adversary strategy enumeration cap");
  };

  auto* c_payoff = app.add_subcommand("payoff", "mean payoff of a profile");
  add_common(c_payoff);
  c_payoff->add_option("--profile", profile_path, "profile file")->required();

  auto* c_dom = app.add_subcommand("dominated", "is the vector dominated?");
  add_common(c_dom);
  c_dom->add_option("--state", state_name, "arena state")->required();
  c_dom->add_option("--vector", vec_text, "query vector x")->required();

  auto* c_bendev =
      app.add_subcommand("bendev", "beneficial deviation from a profile?");
  add_common(c_bendev);
  c_bendev->add_option("--profile", profile_path, "profile file")->required();

  auto* c_member = app.add_subcommand("membership", "is the profile in the core?");
  add_common(c_member);
  c_member->add_option("--profile", profile_path, "profile file")->required();

  auto* c_nonempty = app.add_subcommand("nonempty", "is the core non-empty?");
  add_common(c_nonempty);

  auto* c_ecore =
      app.add_subcommand("ecore", "does some core run satisfy the spec?");
  add_common(c_ecore);
  c_ecore->add_option("--spec", spec_text, "GR(1) spec, inline or @file")
      ->required();

  auto* c_acore =
      app.add_subcommand("acore", "do all core runs satisfy the spec?");
  add_common(c_acore);
  c_acore->add_option("--spec", spec_text, "GR(1) spec, inline or @file")
      ->required();

  auto* c_values =
      app.add_subcommand("values", "facet systems of a coalition's value set");
  add_common(c_values);
  c_values->add_option("--coalition", coalition_text,
                       "comma-separated player names")->required();
  c_values->add_option("--state", state_name, "arena state")->required();

  auto* c_gen = app.add_subcommand("gen", "generate a labelled hard instance");
  std::string gen_kind;
  c_gen->add_option("kind", gen_kind, "qsat2 | qsat3 | dfa")->required();
  c_gen->add_option("--input", input_path, "formula / automata file")->required();
  c_gen->add_option("--out", out_prefix, "output file prefix")->required();

  auto* c_verify = app.add_subcommand("verify", "re-check a recorded result");
  add_common(c_verify);
  c_verify->add_option("--result", result_path, "a --json query result")
      ->required();
  c_verify->add_option("--profile", profile_path, "profile file");
  c_verify->add_flag("--paranoid", paranoid, "also run brute-force oracles");
  c_verify->add_option("--max-denominator", brute.max_denominator,
                       "oracle coefficient denominator bound");

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  Output out{sub->get_name(), json_mode};

  if (sub == c_gen) {
    std::string text = slurp(input_path);
    json side;
    if (gen_kind == "qsat2") {
      Qbf2Formula f = parse_qbf2(text);
      DominatedInstance inst = gen_qsat2_dominated(f);
      spit(out_prefix + ".game", serialize_game(inst.game));
      side["query"] = {{"state", inst.state}, {"vector", vec_str(inst.query)}};
      side["expected"] = qbf_eval(f) ? "yes" : "no";
    } else if (gen_kind == "qsat3") {
      Qbf3Formula f = parse_qbf3(text);
      Game g = gen_qsat3_nonemptiness(f);
      spit(out_prefix + ".game", serialize_game(g));
      side["expected"] = qbf_eval(f) ? "yes" : "no";
    } else if (gen_kind == "dfa") {
      auto automata = parse_dfas(text);
      BenDevInstance inst = gen_dfa_bendev(automata);
      spit(out_prefix + ".game", serialize_game(inst.game));
      spit(out_prefix + ".profile", serialize_profile(inst.game, inst.profile));
      side["expected"] = dfa_intersection_nonempty(automata) ? "no" : "yes";
    } else {
      throw std::runtime_error("unknown generator '" + gen_kind + "'");
    }
    spit(out_prefix + ".expected", side.dump(2) + "\n");
    std::cout << "gen: wrote " << out_prefix << ".game\n";
    return 0;
  }

  Game g = parse_game(slurp(game_path));
  auto t0 = std::chrono::steady_clock::now();
  auto done = [&] {
    out.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
  };

  if (sub == c_payoff) {
    StrategyProfile p = parse_profile(slurp(profile_path), g);
    RatVec pay = compute_payoff(g, p);
    done();
    if (json_mode) {
      json j;
      j["command"] = "payoff";
      j["payoff"] = vec_json(pay);
      j["stats"]["time_ms"] = out.ms;
      j["version"] = kVersion;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << vec_str(pay) << "\n";
    }
    return 0;
  }

  if (sub == c_values) {
    Coalition c;
    std::stringstream ss(coalition_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.members.push_back(g.player_index(tok));
    std::sort(c.members.begin(), c.members.end());
    ValueSet vs = value_set(g, c, g.state_index(state_name), budget);
    for (size_t k = 0; k < vs.hull.parts.size(); ++k) {
      std::cout << "part " << k << ":\n";
      for (const HalfSpace& h : vs.hull.parts[k].ineqs)
        std::cout << "  " << vec_str(h.normal) << " . x <= " << rat_str(h.bound)
                  << "\n";
    }
    return 0;
  }

  if (sub == c_verify) {
    json res = json::parse(slurp(result_path));
    std::string cmd = res.at("command").get<std::string>();
    bool yes = res.at("answer").get<std::string>() == "yes";
    const json& w = res.at("witness");
    bool ok = true;
    auto get_vec = [&](const json& arr) {
      RatVec v;
      for (const auto& e : arr) v.push_back(parse_rat(e.get<std::string>()));
      return v;
    };
    if (yes && w.contains("circulation")) {
      // Algebraic re-check: edges exist, flow conserves, total mass 1,
      // claimed payoff is covered by the edge frequencies.
      std::map<int, Rat> in, outflow;
      Rat total(0);
      RatVec pay(g.num_players(), Rat(0));
      for (const auto& e : w.at("circulation")) {
        int a = g.state_index(e[0].get<std::string>());
        int b = g.state_index(e[1].get<std::string>());
        Rat z = parse_rat(e[2].get<std::string>());
        if (z < 0) ok = false;
        bool edge = false;
        for (long pi = 0; pi < g.profile_count() && !edge; ++pi)
          edge = g.transitions[a][pi] == b;
        if (!edge) ok = false;
        total += z;
        outflow[a] += z;
        in[b] += z;
        for (int i = 0; i < g.num_players(); ++i)
          pay[i] += Rat(g.weights[a][i]) * z;
      }
      if (total != 1) ok = false;
      for (const auto& [s, f] : outflow)
        if (f != in[s]) ok = false;
      if (w.contains("payoff")) {
        RatVec claimed = get_vec(w.at("payoff"));
        for (int i = 0; i < g.num_players(); ++i)
          if (claimed[i] > pay[i]) ok = false;
      }
    }
    if (yes && w.contains("lasso")) {
      const json& lj = w.at("lasso");
      int cur = g.init;
      auto step_to = [&](const std::string& nm) {
        int nxt = g.state_index(nm);
        bool edge = false;
        for (long pi = 0; pi < g.profile_count() && !edge; ++pi)
          edge = g.transitions[cur][pi] == nxt;
        if (!edge) ok = false;
        cur = nxt;
      };
      std::vector<std::string> stem = lj.at("stem");
      std::vector<std::string> cycle = lj.at("cycle");
      if (!stem.empty() && g.state_index(stem.front()) != g.init) ok = false;
      if (!stem.empty()) cur = g.state_index(stem.front());
      for (size_t i = 1; i < stem.size(); ++i) step_to(stem[i]);
      if (cycle.empty())
        ok = false;
      else {
        if (stem.empty()) {
          cur = g.state_index(cycle.front());
          if (cur != g.init) ok = false;
        } else {
          step_to(cycle.front());
        }
        for (size_t i = 1; i < cycle.size(); ++i) step_to(cycle[i]);
        step_to(cycle.front());
      }
    }
    if (yes && (cmd == "dominated" || cmd == "bendev") &&
        w.contains("improvement") && w.contains("coalition")) {
      Coalition c;
      for (const auto& nm : w.at("coalition"))
        c.members.push_back(g.player_index(nm.get<std::string>()));
      std::sort(c.members.begin(), c.members.end());
      RatVec z = get_vec(w.at("improvement"));
      int s0 = g.init;
      if (cmd == "dominated" && res.contains("state"))
        s0 = g.state_index(res.at("state").get<std::string>());
      if (!can_enforce(g, c, s0, z, budget)) ok = false;
    }
    if (paranoid && !profile_path.empty() &&
        (cmd == "membership" || cmd == "bendev")) {
      StrategyProfile p = parse_profile(slurp(profile_path), g);
      Tri t = brute_membership(g, p, brute);
      bool member = cmd == "membership" ? yes : !yes;
      if (t == Tri::no && member) ok = false;
    }
    std::cout << "verify: " << (ok ? "ok" : "FAILED") << "\n";
    return ok ? 0 : 1;
  }

  CoreSolver solver(g, budget);
  Verdict v;
  if (sub == c_dom) {
    v = solver.dominated(g.state_index(state_name),
                         parse_vec(vec_text, g.num_players()));
  } else if (sub == c_bendev) {
    v = solver.exists_beneficial_deviation(parse_profile(slurp(profile_path), g));
  } else if (sub == c_member) {
    v = solver.membership(parse_profile(slurp(profile_path), g));
  } else if (sub == c_nonempty) {
    v = solver.core_nonempty();
  } else if (sub == c_ecore) {
    v = solver.e_core_gr1(load_spec(spec_text));
  } else if (sub == c_acore) {
    v = solver.a_core_gr1(load_spec(spec_text));
  }
  done();
  return out.emit(g, v);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
