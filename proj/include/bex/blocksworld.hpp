#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bex/term.hpp"
#include "bex/trace.hpp"

namespace bex {

/// Three blocks a, b, c and four table positions p1..p4. A configuration maps
/// each block to its support (a table position or another block). Valid
/// configurations have no shared supports and no cycles.
struct BlocksConfig {
  std::map<std::string, std::string> on;  // block -> place

  bool valid() const {
    static const std::array<std::string, 3> blocks = {"a", "b", "c"};
    if (on.size() != 3) return false;
    std::set<std::string> supports;
    for (const auto& bl : blocks) {
      auto it = on.find(bl);
      if (it == on.end()) return false;
      const std::string& place = it->second;
      if (place == bl) return false;
      bool is_block = std::find(blocks.begin(), blocks.end(), place) != blocks.end();
      bool is_pos = place.size() == 2 && place[0] == 'p' && place[1] >= '1' && place[1] <= '4';
      if (!is_block && !is_pos) return false;
      if (!supports.insert(place).second) return false;
    }
    // cycle check: every block must bottom out at a table position
    for (const auto& bl : blocks) {
      std::string cur = bl;
      int steps = 0;
      while (on.count(cur)) {
        cur = on.at(cur);
        if (++steps > 3) return false;
      }
    }
    return true;
  }
};

enum class InjectionKind { None, PreventionA, PreventionB, Stacked };

struct InjectionScenario {
  InjectionKind kind = InjectionKind::None;
  std::uint64_t seed = 0;
};

namespace bw {

inline const std::vector<std::string>& blocks() {
  static const std::vector<std::string> v = {"a", "b", "c"};
  return v;
}
inline const std::vector<std::string>& positions() {
  static const std::vector<std::string> v = {"p1", "p2", "p3", "p4"};
  return v;
}

inline Atom on_atom(const std::string& x, const std::string& y) {
  return Term::symbol("on", {Term::symbol(x), Term::symbol(y)});
}
inline Atom clear_atom(const std::string& x) {
  return Term::symbol("clear", {Term::symbol(x)});
}
inline ActionTerm move_action(const std::string& bl, const std::string& from,
                              const std::string& to) {
  return Term::symbol("move", {Term::symbol(bl), Term::symbol(from), Term::symbol(to)});
}

/// move(b,x,y) is legal when on(b,x), clear(b), clear(y) all hold.
inline bool move_legal(const PropSet& s, const std::string& bl,
                       const std::string& from, const std::string& to) {
  return s.count(on_atom(bl, from)) && s.count(clear_atom(bl)) &&
         s.count(clear_atom(to));
}

/// successor = s - {on(b,x), clear(y)} + {on(b,y), clear(x)}
inline PropSet move_apply(PropSet s, const std::string& bl,
                          const std::string& from, const std::string& to) {
  s.erase(on_atom(bl, from));
  s.erase(clear_atom(to));
  s.insert(on_atom(bl, to));
  s.insert(clear_atom(from));
  return s;
}

inline const PropSet& goal_atoms() {
  static const PropSet g = {on_atom("a", "b"), on_atom("b", "c"), clear_atom("a")};
  return g;
}

inline bool goal_holds(const PropSet& s) {
  for (const auto& g : goal_atoms())
    if (!s.count(g)) return false;
  return true;
}

}  // namespace bw

/// All 120 valid initial configurations, in a fixed deterministic order
/// (lexicographic over the (a,b,c) support triple).
inline std::vector<BlocksConfig> enumerate_initial_configs() {
  std::vector<std::string> places = {"a", "b", "c", "p1", "p2", "p3", "p4"};
  std::sort(places.begin(), places.end());
  std::vector<BlocksConfig> out;
  for (const auto& pa : places)
    for (const auto& pb : places)
      for (const auto& pc : places) {
        BlocksConfig cfg{{{"a", pa}, {"b", pb}, {"c", pc}}};
        if (cfg.valid()) out.push_back(cfg);
      }
  return out;
}

/// on(b,place) for every block plus clear(x) for every block or position with
/// nothing on it.
inline PropSet config_to_state(const BlocksConfig& cfg) {
  PropSet s;
  std::set<std::string> occupied;
  for (const auto& [bl, place] : cfg.on) {
    s.insert(bw::on_atom(bl, place));
    occupied.insert(place);
  }
  for (const auto& bl : bw::blocks())
    if (!occupied.count(bl)) s.insert(bw::clear_atom(bl));
  for (const auto& pos : bw::positions())
    if (!occupied.count(pos)) s.insert(bw::clear_atom(pos));
  return s;
}

namespace bw {

inline bool is_block(const std::string& s) {
  return s == "a" || s == "b" || s == "c";
}

/// The actor never parks `a` on a table position when taking it off `b`:
/// it goes to `c`, which is provably clear in that situation. (With a on b,
/// a covered c would force b-on-c, i.e. the goal, and the trace would have
/// ended.) This keeps the observed executions of every move action free of
/// context atoms that the goal-terminated corpus could never vary.
inline std::vector<std::pair<std::string, std::string>> wander_moves(
    const std::map<std::string, std::string>& on) {
  auto clear = [&](const std::string& place) {
    for (const auto& [bl, sup] : on)
      if (sup == place) return false;
    return true;
  };
  std::vector<std::pair<std::string, std::string>> out;  // (block, to)
  static const std::vector<std::string> places = {"a",  "b",  "c", "p1",
                                                  "p2", "p3", "p4"};
  for (const auto& bl : blocks()) {
    if (!clear(bl)) continue;
    for (const auto& to : places) {
      if (to == bl || to == on.at(bl) || !clear(to)) continue;
      if (bl == "a" && on.at("a") == "b" && to != "c") continue;
      out.push_back({bl, to});
    }
  }
  return out;
}

/// Shared state of a full corpus generation: the running per-action
/// pre-state intersection and execution counts that drive the exploratory
/// phase toward context diversity.
struct ActorMemory {
  std::map<ActionTerm, PropSet> pre;
  std::map<ActionTerm, int> count;

  // how many currently-intersected context atoms this execution would remove
  int wash(const ActionTerm& a, const PropSet& here) const {
    auto it = pre.find(a);
    if (it == pre.end()) return 99;
    int n = 0;
    for (const auto& p : it->second)
      if (!here.count(p)) ++n;
    return n;
  }
};

}  // namespace bw

/// One observed behaviour: an exploratory prefix of `wander_steps` legal
/// moves (each chosen to maximally diversify the executed action's observed
/// contexts, ties broken by execution count then canonical order), then the
/// direct policy — unstack everything onto the table, build b-on-c, then
/// a-on-b. The instance ends at the first state where the goal atoms hold.
inline BehaviorInstance solve_instance(const BlocksConfig& cfg, std::string id,
                                       int wander_steps, bw::ActorMemory& mem) {
  BehaviorInstance inst;
  inst.id = std::move(id);

  std::map<std::string, std::string> on = cfg.on;
  auto state = [&] { return config_to_state(BlocksConfig{on}); };
  inst.states.push_back(state());

  auto clear = [&](const std::string& place) {
    for (const auto& [bl, sup] : on)
      if (sup == place) return false;
    return true;
  };
  bool done = bw::goal_holds(inst.states.front());
  auto step = [&](const std::string& bl, const std::string& to) {
    if (done) return;
    ActionTerm a = bw::move_action(bl, on.at(bl), to);
    const PropSet& here = inst.states.back();
    auto [it, fresh] = mem.pre.emplace(a, here);
    if (!fresh) {
      PropSet kept;
      for (const auto& p : it->second)
        if (here.count(p)) kept.insert(p);
      it->second = std::move(kept);
    }
    ++mem.count[a];
    inst.actions.push_back(std::move(a));
    on[bl] = to;
    inst.states.push_back(state());
    if (bw::goal_holds(inst.states.back())) done = true;
  };
  // (wash, count, term) preference over candidate moves
  auto pick_best = [&](const std::vector<std::pair<std::string, std::string>>& cand) {
    const PropSet& here = inst.states.back();
    std::size_t best = 0;
    auto key = [&](std::size_t i) {
      ActionTerm a = bw::move_action(cand[i].first, on.at(cand[i].first),
                                     cand[i].second);
      auto cnt = mem.count.find(a);
      return std::tuple(-mem.wash(a, here), cnt == mem.count.end() ? 0 : cnt->second,
                        std::move(a));
    };
    auto best_key = key(0);
    for (std::size_t i = 1; i < cand.size(); ++i)
      if (auto k = key(i); k < best_key) {
        best_key = std::move(k);
        best = i;
      }
    return cand[best];
  };

  for (int k = 0; k < wander_steps && !done; ++k) {
    auto moves = bw::wander_moves(on);
    auto [bl, to] = pick_best(moves);
    step(bl, to);
  }

  // unstack: alphabetically-first clear block that sits on another block
  while (!done) {
    std::string pick;
    for (const auto& bl : bw::blocks())
      if (bw::is_block(on.at(bl)) && clear(bl)) {
        pick = bl;
        break;
      }
    if (pick.empty()) break;
    if (pick == "a" && on.at("a") == "b") {
      step("a", "c");
      continue;
    }
    std::vector<std::pair<std::string, std::string>> cand;
    for (const auto& pos : bw::positions())
      if (clear(pos)) cand.push_back({pick, pos});
    auto [bl, to] = pick_best(cand);
    step(bl, to);
  }
  step("b", "c");
  step("a", "b");
  return inst;
}

/// Direct solution with no exploratory prefix (fresh actor memory).
inline BehaviorInstance solve_instance(const BlocksConfig& cfg, std::string id) {
  bw::ActorMemory mem;
  return solve_instance(cfg, std::move(id), 0, mem);
}

namespace bw {

inline Atom injected_p() { return Term::symbol("p"); }
inline Atom injected_preventingp() { return Term::symbol("preventingp"); }
inline Atom stacked_atom() {
  return Term::symbol("stacked", {Term::list({Term::symbol("a"), Term::symbol("b"),
                                              Term::symbol("c")})});
}

}  // namespace bw

/// The 120 solved instances, with the scenario's injections applied.
/// Pure function of (scenario, seed): identical inputs give identical corpora.
inline Corpus generate_corpus(const InjectionScenario& scenario) {
  Corpus corpus;
  corpus.class_id = "bw";
  auto configs = enumerate_initial_configs();
  bw::ActorMemory mem;
  for (std::size_t i = 0; i < configs.size(); ++i)
    corpus.instances.push_back(solve_instance(
        configs[i], "bw" + std::to_string(i), 2 + static_cast<int>(i % 4), mem));

  std::mt19937_64 rng(scenario.seed);
  auto coin = [&] { return (rng() & 1) != 0; };

  switch (scenario.kind) {
    case InjectionKind::None:
      break;
    case InjectionKind::PreventionA:
      for (auto& inst : corpus.instances)
        for (auto& s : inst.states) {
          if (coin()) {
            s.insert(bw::injected_preventingp());
            break;  // nothing injected after preventingp
          }
          s.insert(bw::injected_p());
        }
      break;
    case InjectionKind::PreventionB:
      for (auto& inst : corpus.instances) {
        bool preventing = false;
        for (auto& s : inst.states) {
          if (!preventing && coin()) preventing = true;
          s.insert(preventing ? bw::injected_preventingp() : bw::injected_p());
        }
      }
      break;
    case InjectionKind::Stacked:
      for (auto& inst : corpus.instances)
        inst.states.back().insert(bw::stacked_atom());
      break;
  }
  return corpus;
}

/// The worked 5-state replay trace: c at p4 with a on it, b at p1; the actor
/// stacks a onto b prematurely, undoes it, and then builds the goal stack.
inline BehaviorInstance figure2_instance() {
  BehaviorInstance inst;
  inst.id = "fig2";
  PropSet s = {bw::on_atom("c", "p4"), bw::on_atom("a", "c"), bw::on_atom("b", "p1"),
               bw::clear_atom("a"),    bw::clear_atom("b"),   bw::clear_atom("p2"),
               bw::clear_atom("p3")};
  inst.states.push_back(s);
  struct Mv { const char *bl, *from, *to; };
  for (const Mv& m : {Mv{"a", "c", "b"}, Mv{"a", "b", "p2"}, Mv{"b", "p1", "c"},
                      Mv{"a", "p2", "b"}}) {
    if (!bw::move_legal(s, m.bl, m.from, m.to))
      throw std::logic_error("figure2 replay: illegal move");
    inst.actions.push_back(bw::move_action(m.bl, m.from, m.to));
    s = bw::move_apply(std::move(s), m.bl, m.from, m.to);
    inst.states.push_back(s);
  }
  return inst;
}

/// Synthetic three-atom class exercising goal prevention: successful
/// instances achieve g from {free}; fragment instances lose free forever
/// (spoil), making g unreachable. Fragments are flagged unsuccessful and so
/// excluded from goal learning.
inline Corpus micro_domain_corpus() {
  Corpus corpus;
  corpus.class_id = "micro";
  const Atom free_a = Term::symbol("free");
  const Atom g = Term::symbol("g");
  const Atom q = Term::symbol("q");
  const int n = 3;
  for (int i = 0; i < n; ++i) {
    BehaviorInstance ok;
    ok.id = "ok" + std::to_string(i);
    ok.states = {{free_a}, {free_a, g}};
    ok.actions = {Term::symbol("makeg")};
    corpus.instances.push_back(std::move(ok));
  }
  for (int i = 0; i < n; ++i) {
    BehaviorInstance frag;
    frag.id = "frag" + std::to_string(i);
    frag.states = {{free_a}, {q}};
    frag.actions = {Term::symbol("spoil")};
    frag.successful = false;
    corpus.instances.push_back(std::move(frag));
  }
  return corpus;
}

}  // namespace bex
