#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "bex/base_learner.hpp"
#include "bex/knowledge.hpp"
#include "bex/planner.hpp"
#include "bex/trace.hpp"

namespace bex {

/// {a : pos(a) touches a desired prop, no undesired prop, and neg(a) deletes
/// no desired prop}
inline std::set<ActionTerm> learn_desired_actions(const KnowledgeBase& kb) {
  std::set<ActionTerm> out;
  for (const auto& a : kb.actions) {
    const auto& pos = kb.pos_of(a);
    const auto& neg = kb.neg_of(a);
    bool adds_desired = false, adds_undesired = false, dels_desired = false;
    for (const auto& p : pos) {
      if (kb.desired_props.count(p)) adds_desired = true;
      if (kb.undesired_props.count(p)) adds_undesired = true;
    }
    for (const auto& p : neg)
      if (kb.desired_props.count(p)) dels_desired = true;
    if (adds_desired && !adds_undesired && !dels_desired) out.insert(a);
  }
  return out;
}

/// {p : p prevents some desired entity}
inline std::set<Atom> derive_undesired_props(
    const std::set<std::pair<Entity, Entity>>& prevents,
    const std::set<Entity>& desired_entities) {
  std::set<Atom> out;
  for (const auto& [src, dst] : prevents)
    if (src.kind == EntityKind::Prop && desired_entities.count(dst))
      out.insert(src.term);
  return out;
}

/// {a : pos(a) adds an undesired prop}
inline std::set<ActionTerm> derive_undesired_actions(const KnowledgeBase& kb) {
  std::set<ActionTerm> out;
  for (const auto& a : kb.actions)
    for (const auto& p : kb.pos_of(a))
      if (kb.undesired_props.count(p)) {
        out.insert(a);
        break;
      }
  return out;
}

/// Everything neither desired nor undesired.
inline std::pair<std::set<Atom>, std::set<ActionTerm>> derive_neutral(
    const KnowledgeBase& kb) {
  std::set<Atom> props;
  for (const auto& p : kb.fluents)
    if (!kb.desired_props.count(p) && !kb.undesired_props.count(p)) props.insert(p);
  std::set<ActionTerm> actions;
  for (const auto& a : kb.actions)
    if (!kb.desired_actions.count(a) && !kb.undesired_actions.count(a))
      actions.insert(a);
  return {props, actions};
}

/// Unordered fluent pairs that never share a state. Stored with first < second.
inline std::set<std::pair<Atom, Atom>> learn_incompatible_props(
    const Corpus& corpus, const std::set<Atom>& fluents) {
  std::set<std::pair<Atom, Atom>> cooccur;
  for (const auto& inst : corpus.instances)
    for (const auto& s : inst.states) {
      std::vector<const Atom*> in_state;
      for (const auto& p : s)
        if (fluents.count(p)) in_state.push_back(&p);
      for (std::size_t i = 0; i < in_state.size(); ++i)
        for (std::size_t j = i + 1; j < in_state.size(); ++j)
          cooccur.insert({*in_state[i], *in_state[j]});
    }
  std::set<std::pair<Atom, Atom>> out;
  for (auto i = fluents.begin(); i != fluents.end(); ++i)
    for (auto j = std::next(i); j != fluents.end(); ++j)
      if (!cooccur.count({*i, *j})) out.insert({*i, *j});
  return out;
}

/// (p,a) iff some precondition of a is incompatible with p.
inline std::set<std::pair<Atom, ActionTerm>> derive_incompatible_prop_action(
    const KnowledgeBase& kb) {
  std::set<std::pair<Atom, ActionTerm>> out;
  for (const auto& a : kb.actions)
    for (const auto& q : kb.precond_of(a))
      for (const auto& p : kb.fluents)
        if (kb.is_incompatible(q, p)) out.insert({p, a});
  return out;
}

namespace detail {

inline bool all_constant_distinct(const Term& action) {
  std::set<std::string> seen;
  for (const auto& a : action.args) {
    if (!a.is_constant()) return false;
    if (!seen.insert(a.functor).second) return false;
  }
  return true;
}

inline Term rename(const Term& t, const std::map<std::string, std::string>& sub) {
  if (t.kind == Term::Kind::Symbol && t.args.empty()) {
    auto it = sub.find(t.functor);
    if (it != sub.end()) return Term::symbol(it->second);
    return t;
  }
  Term out = t;
  for (auto& a : out.args) a = rename(a, sub);
  return out;
}

inline std::set<Atom> rename_set(const std::set<Atom>& s,
                                 const std::map<std::string, std::string>& sub) {
  std::set<Atom> out;
  for (const auto& a : s) out.insert(rename(a, sub));
  return out;
}

}  // namespace detail

/// Generalizes the observed ground action models to every instantiation over
/// the observed constants whose model atoms were all observed, and returns a
/// KB extended with those extra actions. Used only for reachability search:
/// observation rarely covers every ground action of a schema, and prevention
/// is a claim about what is achievable, not about what was observed.
inline KnowledgeBase planning_alphabet(const KnowledgeBase& kb) {
  KnowledgeBase out = kb;
  std::set<Atom> observed = kb.statics;
  observed.insert(kb.fluents.begin(), kb.fluents.end());

  std::map<std::pair<std::string, std::size_t>, std::vector<ActionTerm>> groups;
  for (const auto& a : kb.actions) {
    if (a.kind != Term::Kind::Symbol || a.args.empty()) continue;
    if (!detail::all_constant_distinct(a)) continue;
    groups[{a.functor, a.args.size()}].push_back(a);
  }

  for (const auto& [sig, members] : groups) {
    auto placeholder = [](std::size_t i) { return "#" + std::to_string(i); };
    // one schema per functor: every member must lift to the same model
    std::set<Atom> lpre, lpos, lneg;
    std::set<std::string> constants;
    bool consistent = true;
    for (std::size_t m = 0; m < members.size(); ++m) {
      std::map<std::string, std::string> sub;
      for (std::size_t i = 0; i < members[m].args.size(); ++i) {
        sub[members[m].args[i].functor] = placeholder(i);
        constants.insert(members[m].args[i].functor);
      }
      std::set<Atom> pre = detail::rename_set(kb.precond_of(members[m]), sub);
      std::set<Atom> pos = detail::rename_set(kb.pos_of(members[m]), sub);
      std::set<Atom> neg = detail::rename_set(kb.neg_of(members[m]), sub);
      if (m == 0) {
        lpre = std::move(pre);
        lpos = std::move(pos);
        lneg = std::move(neg);
      } else if (pre != lpre || pos != lpos || neg != lneg) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;

    std::vector<std::string> pool(constants.begin(), constants.end());
    std::vector<std::string> tuple(sig.second);
    std::vector<bool> used(pool.size(), false);
    auto instantiate = [&](auto&& self, std::size_t pos_i) -> void {
      if (pos_i == sig.second) {
        std::vector<Term> args;
        for (const auto& c : tuple) args.push_back(Term::symbol(c));
        ActionTerm act = Term::symbol(sig.first, args);
        if (out.actions.count(act)) return;
        std::map<std::string, std::string> sub;
        for (std::size_t i = 0; i < tuple.size(); ++i) sub[placeholder(i)] = tuple[i];
        std::set<Atom> pre = detail::rename_set(lpre, sub);
        std::set<Atom> posfx = detail::rename_set(lpos, sub);
        std::set<Atom> negfx = detail::rename_set(lneg, sub);
        for (const auto& grp : {&pre, &posfx, &negfx})
          for (const auto& at : *grp)
            if (!observed.count(at)) return;
        out.actions.insert(act);
        out.precond[act] = std::move(pre);
        out.pos_effects[act] = std::move(posfx);
        out.neg_effects[act] = std::move(negfx);
        return;
      }
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        tuple[pos_i] = pool[i];
        self(self, pos_i + 1);
        used[i] = false;
      }
    };
    instantiate(instantiate, 0);
  }
  return out;
}

/// Two-stage proposition-level prevention learning.
/// Stage 1 keeps (p1,p2) when p2 never holds strictly after a p1-state in any
/// instance (p1 = p2 allowed). Stage 2 drops the pair when, from some observed
/// p1-state, a plan of length <= bound reaches a p2-state; for self pairs the
/// search starts with the atom removed, since the question is whether it can
/// occur again.
inline std::set<std::pair<Atom, Atom>> learn_prevents_props(
    const Corpus& corpus, const std::set<Atom>& fluents, const KnowledgeBase& kb,
    int bound) {
  // per instance: first and last occurrence of each fluent
  std::map<Atom, std::set<PropSet>> p1_states;
  std::vector<std::map<Atom, std::pair<int, int>>> occ(corpus.instances.size());
  for (std::size_t k = 0; k < corpus.instances.size(); ++k) {
    const auto& inst = corpus.instances[k];
    for (int i = 0; i < static_cast<int>(inst.states.size()); ++i)
      for (const auto& p : inst.states[i]) {
        if (!fluents.count(p)) continue;
        auto [it, fresh] = occ[k].emplace(p, std::pair{i, i});
        if (!fresh) it->second.second = i;
        p1_states[p].insert(inst.states[i]);
      }
  }

  std::set<std::pair<Atom, Atom>> stage1;
  for (const auto& p1 : fluents)
    for (const auto& p2 : fluents) {
      bool ok = true;
      for (const auto& o : occ) {
        auto i1 = o.find(p1);
        auto i2 = o.find(p2);
        if (i1 == o.end() || i2 == o.end()) continue;
        if (i2->second.second > i1->second.first) {
          ok = false;
          break;
        }
      }
      if (ok) stage1.insert({p1, p2});
    }

  KnowledgeBase alphabet = planning_alphabet(kb);
  // one reachability sweep per distinct start state, shared across pairs
  std::map<PropSet, std::set<Atom>> reach_cache;
  auto reach = [&](const PropSet& start) -> const std::set<Atom>& {
    auto it = reach_cache.find(start);
    if (it != reach_cache.end()) return it->second;
    std::set<Atom> atoms = start;
    std::set<PropSet> seen = {start};
    std::vector<std::pair<PropSet, int>> queue = {{start, 0}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      if (queue[head].second >= bound) continue;
      SearchNode node{queue[head].first, {}, queue[head].second};
      for (auto& [a, next] : successors(node, alphabet)) {
        if (!seen.insert(next.props).second) continue;
        atoms.insert(next.props.begin(), next.props.end());
        queue.emplace_back(std::move(next.props), next.depth);
      }
    }
    return reach_cache.emplace(start, std::move(atoms)).first->second;
  };

  std::set<std::pair<Atom, Atom>> out;
  for (const auto& pair : stage1) {
    const auto& [p1, p2] = pair;
    bool achievable = false;
    for (const auto& s : p1_states[p1]) {
      PropSet start = s;
      if (p1 == p2) start.erase(p1);
      if (reach(start).count(p2)) {
        achievable = true;
        break;
      }
    }
    if (!achievable) out.insert(pair);
  }
  return out;
}

/// Lifts proposition-level prevention to the mixed entity clauses:
///   (P,A)  when P prevents some precondition of A;
///   (A,P)  when A adds some q incompatible with P that prevents P;
///   (A1,A2) when A1 adds some p incompatible with A2 that prevents A2.
inline std::set<std::pair<Entity, Entity>> derive_prevents_mixed(
    const KnowledgeBase& kb) {
  std::set<std::pair<Entity, Entity>> out;
  auto prop_prevents_action = [&](const Atom& p, const ActionTerm& a) {
    for (const auto& q : kb.precond_of(a))
      if (kb.prop_prevents(p, q)) return true;
    return false;
  };
  for (const auto& a : kb.actions)
    for (const auto& p : kb.fluents)
      if (prop_prevents_action(p, a))
        out.insert({prop_entity(p), action_entity(a)});
  for (const auto& a : kb.actions)
    for (const auto& q : kb.pos_of(a))
      for (const auto& p : kb.fluents)
        if (kb.is_incompatible(q, p) && kb.prop_prevents(q, p))
          out.insert({action_entity(a), prop_entity(p)});
  for (const auto& a1 : kb.actions)
    for (const auto& p : kb.pos_of(a1))
      for (const auto& a2 : kb.actions)
        if (kb.incompatible_prop_action.count({p, a2}) &&
            prop_prevents_action(p, a2))
          out.insert({action_entity(a1), action_entity(a2)});
  return out;
}

}  // namespace bex
