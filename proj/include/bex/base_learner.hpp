#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "bex/knowledge.hpp"
#include "bex/trace.hpp"

namespace bex {

struct LearnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AchievedFact {
  int state;  // index of the state the action was executed in
  ActionTerm action;
  std::set<Atom> props;
};

struct ContributedFact {
  int state;
  Atom prop;
  ActionTerm action;
};

namespace detail {

inline std::set<Atom> observed_atoms(const Corpus& corpus) {
  std::set<Atom> all;
  for (const auto& inst : corpus.instances)
    for (const auto& s : inst.states) all.insert(s.begin(), s.end());
  return all;
}

inline std::set<Atom> intersect(const std::set<Atom>& a, const std::set<Atom>& b) {
  std::set<Atom> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

inline std::set<Atom> subtract(const std::set<Atom>& a, const std::set<Atom>& b) {
  std::set<Atom> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

}  // namespace detail

/// statics: atoms present in every state of every instance; fluents: the rest.
inline std::pair<std::set<Atom>, std::set<Atom>> classify_propositions(
    const Corpus& corpus) {
  if (corpus.instances.empty()) throw LearnError("classify: empty corpus");
  std::set<Atom> all = detail::observed_atoms(corpus);
  std::set<Atom> statics = all;
  for (const auto& inst : corpus.instances)
    for (const auto& s : inst.states) statics = detail::intersect(statics, s);
  return {statics, detail::subtract(all, statics)};
}

/// precond(a) = intersection, over every state a was executed in, of the
/// state's fluent props.
inline std::map<ActionTerm, std::set<Atom>> learn_preconditions(
    const Corpus& corpus, const std::set<Atom>& fluents) {
  std::map<ActionTerm, std::set<Atom>> pre;
  for (const auto& inst : corpus.instances)
    for (const auto& t : transitions(inst)) {
      std::set<Atom> here = detail::intersect(*t.pre, fluents);
      auto [it, fresh] = pre.emplace(*t.action, std::move(here));
      if (!fresh) it->second = detail::intersect(it->second, detail::intersect(*t.pre, fluents));
    }
  return pre;
}

/// pos(a) = intersection over executions of (next - pre);
/// neg(a) = intersection over executions of (pre - next).
/// Intersection washes out injected noise atoms.
inline std::pair<std::map<ActionTerm, std::set<Atom>>,
                 std::map<ActionTerm, std::set<Atom>>>
learn_effects(const Corpus& corpus) {
  std::map<ActionTerm, std::set<Atom>> pos, neg;
  for (const auto& inst : corpus.instances)
    for (const auto& t : transitions(inst)) {
      std::set<Atom> added = detail::subtract(*t.post, *t.pre);
      std::set<Atom> removed = detail::subtract(*t.pre, *t.post);
      auto [ip, freshp] = pos.emplace(*t.action, added);
      if (!freshp) ip->second = detail::intersect(ip->second, added);
      auto [in_, freshn] = neg.emplace(*t.action, removed);
      if (!freshn) in_->second = detail::intersect(in_->second, removed);
    }
  return {pos, neg};
}

/// goal = intersection of final states of successful instances, minus statics.
inline std::set<Atom> learn_goal(const Corpus& corpus, const std::set<Atom>& statics) {
  bool any = false;
  std::set<Atom> goal;
  for (const auto& inst : corpus.instances) {
    if (!inst.successful) continue;
    if (!any) {
      goal = inst.states.back();
      any = true;
    } else {
      goal = detail::intersect(goal, inst.states.back());
    }
  }
  if (!any) throw LearnError("learn_goal: no successful instances");
  return detail::subtract(goal, statics);
}

inline std::set<Atom> learn_desired_props(const std::set<Atom>& goal) { return goal; }

namespace detail {

/// first state index where p holds, or -1
inline int first_occurrence(const BehaviorInstance& inst, const Atom& p) {
  for (std::size_t i = 0; i < inst.states.size(); ++i)
    if (inst.states[i].count(p)) return static_cast<int>(i);
  return -1;
}

}  // namespace detail

/// (p1,p2) iff both fluents occur in >=1 common instance and, in every
/// instance where both occur, either both hold at state 0 or p1's first
/// occurrence is earlier than p2's; excluded when the ordering is explained by
/// p1 being a precondition of an action executed between the two first
/// occurrences (in every such instance).
inline std::set<std::pair<Atom, Atom>> learn_must_precede(
    const Corpus& corpus, const std::set<Atom>& fluents,
    const std::map<ActionTerm, std::set<Atom>>& precond) {
  std::set<std::pair<Atom, Atom>> out;
  for (const auto& p1 : fluents)
    for (const auto& p2 : fluents) {
      if (p1 == p2) continue;
      bool common = false, ordered = true, always_precond_explained = true;
      for (const auto& inst : corpus.instances) {
        int f1 = detail::first_occurrence(inst, p1);
        int f2 = detail::first_occurrence(inst, p2);
        if (f1 < 0 || f2 < 0) continue;
        common = true;
        if (f1 == 0 && f2 == 0) continue;  // co-initial: no constraint
        if (f1 >= f2) {
          ordered = false;
          break;
        }
        bool used = false;
        for (int i = f1; i < f2 && i < static_cast<int>(inst.actions.size()); ++i) {
          auto it = precond.find(inst.actions[i]);
          if (it != precond.end() && it->second.count(p1)) {
            used = true;
            break;
          }
        }
        if (!used) always_precond_explained = false;
      }
      if (common && ordered && !always_precond_explained) out.insert({p1, p2});
    }
  return out;
}

/// Non-goal fluents that occur in at least one state of every instance.
inline std::set<Atom> learn_mandatory(const Corpus& corpus, const std::set<Atom>& goal,
                                      const std::set<Atom>& fluents) {
  std::set<Atom> out;
  for (const auto& p : fluents) {
    if (goal.count(p)) continue;
    bool everywhere = true;
    for (const auto& inst : corpus.instances)
      if (detail::first_occurrence(inst, p) < 0) {
        everywhere = false;
        break;
      }
    if (everywhere) out.insert(p);
  }
  return out;
}

/// One fact per (state, prop, action) where the prop held and is a learned
/// precondition of the action executed there.
inline std::vector<ContributedFact> derive_contributed(
    const BehaviorInstance& inst,
    const std::map<ActionTerm, std::set<Atom>>& precond) {
  std::vector<ContributedFact> out;
  for (const auto& t : transitions(inst)) {
    auto it = precond.find(*t.action);
    if (it == precond.end()) continue;
    for (const auto& p : it->second)
      if (t.pre->count(p)) out.push_back({t.index, p, *t.action});
  }
  return out;
}

/// Relevant achievements: atoms the action made true that are goals, or that
/// persist until a later action uses them as a precondition.
inline std::vector<AchievedFact> derive_achieved(
    const BehaviorInstance& inst, const std::set<Atom>& goal,
    const std::map<ActionTerm, std::set<Atom>>& precond,
    const std::map<ActionTerm, std::set<Atom>>& /*pos_effects*/) {
  std::vector<AchievedFact> out;
  for (const auto& t : transitions(inst)) {
    std::set<Atom> relevant;
    for (const auto& p : detail::subtract(*t.post, *t.pre)) {
      if (goal.count(p)) {
        relevant.insert(p);
        continue;
      }
      // p must persist from its creation to the state of the using action
      for (std::size_t j = t.index + 1; j < inst.actions.size(); ++j) {
        if (!inst.states[j].count(p)) break;
        auto it = precond.find(inst.actions[j]);
        if (it != precond.end() && it->second.count(p)) {
          relevant.insert(p);
          break;
        }
      }
    }
    if (!relevant.empty()) out.push_back({t.index, *t.action, std::move(relevant)});
  }
  return out;
}

}  // namespace bex
