#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bex/deontic.hpp"
#include "bex/knowledge.hpp"
#include "bex/trace.hpp"

namespace bex {

/// Forward-search node. `flags` records per-principle history that the bare
/// proposition set cannot: for MustPrecede, whether some visited state had
/// p1 and not p2; for Undesired, whether the tracked atom ever held.
struct SearchNode {
  PropSet props;
  std::map<IdealityPrinciple, bool> flags;
  int depth = 0;
};

namespace detail {

inline bool flag_contribution(const IdealityPrinciple& pr, const PropSet& s) {
  switch (pr.kind) {
    case IdealityPrinciple::Kind::MustPrecede:
      return s.count(pr.p1) && !s.count(pr.p2);
    case IdealityPrinciple::Kind::Undesired:
      return s.count(pr.p1) > 0;
    default:
      return false;
  }
}

inline void absorb_flags(std::map<IdealityPrinciple, bool>& flags, const PropSet& s) {
  for (auto& [pr, f] : flags)
    if (!f) f = flag_contribution(pr, s);
}

/// Fulfilled on an abstract (props, flags) state. `trivial` short-circuits
/// MustPrecede principles whose atoms both held in the instance's initial
/// state.
inline bool fulfilled_abstract(const IdealityPrinciple& pr, const PropSet& props,
                               const std::map<IdealityPrinciple, bool>& flags,
                               bool trivial) {
  switch (pr.kind) {
    case IdealityPrinciple::Kind::Desired:
    case IdealityPrinciple::Kind::Mandatory:
      return props.count(pr.p1) > 0;
    case IdealityPrinciple::Kind::Undesired: {
      auto it = flags.find(pr);
      return !(it != flags.end() && it->second);
    }
    case IdealityPrinciple::Kind::MustPrecede: {
      if (trivial) return true;
      if (!props.count(pr.p2)) return false;
      auto it = flags.find(pr);
      return it != flags.end() && it->second;
    }
  }
  return false;
}

/// Fulfilled against the actual instance (no KB dependency).
inline bool is_fulfilled(const IdealityPrinciple& pr, const BehaviorInstance& inst,
                         int s) {
  switch (pr.kind) {
    case IdealityPrinciple::Kind::Desired:
    case IdealityPrinciple::Kind::Mandatory:
      return inst.states.at(s).count(pr.p1) > 0;
    case IdealityPrinciple::Kind::Undesired:
      for (int t = 0; t <= s; ++t)
        if (inst.states[t].count(pr.p1)) return false;
      return true;
    case IdealityPrinciple::Kind::MustPrecede: {
      const PropSet& initial = inst.states.front();
      if (initial.count(pr.p1) && initial.count(pr.p2)) return true;
      if (!inst.states.at(s).count(pr.p2)) return false;
      for (int t = 0; t < s; ++t)
        if (inst.states[t].count(pr.p1) && !inst.states[t].count(pr.p2)) return true;
      return false;
    }
  }
  return false;
}

}  // namespace detail

/// Applicable actions and their successor nodes, in canonical action order.
inline std::vector<std::pair<ActionTerm, SearchNode>> successors(
    const SearchNode& node, const KnowledgeBase& kb) {
  std::vector<std::pair<ActionTerm, SearchNode>> out;
  for (const auto& a : kb.actions) {
    const auto& pre = kb.precond_of(a);
    if (!std::includes(node.props.begin(), node.props.end(), pre.begin(), pre.end()))
      continue;
    SearchNode next;
    next.props = node.props;
    for (const auto& p : kb.neg_of(a)) next.props.erase(p);
    const auto& pos = kb.pos_of(a);
    next.props.insert(pos.begin(), pos.end());
    next.flags = node.flags;
    detail::absorb_flags(next.flags, next.props);
    next.depth = node.depth + 1;
    out.emplace_back(a, std::move(next));
  }
  return out;
}

namespace detail {

/// Breadth-first search shared by bounded_reach and optimum_sequence.
/// Returns the shortest action sequence from `start` to a node satisfying
/// `goal`, or absent within `bound`. Ties resolve to the plan whose steps are
/// earliest in canonical action order because successors() enumerates actions
/// sorted and the frontier is processed FIFO.
template <class GoalFn>
inline std::optional<std::vector<ActionTerm>> bfs(SearchNode start, int bound,
                                                  const KnowledgeBase& kb,
                                                  GoalFn goal) {
  if (goal(start)) return std::vector<ActionTerm>{};
  struct Entry {
    SearchNode node;
    int parent;
    ActionTerm via;
  };
  std::vector<Entry> nodes;
  std::set<std::pair<PropSet, std::map<IdealityPrinciple, bool>>> seen;
  seen.insert({start.props, start.flags});
  nodes.push_back({std::move(start), -1, {}});
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].node.depth >= bound) continue;
    for (auto& [a, next] : successors(nodes[head].node, kb)) {
      if (!seen.insert({next.props, next.flags}).second) continue;
      if (goal(next)) {
        std::vector<ActionTerm> plan = {a};
        for (int i = static_cast<int>(head); nodes[i].parent >= 0; i = nodes[i].parent)
          plan.push_back(nodes[i].via);
        std::reverse(plan.begin(), plan.end());
        return plan;
      }
      nodes.push_back({std::move(next), static_cast<int>(head), a});
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Shortest plan of length <= bound from `start` to a state containing
/// `target`; empty plan if the target already holds; absent otherwise.
inline std::optional<std::vector<ActionTerm>> bounded_reach(const PropSet& start,
                                                            const Atom& target,
                                                            const KnowledgeBase& kb,
                                                            int bound) {
  SearchNode root{start, {}, 0};
  return detail::bfs(std::move(root), bound,
                     kb, [&](const SearchNode& n) { return n.props.count(target) > 0; });
}

/// Shortest plan from instance state s to a state where the principle is
/// Fulfilled, bounded by the remaining instance length. History flags are
/// seeded from the instance's actual prefix.
inline std::optional<std::pair<int, std::vector<ActionTerm>>> optimum_sequence(
    const IdealityPrinciple& pr, const BehaviorInstance& inst, int s,
    const KnowledgeBase& kb) {
  const PropSet& initial = inst.states.front();
  bool trivial = pr.kind == IdealityPrinciple::Kind::MustPrecede &&
                 initial.count(pr.p1) && initial.count(pr.p2);
  SearchNode root;
  root.props = inst.states.at(s);
  root.flags[pr] = false;
  for (int t = 0; t <= s; ++t) detail::absorb_flags(root.flags, inst.states[t]);
  int bound = static_cast<int>(inst.actions.size()) - s;
  auto plan = detail::bfs(std::move(root), bound, kb, [&](const SearchNode& n) {
    return detail::fulfilled_abstract(pr, n.props, n.flags, trivial);
  });
  if (!plan) return std::nullopt;
  return std::pair{static_cast<int>(plan->size()), std::move(*plan)};
}

/// The actions the actor actually executed from state s up to (excluding) the
/// first later state where the principle is Fulfilled; absent if never.
inline std::optional<std::vector<ActionTerm>> observed_sequence(
    const IdealityPrinciple& pr, const BehaviorInstance& inst, int s) {
  for (int j = s + 1; j < static_cast<int>(inst.states.size()); ++j)
    if (detail::is_fulfilled(pr, inst, j))
      return std::vector<ActionTerm>(inst.actions.begin() + s,
                                     inst.actions.begin() + j);
  return std::nullopt;
}

}  // namespace bex
