#pragma once

#include <optional>

#include "bex/attitude_learner.hpp"
#include "bex/base_learner.hpp"
#include "bex/definition_learner.hpp"
#include "bex/knowledge.hpp"
#include "bex/trace.hpp"

namespace bex {

struct LearnOptions {
  /// Overrides goal learning; used when the class's goal is known a priori
  /// (e.g. fragment-heavy corpora where final-state intersection overshoots).
  std::optional<std::set<Atom>> goal;
  /// Plan-search bound for Prevents stage 2; default = longest instance.
  std::optional<int> plan_bound;
};

inline int default_plan_bound(const Corpus& corpus) {
  int bound = 0;
  for (const auto& inst : corpus.instances)
    bound = std::max(bound, static_cast<int>(inst.actions.size()));
  return bound;
}

/// The full learning pipeline: classification, action models, goal,
/// attitudes, incompatibility, two-stage prevention with the mixed-entity
/// closure, ordering/mandatory relations and definitions.
inline KnowledgeBase learn_kb(const Corpus& corpus, const LearnOptions& opts = {}) {
  validate_corpus(corpus);
  KnowledgeBase kb;
  std::tie(kb.statics, kb.fluents) = classify_propositions(corpus);
  for (const auto& inst : corpus.instances)
    kb.actions.insert(inst.actions.begin(), inst.actions.end());
  kb.precond = learn_preconditions(corpus, kb.fluents);
  std::tie(kb.pos_effects, kb.neg_effects) = learn_effects(corpus);
  kb.goal = opts.goal ? *opts.goal : learn_goal(corpus, kb.statics);
  kb.desired_props = learn_desired_props(kb.goal);

  int bound = opts.plan_bound ? *opts.plan_bound : default_plan_bound(corpus);
  auto prevents_pp = learn_prevents_props(corpus, kb.fluents, kb, bound);
  for (const auto& [p1, p2] : prevents_pp)
    kb.prevents.insert({prop_entity(p1), prop_entity(p2)});

  kb.incompatible = learn_incompatible_props(corpus, kb.fluents);
  kb.incompatible_prop_action = derive_incompatible_prop_action(kb);

  // attitudes: prop-level prevention suffices for the first undesired pass;
  // the mixed closure can add prevention of desired actions, so re-derive.
  std::set<Entity> desired_entities;
  for (const auto& p : kb.desired_props) desired_entities.insert(prop_entity(p));
  kb.undesired_props = derive_undesired_props(kb.prevents, desired_entities);
  kb.desired_actions = learn_desired_actions(kb);

  auto mixed = derive_prevents_mixed(kb);
  kb.prevents.insert(mixed.begin(), mixed.end());
  // undesired props and desired actions feed each other; the undesired set
  // only accumulates, so this terminates
  for (;;) {
    desired_entities.clear();
    for (const auto& p : kb.desired_props) desired_entities.insert(prop_entity(p));
    for (const auto& a : kb.desired_actions) desired_entities.insert(action_entity(a));
    auto undesired = derive_undesired_props(kb.prevents, desired_entities);
    undesired.insert(kb.undesired_props.begin(), kb.undesired_props.end());
    if (undesired == kb.undesired_props) break;
    kb.undesired_props = std::move(undesired);
    kb.desired_actions = learn_desired_actions(kb);
  }
  kb.undesired_actions = derive_undesired_actions(kb);
  std::tie(kb.neutral_props, kb.neutral_actions) = derive_neutral(kb);

  kb.must_precede = learn_must_precede(corpus, kb.fluents, kb.precond);
  kb.mandatory = learn_mandatory(corpus, kb.goal, kb.fluents);
  for (const auto& fact : learn_definitions(corpus, kb.fluents).facts)
    kb.defining[fact.defined] = fact.body;
  return kb;
}

/// Concatenation under the first corpus's class id; instance ids must stay
/// unique across the inputs.
inline Corpus merge_corpora(const std::vector<Corpus>& parts) {
  if (parts.empty()) throw CorpusError("merge: no corpora");
  Corpus out;
  out.class_id = parts.front().class_id;
  for (const auto& c : parts)
    out.instances.insert(out.instances.end(), c.instances.begin(),
                         c.instances.end());
  validate_corpus(out);
  return out;
}

}  // namespace bex
