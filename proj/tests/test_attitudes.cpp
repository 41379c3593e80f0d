#include <catch2/catch_amalgamated.hpp>

#include "bex/attitude_learner.hpp"
#include "bex/blocksworld.hpp"
#include "bex/pipeline.hpp"

using namespace bex;

namespace {

Atom at(const char* s) { return parse_term(s); }

std::pair<Atom, Atom> ppair(const char* a, const char* b) {
  return {parse_term(a), parse_term(b)};
}

}  // namespace

TEST_CASE("incompatibility equals an independent co-occurrence scan") {
  Corpus corpus = generate_corpus({InjectionKind::None, 0});
  auto [statics, fluents] = classify_propositions(corpus);
  auto learned = learn_incompatible_props(corpus, fluents);

  // oracle: start from all ordered fluent pairs, erase what co-occurs
  std::set<std::pair<Atom, Atom>> oracle;
  for (const auto& p : fluents)
    for (const auto& q : fluents)
      if (p < q) oracle.insert({p, q});
  for (const auto& inst : corpus.instances)
    for (const auto& s : inst.states)
      for (const auto& p : s)
        for (const auto& q : s)
          if (p < q) oracle.erase({p, q});
  CHECK(learned == oracle);

  CHECK(learned.count(ppair("clear(a)", "on(b,a)")));
  CHECK(learned.count(ppair("clear(b)", "on(a,b)")));
  CHECK_FALSE(learned.count(ppair("on(a,b)", "on(b,c)")));
  for (const auto& [p, q] : learned) CHECK(p < q);  // stored ordered, irreflexive
}

TEST_CASE("incompatible prop/action pairs come from preconditions") {
  KnowledgeBase kb;
  kb.fluents = {at("x"), at("y"), at("z")};
  kb.actions = {at("f")};
  kb.precond[at("f")] = {at("x")};
  kb.incompatible = {{at("x"), at("y")}};
  auto out = derive_incompatible_prop_action(kb);
  CHECK(out == std::set<std::pair<Atom, ActionTerm>>{{at("y"), at("f")}});
}

TEST_CASE("desired actions add a desired prop and harm nothing") {
  KnowledgeBase kb;
  kb.actions = {at("good"), at("bad"), at("mixed"), at("destroys")};
  kb.desired_props = {at("g"), at("h")};
  kb.undesired_props = {at("u")};
  kb.pos_effects[at("good")] = {at("g")};
  kb.pos_effects[at("bad")] = {at("x")};
  kb.pos_effects[at("mixed")] = {at("g"), at("u")};
  kb.pos_effects[at("destroys")] = {at("g")};
  kb.neg_effects[at("destroys")] = {at("h")};
  CHECK(learn_desired_actions(kb) == std::set<ActionTerm>{at("good")});
}

TEST_CASE("undesired entities derive from prevention") {
  std::set<std::pair<Entity, Entity>> prevents = {
      {prop_entity(at("q")), prop_entity(at("g"))},
      {prop_entity(at("r")), prop_entity(at("x"))},
      {action_entity(at("spoil")), prop_entity(at("g"))}};
  std::set<Entity> desired = {prop_entity(at("g"))};
  // only proposition sources; only prevention of desired entities
  CHECK(derive_undesired_props(prevents, desired) == std::set<Atom>{at("q")});

  KnowledgeBase kb;
  kb.actions = {at("mk"), at("spoil")};
  kb.pos_effects[at("spoil")] = {at("q")};
  kb.pos_effects[at("mk")] = {at("g")};
  kb.undesired_props = {at("q")};
  CHECK(derive_undesired_actions(kb) == std::set<ActionTerm>{at("spoil")});
}

TEST_CASE("neutral is the complement of desired and undesired") {
  KnowledgeBase kb;
  kb.fluents = {at("g"), at("q"), at("n")};
  kb.actions = {at("mk"), at("spoil"), at("idle")};
  kb.desired_props = {at("g")};
  kb.undesired_props = {at("q")};
  kb.desired_actions = {at("mk")};
  kb.undesired_actions = {at("spoil")};
  auto [props, actions] = derive_neutral(kb);
  CHECK(props == std::set<Atom>{at("n")});
  CHECK(actions == std::set<ActionTerm>{at("idle")});
}

TEST_CASE("planning alphabet lifts consistent schemas") {
  KnowledgeBase kb;
  kb.fluents = {at("on(a,p1)"), at("on(a,p2)"), at("on(b,p1)"), at("on(b,p2)")};
  kb.actions = {at("move(a,p1,p2)"), at("move(b,p2,p1)")};
  kb.precond[at("move(a,p1,p2)")] = {at("on(a,p1)")};
  kb.pos_effects[at("move(a,p1,p2)")] = {at("on(a,p2)")};
  kb.neg_effects[at("move(a,p1,p2)")] = {at("on(a,p1)")};
  kb.precond[at("move(b,p2,p1)")] = {at("on(b,p2)")};
  kb.pos_effects[at("move(b,p2,p1)")] = {at("on(b,p1)")};
  kb.neg_effects[at("move(b,p2,p1)")] = {at("on(b,p2)")};

  KnowledgeBase out = planning_alphabet(kb);
  // unseen instantiation with fully-observed model atoms
  REQUIRE(out.actions.count(at("move(b,p1,p2)")));
  CHECK(out.precond_of(at("move(b,p1,p2)")) == std::set<Atom>{at("on(b,p1)")});
  CHECK(out.pos_of(at("move(b,p1,p2)")) == std::set<Atom>{at("on(b,p2)")});
  // instantiations mentioning unobserved atoms (e.g. on(p1,p2)) are dropped
  CHECK_FALSE(out.actions.count(at("move(p1,a,b)")));
  for (const auto& a : out.actions)
    for (const auto& p : out.precond_of(a)) CHECK(kb.fluents.count(p));

  SECTION("inconsistent lifted models produce nothing") {
    kb.pos_effects[at("move(b,p2,p1)")] = {at("on(b,p1)"), at("on(a,p1)")};
    CHECK(planning_alphabet(kb).actions == kb.actions);
  }
  SECTION("repeated or compound arguments disqualify a member") {
    kb.actions.insert(at("move(a,a,p1)"));
    KnowledgeBase lifted = planning_alphabet(kb);
    CHECK_FALSE((lifted.actions.count(at("move(p1,p2,a)")) &&
                 lifted.precond.count(at("move(a,a,p1)"))));
  }
}

TEST_CASE("prevention survives both stages only when truly irreversible") {
  Corpus corpus = micro_domain_corpus();
  auto [statics, fluents] = classify_propositions(corpus);
  KnowledgeBase kb;
  std::tie(kb.statics, kb.fluents) = std::tie(statics, fluents);
  for (const auto& inst : corpus.instances)
    kb.actions.insert(inst.actions.begin(), inst.actions.end());
  kb.precond = learn_preconditions(corpus, fluents);
  std::tie(kb.pos_effects, kb.neg_effects) = learn_effects(corpus);

  auto pp = learn_prevents_props(corpus, fluents, kb, 2);
  CHECK(pp == std::set<std::pair<Atom, Atom>>{
                  ppair("q", "free"), ppair("q", "g"), ppair("q", "q")});
  // (g,g) and (g,free) pass stage 1 but are reachable, so stage 2 drops them:
  // makeg re-achieves g from {free}, and free co-occurs with g.
  CHECK_FALSE(pp.count(ppair("g", "g")));
  CHECK_FALSE(pp.count(ppair("g", "free")));
}

TEST_CASE("base blocks world has no prevention") {
  Corpus corpus = generate_corpus({InjectionKind::None, 0});
  KnowledgeBase kb = learn_kb(corpus);
  CHECK(kb.prevents.empty());
  CHECK(kb.undesired_props.empty());
  CHECK(kb.undesired_actions.empty());
}

TEST_CASE("mixed-entity prevention clauses") {
  KnowledgeBase kb;
  kb.fluents = {at("q"), at("g"), at("free")};
  kb.actions = {at("makeg"), at("spoil")};
  kb.precond[at("makeg")] = {at("free")};
  kb.pos_effects[at("makeg")] = {at("g")};
  kb.precond[at("spoil")] = {at("free")};
  kb.pos_effects[at("spoil")] = {at("q")};
  kb.neg_effects[at("spoil")] = {at("free")};
  kb.incompatible = {{at("free"), at("q")}, {at("g"), at("q")}};
  kb.prevents = {{prop_entity(at("q")), prop_entity(at("g"))},
                 {prop_entity(at("q")), prop_entity(at("free"))},
                 {prop_entity(at("q")), prop_entity(at("q"))}};

  auto mixed = derive_prevents_mixed(kb);
  // q prevents free, a precondition of both actions
  CHECK(mixed.count({prop_entity(at("q")), action_entity(at("makeg"))}));
  CHECK(mixed.count({prop_entity(at("q")), action_entity(at("spoil"))}));
  // spoil adds q, which is incompatible with g/free and prevents them
  CHECK(mixed.count({action_entity(at("spoil")), prop_entity(at("g"))}));
  CHECK(mixed.count({action_entity(at("spoil")), prop_entity(at("free"))}));
  // no action-action clause without an incompatible_prop_action entry
  for (const auto& [src, dst] : mixed)
    CHECK_FALSE((src.kind == EntityKind::Action && dst.kind == EntityKind::Action));

  kb.incompatible_prop_action = derive_incompatible_prop_action(kb);
  mixed = derive_prevents_mixed(kb);
  CHECK(mixed.count({action_entity(at("spoil")), action_entity(at("makeg"))}));
}
