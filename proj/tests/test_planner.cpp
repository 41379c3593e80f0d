#include <functional>

#include <catch2/catch_amalgamated.hpp>

#include "bex/blocksworld.hpp"
#include "bex/pipeline.hpp"
#include "bex/planner.hpp"

using namespace bex;

namespace {

// Independent iterative-deepening oracle. Expands states directly from the
// action models (no shared search code) and returns the optimal plan length
// within `bound`, or -1.
int iddfs_length(const PropSet& start, const KnowledgeBase& kb, int bound,
                 const std::function<bool(const PropSet&)>& goal) {
  std::function<bool(const PropSet&, int)> dls = [&](const PropSet& s, int limit) {
    if (goal(s)) return true;
    if (limit == 0) return false;
    for (const auto& a : kb.actions) {
      bool applicable = true;
      for (const auto& p : kb.precond_of(a))
        if (!s.count(p)) {
          applicable = false;
          break;
        }
      if (!applicable) continue;
      PropSet next = s;
      for (const auto& p : kb.neg_of(a)) next.erase(p);
      for (const auto& p : kb.pos_of(a)) next.insert(p);
      if (dls(next, limit - 1)) return true;
    }
    return false;
  };
  for (int d = 0; d <= bound; ++d)
    if (dls(start, d)) return d;
  return -1;
}

// Physics-complete model of a world with two blocks and three positions.
KnowledgeBase two_block_kb() {
  KnowledgeBase kb;
  std::vector<std::string> blocks = {"a", "b"};
  std::vector<std::string> places = {"a", "b", "p1", "p2", "p3"};
  for (const auto& bl : blocks)
    for (const auto& from : places)
      for (const auto& to : places) {
        if (from == bl || to == bl || from == to) continue;
        ActionTerm act = bw::move_action(bl, from, to);
        kb.actions.insert(act);
        kb.precond[act] = {bw::on_atom(bl, from), bw::clear_atom(bl),
                           bw::clear_atom(to)};
        kb.pos_effects[act] = {bw::on_atom(bl, to), bw::clear_atom(from)};
        kb.neg_effects[act] = {bw::on_atom(bl, from), bw::clear_atom(to)};
      }
  return kb;
}

std::vector<PropSet> two_block_states() {
  std::vector<std::string> places = {"a", "b", "p1", "p2", "p3"};
  std::vector<PropSet> out;
  for (const auto& pa : places)
    for (const auto& pb : places) {
      if (pa == "a" || pb == "b" || pa == pb) continue;
      if (pa == "b" && pb == "a") continue;  // cycle
      PropSet s = {bw::on_atom("a", pa), bw::on_atom("b", pb)};
      for (const std::string& pl : {"a", "b", "p1", "p2", "p3"})
        if (pl != pa && pl != pb) s.insert(bw::clear_atom(pl));
      out.push_back(std::move(s));
    }
  return out;
}

}  // namespace

TEST_CASE("bounded_reach equals the iterative-deepening oracle") {
  KnowledgeBase kb = two_block_kb();
  auto states = two_block_states();
  REQUIRE(states.size() == 12);
  std::set<Atom> targets;
  for (const auto& a : kb.actions) {
    const auto& pos = kb.pos_of(a);
    targets.insert(pos.begin(), pos.end());
  }
  const int bound = 6;
  for (const auto& s : states)
    for (const auto& target : targets) {
      auto plan = bounded_reach(s, target, kb, bound);
      int oracle = iddfs_length(
          s, kb, bound, [&](const PropSet& x) { return x.count(target) > 0; });
      if (oracle < 0) {
        CHECK(!plan);
      } else {
        REQUIRE(plan);
        CHECK(static_cast<int>(plan->size()) == oracle);
      }
    }
}

TEST_CASE("bounded_reach on the micro domain") {
  Corpus corpus = micro_domain_corpus();
  KnowledgeBase kb = learn_kb(corpus, {.goal = PropSet{parse_term("g")}});
  PropSet start = {parse_term("free")};
  auto plan = bounded_reach(start, parse_term("g"), kb, 3);
  REQUIRE(plan);
  CHECK(*plan == std::vector<ActionTerm>{parse_term("makeg")});
  CHECK(iddfs_length(start, kb, 3,
                     [&](const PropSet& s) { return s.count(parse_term("g")) > 0; }) == 1);
  // q is absorbing: nothing applies from {q}
  CHECK_FALSE(bounded_reach({parse_term("q")}, parse_term("g"), kb, 3));
  // empty plan when the target already holds
  auto trivial = bounded_reach({parse_term("g")}, parse_term("g"), kb, 3);
  REQUIRE(trivial);
  CHECK(trivial->empty());
}

TEST_CASE("plans replay legally") {
  KnowledgeBase kb = two_block_kb();
  for (const auto& s : two_block_states()) {
    auto plan = bounded_reach(s, bw::on_atom("a", "b"), kb, 6);
    REQUIRE(plan);
    PropSet cur = s;
    for (const auto& a : *plan) {
      for (const auto& p : kb.precond_of(a)) REQUIRE(cur.count(p));
      for (const auto& p : kb.neg_of(a)) cur.erase(p);
      for (const auto& p : kb.pos_of(a)) cur.insert(p);
    }
    CHECK(cur.count(bw::on_atom("a", "b")));
  }
}

TEST_CASE("optimum_sequence matches the oracle on the replay trace") {
  Corpus corpus = generate_corpus({InjectionKind::None, 0});
  BehaviorInstance fig2 = figure2_instance();
  corpus.instances.push_back(fig2);
  KnowledgeBase kb = learn_kb(corpus);

  SECTION("desired proposition from s1") {
    auto opt = optimum_sequence(IdealityPrinciple::desired(bw::on_atom("b", "c")),
                                fig2, 1, kb);
    REQUIRE(opt);
    CHECK(opt->first == 2);
    CHECK(opt->second == std::vector<ActionTerm>{bw::move_action("a", "b", "p2"),
                                                 bw::move_action("b", "p1", "c")});
  }
  SECTION("must-precede needs the ordering witness, not just the atoms") {
    IdealityPrinciple mp =
        IdealityPrinciple::must_precede(bw::on_atom("b", "c"), bw::on_atom("a", "b"));
    auto opt = optimum_sequence(mp, fig2, 1, kb);
    REQUIRE(opt);
    CHECK(opt->first == 3);  // undo the premature stack, place b, restack a
    auto from_start = optimum_sequence(mp, fig2, 0, kb);
    REQUIRE(from_start);
    CHECK(from_start->first == 3);
  }
  SECTION("already fulfilled gives a zero-length sequence") {
    auto opt = optimum_sequence(IdealityPrinciple::desired(bw::on_atom("a", "b")),
                                fig2, 1, kb);
    REQUIRE(opt);
    CHECK(opt->first == 0);
  }
  SECTION("bound is the remaining instance length") {
    // from s4 nothing remains, so only already-fulfilled principles resolve
    auto opt = optimum_sequence(IdealityPrinciple::desired(bw::on_atom("a", "c")),
                                fig2, 4, kb);
    CHECK_FALSE(opt);
  }
}

TEST_CASE("optimum_sequence equals the oracle on two-block instances") {
  KnowledgeBase kb = two_block_kb();
  // synthesize an instance: wander then stack
  BehaviorInstance inst;
  inst.id = "w";
  inst.states.push_back(two_block_states().front());  // a on p1? (first valid)
  auto apply = [&](const char* bl, const char* from, const char* to) {
    inst.actions.push_back(bw::move_action(bl, from, to));
    PropSet s = inst.states.back();
    for (const auto& p : kb.neg_of(inst.actions.back())) s.erase(p);
    for (const auto& p : kb.pos_of(inst.actions.back())) s.insert(p);
    inst.states.push_back(std::move(s));
  };
  REQUIRE(inst.states[0].count(bw::on_atom("a", "b")));  // first state is a-on-b
  apply("a", "b", "p2");
  apply("b", "p1", "p3");
  apply("a", "p2", "b");

  for (int s = 0; s < 3; ++s) {
    for (const auto& pr :
         {IdealityPrinciple::desired(bw::on_atom("a", "b")),
          IdealityPrinciple::desired(bw::on_atom("b", "p3")),
          IdealityPrinciple::undesired(bw::on_atom("a", "p2"))}) {
      auto opt = optimum_sequence(pr, inst, s, kb);
      int bound = static_cast<int>(inst.actions.size()) - s;
      // oracle for Desired: shortest reach of the atom; Undesired handled below
      if (pr.kind == IdealityPrinciple::Kind::Desired) {
        int oracle = iddfs_length(inst.states[s], kb, bound, [&](const PropSet& x) {
          return x.count(pr.p1) > 0;
        });
        if (oracle < 0) {
          CHECK(!opt);
        } else {
          REQUIRE(opt);
          CHECK(opt->first == oracle);
        }
      } else {
        // Undesired is fulfilled only while the atom never held; once the
        // prefix saw it, no sequence can fulfil it
        bool held = false;
        for (int t = 0; t <= s; ++t) held = held || inst.states[t].count(pr.p1);
        CHECK(opt.has_value() == !held);
        if (opt) CHECK(opt->first == 0);
      }
    }
  }
}
