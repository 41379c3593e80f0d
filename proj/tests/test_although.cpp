#include <catch2/catch_amalgamated.hpp>

#include "bex/although.hpp"
#include "bex/blocksworld.hpp"
#include "bex/pipeline.hpp"

using namespace bex;

namespace {

using TP = TaggedProposition;

struct Fig2Fixture {
  Corpus corpus;
  KnowledgeBase kb;
  BehaviorInstance fig2;
  std::vector<IdealityPrinciple> principles;
  PrincipleOrder order;

  Fig2Fixture() {
    corpus = generate_corpus({InjectionKind::None, 0});
    fig2 = figure2_instance();
    corpus.instances.push_back(fig2);
    kb = learn_kb(corpus);
    principles = {
        IdealityPrinciple::desired(bw::on_atom("a", "b")),
        IdealityPrinciple::desired(bw::on_atom("b", "c")),
        IdealityPrinciple::desired(bw::clear_atom("a")),
        IdealityPrinciple::must_precede(bw::on_atom("b", "c"), bw::on_atom("a", "b"))};
  }
};

Degree degree_at(const IdealityPrinciple& pr, const BehaviorInstance& inst, int s,
                 const KnowledgeBase& kb) {
  return assess(pr, inst, s, kb).degree;
}

}  // namespace

TEST_CASE("figure-2 yields exactly the two perplexing actions") {
  Fig2Fixture fx;
  auto facts = derive_although4(fx.fig2, fx.principles, fx.kb);
  REQUIRE(facts.size() == 2);

  IdealityPrinciple mp =
      IdealityPrinciple::must_precede(bw::on_atom("b", "c"), bw::on_atom("a", "b"));
  IdealityPrinciple dab = IdealityPrinciple::desired(bw::on_atom("a", "b"));

  // transition 0: the premature stacking breaks the ordering principle
  CHECK(facts[0].principle == mp);
  CHECK(facts[0].action == bw::move_action("a", "c", "b"));
  CHECK(facts[0].state == 1);
  CHECK(facts[0].before_cert ==
        Certificate{TP::principle(mp), TP::is_initial(0),
                    TP::not_holds(bw::on_atom("b", "c"), 0),
                    TP::not_holds(bw::on_atom("a", "b"), 0)});
  CHECK(abridge(facts[0].deviation_cert, fx.kb) ==
        Certificate{TP::principle(mp), TP::not_initial(1),
                    TP::holds(bw::on_atom("a", "b"), 1),
                    TP::never_before(bw::on_atom("b", "c"), 1)});

  // transition 1: undoing the stack abandons a fulfilled desired prop
  CHECK(facts[1].principle == dab);
  CHECK(facts[1].action == bw::move_action("a", "b", "p2"));
  CHECK(facts[1].state == 2);
  CHECK(facts[1].before_cert ==
        Certificate{TP::principle(dab), TP::holds(bw::on_atom("a", "b"), 1)});
  CHECK(abridge(facts[1].deviation_cert, fx.kb) ==
        Certificate{TP::principle(dab), TP::not_holds(bw::on_atom("a", "b"), 2)});
}

TEST_CASE("rationals justify only the undoing move") {
  Fig2Fixture fx;
  auto facts = derive_although4(fx.fig2, fx.principles, fx.kb);
  REQUIRE(facts.size() == 2);

  // the first action is absolutely misplaced: no rational
  CHECK(derive_although5(facts[0], fx.fig2, fx.principles, fx.order, fx.kb).empty());

  auto rats = derive_although5(facts[1], fx.fig2, fx.principles, fx.order, fx.kb);
  REQUIRE(rats.size() == 2);
  CHECK(rats[0].rational->principle ==
        IdealityPrinciple::desired(bw::on_atom("b", "c")));
  CHECK(rats[0].rational->sequence ==
        std::vector<ActionTerm>{bw::move_action("a", "b", "p2"),
                                bw::move_action("b", "p1", "c")});
  CHECK(rats[1].rational->principle ==
        IdealityPrinciple::must_precede(bw::on_atom("b", "c"), bw::on_atom("a", "b")));
  CHECK(rats[1].rational->sequence ==
        std::vector<ActionTerm>{bw::move_action("a", "b", "p2"),
                                bw::move_action("b", "p1", "c"),
                                bw::move_action("a", "p2", "b")});
  for (const auto& r : rats) {
    CHECK(r.action == facts[1].action);
    CHECK(r.rational->sequence.front() == r.action);
  }
}

TEST_CASE("combined derivation interleaves facts with their rationals") {
  Fig2Fixture fx;
  auto all = derive_although(fx.fig2, fx.principles, fx.order, fx.kb);
  REQUIRE(all.size() == 4);
  CHECK_FALSE(all[0].rational);  // must-precede /4
  CHECK_FALSE(all[1].rational);  // desired /4
  CHECK(all[2].rational);
  CHECK(all[3].rational);
  CHECK(all[2].action == all[1].action);
}

TEST_CASE("every emitted fact is a strict degree drop") {
  Fig2Fixture fx;
  for (const auto& f : derive_although(fx.fig2, fx.principles, fx.order, fx.kb)) {
    Degree before = degree_at(f.principle, fx.fig2, f.state - 1, fx.kb);
    Degree after = degree_at(f.principle, fx.fig2, f.state, fx.kb);
    CHECK(static_cast<int>(after) < static_cast<int>(before));
  }
}

TEST_CASE("every rational's quadruple is also an although-4 fact") {
  Fig2Fixture fx;
  auto a4 = derive_although4(fx.fig2, fx.principles, fx.kb);
  for (const auto& f : derive_although(fx.fig2, fx.principles, fx.order, fx.kb)) {
    if (!f.rational) continue;
    AlthoughFact quad = f;
    quad.rational.reset();
    CHECK(std::find(a4.begin(), a4.end(), quad) != a4.end());
  }
}

TEST_CASE("rationals replay to fulfilment") {
  Fig2Fixture fx;
  for (const auto& f : derive_although(fx.fig2, fx.principles, fx.order, fx.kb)) {
    if (!f.rational) continue;
    int s1 = f.state - 1;
    int end = s1 + static_cast<int>(f.rational->sequence.size());
    CHECK(degree_at(f.rational->principle, fx.fig2, end, fx.kb) == Degree::Fulfilled);
  }
}

TEST_CASE("monotone traces produce no perplexity") {
  Fig2Fixture fx;
  // the direct 3-step build from a flat configuration never lowers a degree
  bw::ActorMemory mem;
  BehaviorInstance direct = solve_instance(
      BlocksConfig{{{"a", "p1"}, {"b", "p2"}, {"c", "p3"}}}, "direct", 0, mem);
  CHECK(derive_although4(direct, fx.principles, fx.kb).empty());
}

TEST_CASE("text rendering") {
  Fig2Fixture fx;
  auto all = derive_although(fx.fig2, fx.principles, fx.order, fx.kb);
  std::string t4 = render_explanation(all[1], RenderMode::Text, fx.kb);
  CHECK(t4.starts_with("Although principle(desired(on(a,b))), holds(on(a,b),s1)"));
  CHECK(t4.find("the actor executed move(a,b,p2)") != std::string::npos);
  CHECK(t4.find("however") == std::string::npos);
  // the vacuous no-prevention conjunct is abridged away
  CHECK(t4.find("never_prevented_upto") == std::string::npos);
  std::string t5 = render_explanation(all[3], RenderMode::Text, fx.kb);
  CHECK(t5.find("; however, must_precede(on(b,c),on(a,b)):[move(a,b,p2), "
                "move(b,p1,c), move(a,p2,b)]") != std::string::npos);
}

TEST_CASE("json rendering round-trips") {
  Fig2Fixture fx;
  for (const auto& f : derive_although(fx.fig2, fx.principles, fx.order, fx.kb)) {
    std::string line = render_explanation(f, RenderMode::Json, fx.kb);
    CHECK(line.find(f.rational ? "although5" : "although4") != std::string::npos);
    CHECK(parse_explanation(line) == f);
  }
}
