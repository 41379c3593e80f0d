#pragma once

#include <optional>
#include <vector>

#include "bex/knowledge.hpp"
#include "bex/trace.hpp"

namespace bex {

/// Desired(p), Undesired(p), Mandatory(p) or MustPrecede(p1,p2). Principles
/// arrive as configuration; constituent atoms must be fluents of the KB.
struct IdealityPrinciple {
  enum class Kind { Desired, Undesired, Mandatory, MustPrecede };
  Kind kind = Kind::Desired;
  Atom p1;
  Atom p2;  // MustPrecede only

  static IdealityPrinciple desired(Atom p) { return {Kind::Desired, std::move(p), {}}; }
  static IdealityPrinciple undesired(Atom p) { return {Kind::Undesired, std::move(p), {}}; }
  static IdealityPrinciple mandatory(Atom p) { return {Kind::Mandatory, std::move(p), {}}; }
  static IdealityPrinciple must_precede(Atom a, Atom b) {
    return {Kind::MustPrecede, std::move(a), std::move(b)};
  }

  Term to_term() const {
    switch (kind) {
      case Kind::Desired: return Term::symbol("desired", {p1});
      case Kind::Undesired: return Term::symbol("undesired", {p1});
      case Kind::Mandatory: return Term::symbol("mandatory", {p1});
      case Kind::MustPrecede: return Term::symbol("must_precede", {p1, p2});
    }
    throw std::logic_error("bad principle kind");
  }

  static IdealityPrinciple from_term(const Term& t) {
    if (t.kind != Term::Kind::Symbol) throw std::invalid_argument("principle: not a term");
    if (t.functor == "desired" && t.args.size() == 1) return desired(t.args[0]);
    if (t.functor == "undesired" && t.args.size() == 1) return undesired(t.args[0]);
    if (t.functor == "mandatory" && t.args.size() == 1) return mandatory(t.args[0]);
    if (t.functor == "must_precede" && t.args.size() == 2)
      return must_precede(t.args[0], t.args[1]);
    throw std::invalid_argument("unknown principle term: " + t.str());
  }

  auto operator<=>(const IdealityPrinciple&) const = default;
  bool operator==(const IdealityPrinciple&) const = default;
};

/// Ordered from worst to best; Although fires only on strict decreases.
enum class Degree { Prevented = 0, NotFulfilled = 1, IndifferentState = 2, Fulfilled = 3 };

inline const char* degree_name(Degree d) {
  switch (d) {
    case Degree::Prevented: return "prevented";
    case Degree::NotFulfilled: return "not_fulfilled";
    case Degree::IndifferentState: return "indifferent_state";
    case Degree::Fulfilled: return "fulfilled";
  }
  return "?";
}

/// A state-stamped assertion used in certificates.
struct TaggedProposition {
  enum class Kind {
    Holds,               // holds(p, sN)
    NotHolds,            // not_holds(p, sN)
    Principle,           // principle(T)
    IsInitial,           // initial(sN)
    NotInitial,          // not_initial(sN)
    Precedes,            // precedes(sM, sN)
    NeverBefore,         // never_before(p, sN)
    NeverPreventedUpTo,  // never_prevented_upto(p, sN)
    PreventedAt,         // prevented_at(p, sN)
    PreventsFact,        // prevents(e1, e2)
  };
  Kind kind = Kind::Principle;
  Atom a;   // first term operand (unused by the pure state kinds)
  Atom b;   // second operand of PreventsFact
  int s1 = -1;
  int s2 = -1;
  IdealityPrinciple pr;  // Principle only

  static TaggedProposition holds(Atom p, int s) { return {Kind::Holds, std::move(p), {}, s, -1, {}}; }
  static TaggedProposition not_holds(Atom p, int s) { return {Kind::NotHolds, std::move(p), {}, s, -1, {}}; }
  static TaggedProposition principle(IdealityPrinciple pr) {
    return {Kind::Principle, {}, {}, -1, -1, std::move(pr)};
  }
  static TaggedProposition is_initial(int s) { return {Kind::IsInitial, {}, {}, s, -1, {}}; }
  static TaggedProposition not_initial(int s) { return {Kind::NotInitial, {}, {}, s, -1, {}}; }
  static TaggedProposition precedes(int s1, int s2) { return {Kind::Precedes, {}, {}, s1, s2, {}}; }
  static TaggedProposition never_before(Atom p, int s) {
    return {Kind::NeverBefore, std::move(p), {}, s, -1, {}};
  }
  static TaggedProposition never_prevented_upto(Atom p, int s) {
    return {Kind::NeverPreventedUpTo, std::move(p), {}, s, -1, {}};
  }
  static TaggedProposition prevented_at(Atom p, int s) {
    return {Kind::PreventedAt, std::move(p), {}, s, -1, {}};
  }
  static TaggedProposition prevents_fact(Atom e1, Atom e2) {
    return {Kind::PreventsFact, std::move(e1), std::move(e2), -1, -1, {}};
  }

  Term to_term() const {
    auto st = [](int s) { return Term::symbol("s" + std::to_string(s)); };
    switch (kind) {
      case Kind::Holds: return Term::symbol("holds", {a, st(s1)});
      case Kind::NotHolds: return Term::symbol("not_holds", {a, st(s1)});
      case Kind::Principle: return Term::symbol("principle", {pr.to_term()});
      case Kind::IsInitial: return Term::symbol("initial", {st(s1)});
      case Kind::NotInitial: return Term::symbol("not_initial", {st(s1)});
      case Kind::Precedes: return Term::symbol("precedes", {st(s1), st(s2)});
      case Kind::NeverBefore: return Term::symbol("never_before", {a, st(s1)});
      case Kind::NeverPreventedUpTo:
        return Term::symbol("never_prevented_upto", {a, st(s1)});
      case Kind::PreventedAt: return Term::symbol("prevented_at", {a, st(s1)});
      case Kind::PreventsFact: return Term::symbol("prevents", {a, b});
    }
    throw std::logic_error("bad tagged kind");
  }

  static TaggedProposition from_term(const Term& t);

  auto operator<=>(const TaggedProposition&) const = default;
  bool operator==(const TaggedProposition&) const = default;
};

inline TaggedProposition TaggedProposition::from_term(const Term& t) {
  auto st = [](const Term& s) {
    if (!s.is_constant() || s.functor.size() < 2 || s.functor[0] != 's')
      throw std::invalid_argument("bad state term: " + s.str());
    return std::stoi(s.functor.substr(1));
  };
  const auto& f = t.functor;
  if (f == "holds") return holds(t.args.at(0), st(t.args.at(1)));
  if (f == "not_holds") return not_holds(t.args.at(0), st(t.args.at(1)));
  if (f == "principle") return principle(IdealityPrinciple::from_term(t.args.at(0)));
  if (f == "initial") return is_initial(st(t.args.at(0)));
  if (f == "not_initial") return not_initial(st(t.args.at(0)));
  if (f == "precedes") return precedes(st(t.args.at(0)), st(t.args.at(1)));
  if (f == "never_before") return never_before(t.args.at(0), st(t.args.at(1)));
  if (f == "never_prevented_upto")
    return never_prevented_upto(t.args.at(0), st(t.args.at(1)));
  if (f == "prevented_at") return prevented_at(t.args.at(0), st(t.args.at(1)));
  if (f == "prevents") return prevents_fact(t.args.at(0), t.args.at(1));
  throw std::invalid_argument("unknown tagged proposition: " + t.str());
}

using Certificate = std::vector<TaggedProposition>;

struct SatisfactionFact {
  Degree degree;
  IdealityPrinciple principle;
  int state;
  Certificate certificate;
};

/// Importance order: Pr_i <= Pr_j iff rank(Pr_i) <= rank(Pr_j).
/// Default ranks: Desired/Mandatory/Undesired 1, MustPrecede 2.
struct PrincipleOrder {
  std::map<IdealityPrinciple, int> rank;

  int rank_of(const IdealityPrinciple& pr) const {
    auto it = rank.find(pr);
    if (it != rank.end()) return it->second;
    return pr.kind == IdealityPrinciple::Kind::MustPrecede ? 2 : 1;
  }
};

/// Some q in state s with Prevents(q, p), else absent.
inline std::optional<Atom> prevented_prop(const Atom& p, const BehaviorInstance& inst,
                                          int s, const KnowledgeBase& kb) {
  for (const auto& q : inst.states.at(s))
    if (kb.prop_prevents(q, p)) return q;
  return std::nullopt;
}

namespace detail {

/// first t <= s with a prevention witness for p, as (t, witness)
inline std::optional<std::pair<int, Atom>> first_prevention(
    const Atom& p, const BehaviorInstance& inst, int s, const KnowledgeBase& kb) {
  for (int t = 0; t <= s; ++t)
    if (auto q = prevented_prop(p, inst, t, kb)) return std::pair{t, *q};
  return std::nullopt;
}

}  // namespace detail

/// Total satisfaction-degree assessment of a principle at a state.
inline SatisfactionFact assess(const IdealityPrinciple& pr,
                               const BehaviorInstance& inst, int s,
                               const KnowledgeBase& kb) {
  using TP = TaggedProposition;
  const PropSet& props = inst.states.at(s);
  auto fact = [&](Degree d, Certificate cert) {
    cert.insert(cert.begin(), TP::principle(pr));
    return SatisfactionFact{d, pr, s, std::move(cert)};
  };

  switch (pr.kind) {
    case IdealityPrinciple::Kind::Desired:
    case IdealityPrinciple::Kind::Mandatory: {
      const Atom& p = pr.p1;
      if (props.count(p)) return fact(Degree::Fulfilled, {TP::holds(p, s)});
      if (auto prev = detail::first_prevention(p, inst, s, kb))
        return fact(Degree::Prevented,
                    {TP::prevents_fact(prev->second, p), TP::holds(prev->second, prev->first),
                     TP::not_holds(p, s)});
      return fact(Degree::NotFulfilled,
                  {TP::not_holds(p, s), TP::never_prevented_upto(p, s)});
    }

    case IdealityPrinciple::Kind::Undesired: {
      const Atom& p = pr.p1;
      for (int t = 0; t <= s; ++t)
        if (inst.states[t].count(p))
          return fact(Degree::NotFulfilled, {TP::holds(p, t)});
      return fact(Degree::Fulfilled, {TP::not_holds(p, s)});
    }

    case IdealityPrinciple::Kind::MustPrecede: {
      const Atom& p1 = pr.p1;
      const Atom& p2 = pr.p2;
      const PropSet& initial = inst.states.front();
      if (initial.count(p1) && initial.count(p2))
        // trivially satisfied in every state of the instance
        return fact(Degree::Fulfilled,
                    {TP::holds(p2, 0), TP::holds(p1, 0), TP::is_initial(0)});

      if (!props.count(p2)) {
        if (s == 0) {
          if (initial.count(p1))
            return fact(Degree::NotFulfilled,
                        {TP::is_initial(0), TP::holds(p1, 0), TP::not_holds(p2, 0)});
          return fact(Degree::IndifferentState,
                      {TP::is_initial(0), TP::not_holds(p1, 0), TP::not_holds(p2, 0)});
        }
        return fact(Degree::IndifferentState,
                    {TP::not_initial(s), TP::not_holds(p2, s)});
      }

      // p2 holds in s
      for (int t = 0; t < s; ++t)
        if (inst.states[t].count(p1) && !inst.states[t].count(p2))
          return fact(Degree::Fulfilled,
                      {TP::holds(p2, s), TP::holds(p1, t), TP::not_holds(p2, t),
                       TP::precedes(t, s)});
      if (auto prev = detail::first_prevention(p1, inst, s, kb))
        return fact(Degree::Prevented,
                    {TP::holds(p2, s), TP::prevents_fact(prev->second, p1),
                     TP::holds(prev->second, prev->first)});
      bool p1_before = false;
      for (int t = 0; t < s; ++t)
        if (inst.states[t].count(p1)) {
          p1_before = true;
          break;
        }
      if (!p1_before) {
        if (s == 0)
          return fact(Degree::NotFulfilled,
                      {TP::is_initial(0), TP::holds(p2, 0), TP::not_holds(p1, 0)});
        return fact(Degree::NotFulfilled,
                    {TP::not_initial(s), TP::holds(p2, s), TP::never_before(p1, s),
                     TP::never_prevented_upto(p1, s)});
      }
      // gap case: p1 occurred before, but only jointly with p2
      return fact(Degree::NotFulfilled, {TP::not_initial(s), TP::holds(p2, s)});
    }
  }
  throw std::logic_error("bad principle kind");
}

/// Present unless the principle is Prevented at s.
inline std::optional<SatisfactionFact> not_violated(const IdealityPrinciple& pr,
                                                    const BehaviorInstance& inst, int s,
                                                    const KnowledgeBase& kb) {
  SatisfactionFact f = assess(pr, inst, s, kb);
  if (f.degree == Degree::Prevented) return std::nullopt;
  return f;
}

/// Checks a tagged proposition against the instance and KB. Used by the
/// certificate-soundness tests.
inline bool eval_tagged(const TaggedProposition& tp, const BehaviorInstance& inst,
                        const KnowledgeBase& kb) {
  using K = TaggedProposition::Kind;
  auto in_range = [&](int s) { return s >= 0 && s < static_cast<int>(inst.states.size()); };
  switch (tp.kind) {
    case K::Holds: return in_range(tp.s1) && inst.states[tp.s1].count(tp.a) > 0;
    case K::NotHolds: return in_range(tp.s1) && inst.states[tp.s1].count(tp.a) == 0;
    case K::Principle: return true;
    case K::IsInitial: return tp.s1 == 0;
    case K::NotInitial: return in_range(tp.s1) && tp.s1 != 0;
    case K::Precedes: return in_range(tp.s1) && in_range(tp.s2) && tp.s1 < tp.s2;
    case K::NeverBefore:
      if (!in_range(tp.s1)) return false;
      for (int t = 0; t < tp.s1; ++t)
        if (inst.states[t].count(tp.a)) return false;
      return true;
    case K::NeverPreventedUpTo:
      if (!in_range(tp.s1)) return false;
      for (int t = 0; t <= tp.s1; ++t)
        if (prevented_prop(tp.a, inst, t, kb)) return false;
      return true;
    case K::PreventedAt:
      return in_range(tp.s1) && prevented_prop(tp.a, inst, tp.s1, kb).has_value();
    case K::PreventsFact: return kb.prop_prevents(tp.a, tp.b);
  }
  return false;
}

/// Report abridgment: when the KB has no prevention facts at all, the
/// no-prevention conjuncts are vacuous and are suppressed from printed sets.
inline Certificate abridge(const Certificate& cert, const KnowledgeBase& kb) {
  if (!kb.prevents.empty()) return cert;
  Certificate out;
  for (const auto& tp : cert)
    if (tp.kind != TaggedProposition::Kind::NeverPreventedUpTo) out.push_back(tp);
  return out;
}

}  // namespace bex
