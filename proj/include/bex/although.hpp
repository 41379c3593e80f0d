#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bex/deontic.hpp"
#include "bex/planner.hpp"

namespace bex {

struct Rational {
  IdealityPrinciple principle;
  std::vector<ActionTerm> sequence;  // non-empty; sequence[0] = the fact's action
  auto operator<=>(const Rational&) const = default;
  bool operator==(const Rational&) const = default;
};

/// A perplexing action: executing `action` in the state before `state`
/// strictly lowered `principle`'s satisfaction degree, from the situation
/// attested by before_cert to the one attested by deviation_cert. A rational,
/// when present, names a no-less-important principle the action optimally
/// served.
struct AlthoughFact {
  IdealityPrinciple principle;  // also the single Principle(.) in both certs
  Certificate before_cert;
  ActionTerm action;
  int state;  // index of the resulting state
  Certificate deviation_cert;
  std::optional<Rational> rational;
  auto operator<=>(const AlthoughFact&) const = default;
  bool operator==(const AlthoughFact&) const = default;
};

/// The three degree drops that perplex an observer:
///   Fulfilled -> NotFulfilled, IndifferentState -> NotFulfilled,
///   not-violated -> Prevented.
inline std::vector<AlthoughFact> derive_although4(
    const BehaviorInstance& inst, const std::vector<IdealityPrinciple>& principles,
    const KnowledgeBase& kb) {
  std::vector<IdealityPrinciple> prs = principles;
  std::sort(prs.begin(), prs.end());
  std::vector<AlthoughFact> out;
  for (const auto& t : transitions(inst)) {
    for (const auto& pr : prs) {
      SatisfactionFact before = assess(pr, inst, t.index, kb);
      SatisfactionFact after = assess(pr, inst, t.index + 1, kb);
      bool fires =
          (before.degree == Degree::Fulfilled && after.degree == Degree::NotFulfilled) ||
          (before.degree == Degree::IndifferentState &&
           after.degree == Degree::NotFulfilled) ||
          (before.degree != Degree::Prevented && after.degree == Degree::Prevented);
      if (!fires) continue;
      out.push_back({pr, before.certificate, *t.action, t.index + 1,
                     after.certificate, std::nullopt});
    }
  }
  return out;
}

/// Rationals for one perplexing action: every no-less-important principle that
/// was not yet fulfilled and whose observed fulfilling sequence starts with
/// the action and is as short as an optimal one.
inline std::vector<AlthoughFact> derive_although5(
    const AlthoughFact& a4, const BehaviorInstance& inst,
    const std::vector<IdealityPrinciple>& principles, const PrincipleOrder& order,
    const KnowledgeBase& kb) {
  int s1 = a4.state - 1;
  int my_rank = order.rank_of(a4.principle);
  std::vector<IdealityPrinciple> prs = principles;
  std::sort(prs.begin(), prs.end(), [&](const auto& x, const auto& y) {
    int rx = order.rank_of(x), ry = order.rank_of(y);
    return rx != ry ? rx < ry : x < y;
  });
  std::vector<AlthoughFact> out;
  for (const auto& pr : prs) {
    if (my_rank > order.rank_of(pr)) continue;
    if (assess(pr, inst, s1, kb).degree == Degree::Fulfilled) continue;
    auto obs = observed_sequence(pr, inst, s1);
    if (!obs || obs->empty() || obs->front() != a4.action) continue;
    auto opt = optimum_sequence(pr, inst, s1, kb);
    if (!opt || static_cast<int>(obs->size()) != opt->first) continue;
    AlthoughFact fact = a4;
    fact.rational = Rational{pr, *obs};
    out.push_back(std::move(fact));
  }
  return out;
}

/// /4 facts followed, per fact, by its /5 refinements.
inline std::vector<AlthoughFact> derive_although(
    const BehaviorInstance& inst, const std::vector<IdealityPrinciple>& principles,
    const PrincipleOrder& order, const KnowledgeBase& kb) {
  std::vector<AlthoughFact> out;
  for (const auto& a4 : derive_although4(inst, principles, kb)) {
    out.push_back(a4);
    for (auto& a5 : derive_although5(a4, inst, principles, order, kb))
      out.push_back(std::move(a5));
  }
  return out;
}

enum class RenderMode { Text, Json };

namespace detail {

inline std::string cert_text(const Certificate& cert) {
  std::string out;
  for (const auto& tp : cert) {
    if (!out.empty()) out += ", ";
    out += tp.to_term().str();
  }
  return out;
}

}  // namespace detail

/// Text mode gives the templated English reading (with vacuous no-prevention
/// conjuncts abridged); json mode is the canonical one-object serialization.
inline std::string render_explanation(const AlthoughFact& fact, RenderMode mode,
                                      const KnowledgeBase& kb) {
  if (mode == RenderMode::Text) {
    std::string out = "Although " + detail::cert_text(abridge(fact.before_cert, kb)) +
                      ", the actor executed " + fact.action.str() +
                      ", resulting in s" + std::to_string(fact.state) + " where " +
                      detail::cert_text(abridge(fact.deviation_cert, kb));
    if (fact.rational) {
      out += "; however, " + fact.rational->principle.to_term().str() + ":[";
      for (std::size_t i = 0; i < fact.rational->sequence.size(); ++i) {
        if (i) out += ", ";
        out += fact.rational->sequence[i].str();
      }
      out += "]";
    }
    return out;
  }
  nlohmann::ordered_json doc;
  doc["kind"] = fact.rational ? "although5" : "although4";
  auto certs = [](const Certificate& c) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& tp : c) arr.push_back(tp.to_term().str());
    return arr;
  };
  doc["pset1"] = certs(fact.before_cert);
  doc["action"] = fact.action.str();
  doc["state"] = "s" + std::to_string(fact.state);
  doc["dev"] = certs(fact.deviation_cert);
  if (fact.rational) {
    auto seq = nlohmann::ordered_json::array();
    for (const auto& a : fact.rational->sequence) seq.push_back(a.str());
    doc["rational"] = {{"principle", fact.rational->principle.to_term().str()},
                       {"sequence", seq}};
  }
  return doc.dump();
}

/// Inverse of the json render; the fact's principle is recovered from the
/// Principle(.) element of pset1.
inline AlthoughFact parse_explanation(const std::string& line) {
  nlohmann::json doc = nlohmann::json::parse(line);
  AlthoughFact fact;
  auto certs = [](const nlohmann::json& arr) {
    Certificate c;
    for (const auto& j : arr)
      c.push_back(TaggedProposition::from_term(parse_term(j.get<std::string>())));
    return c;
  };
  fact.before_cert = certs(doc.at("pset1"));
  fact.action = parse_term(doc.at("action").get<std::string>());
  fact.state = std::stoi(doc.at("state").get<std::string>().substr(1));
  fact.deviation_cert = certs(doc.at("dev"));
  for (const auto& tp : fact.before_cert)
    if (tp.kind == TaggedProposition::Kind::Principle) fact.principle = tp.pr;
  if (doc.contains("rational")) {
    Rational r;
    r.principle =
        IdealityPrinciple::from_term(parse_term(doc.at("rational").at("principle").get<std::string>()));
    for (const auto& j : doc.at("rational").at("sequence"))
      r.sequence.push_back(parse_term(j.get<std::string>()));
    fact.rational = std::move(r);
  }
  return fact;
}

}  // namespace bex
