#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "bex/term.hpp"
#include "bex/trace.hpp"

namespace bex {

enum class EntityKind { Prop, Action };

/// A proposition or an action, as they appear in the Prevents relation.
struct Entity {
  EntityKind kind;
  Term term;
  auto operator<=>(const Entity&) const = default;
  bool operator==(const Entity&) const = default;
};

inline Entity prop_entity(Term t) { return {EntityKind::Prop, std::move(t)}; }
inline Entity action_entity(Term t) { return {EntityKind::Action, std::move(t)}; }

/// Every relation learned or derived from a corpus.
struct KnowledgeBase {
  std::set<Atom> statics;
  std::set<Atom> fluents;
  std::set<ActionTerm> actions;
  std::map<ActionTerm, std::set<Atom>> precond;
  std::map<ActionTerm, std::set<Atom>> pos_effects;
  std::map<ActionTerm, std::set<Atom>> neg_effects;
  std::set<Atom> goal;
  std::set<Atom> desired_props;
  std::set<ActionTerm> desired_actions;
  std::set<Atom> undesired_props;
  std::set<ActionTerm> undesired_actions;
  std::set<Atom> neutral_props;
  std::set<ActionTerm> neutral_actions;
  std::set<std::pair<Atom, Atom>> incompatible;   // stored with first < second
  std::set<std::pair<Atom, ActionTerm>> incompatible_prop_action;
  std::set<std::pair<Entity, Entity>> prevents;
  std::set<std::pair<Atom, Atom>> must_precede;
  std::set<Atom> mandatory;
  std::map<Atom, std::set<Atom>> defining;
  // Mandatory is occurrence-checked only, never planner-verified.
  bool mandatory_verified = false;

  bool is_incompatible(const Atom& a, const Atom& b) const {
    auto p = a < b ? std::pair{a, b} : std::pair{b, a};
    return incompatible.count(p) > 0;
  }
  bool prop_prevents(const Atom& q, const Atom& p) const {
    return prevents.count({prop_entity(q), prop_entity(p)}) > 0;
  }
  const std::set<Atom>& precond_of(const ActionTerm& a) const {
    static const std::set<Atom> empty;
    auto it = precond.find(a);
    return it == precond.end() ? empty : it->second;
  }
  const std::set<Atom>& pos_of(const ActionTerm& a) const {
    static const std::set<Atom> empty;
    auto it = pos_effects.find(a);
    return it == pos_effects.end() ? empty : it->second;
  }
  const std::set<Atom>& neg_of(const ActionTerm& a) const {
    static const std::set<Atom> empty;
    auto it = neg_effects.find(a);
    return it == neg_effects.end() ? empty : it->second;
  }
};

namespace detail {

inline nlohmann::json terms_json(const std::set<Term>& ts) {
  auto arr = nlohmann::json::array();
  for (const auto& t : ts) arr.push_back(t.str());
  return arr;
}

inline nlohmann::json term_map_json(const std::map<Term, std::set<Term>>& m) {
  auto obj = nlohmann::json::object();
  for (const auto& [k, v] : m) obj[k.str()] = terms_json(v);
  return obj;
}

inline nlohmann::json pairs_json(const std::set<std::pair<Term, Term>>& ps) {
  auto arr = nlohmann::json::array();
  for (const auto& [a, b] : ps) arr.push_back({a.str(), b.str()});
  return arr;
}

inline nlohmann::json entity_json(const Entity& e) {
  return {{"kind", e.kind == EntityKind::Prop ? "prop" : "action"},
          {"term", e.term.str()}};
}

inline Entity entity_from_json(const nlohmann::json& j) {
  EntityKind k = j.at("kind").get<std::string>() == "action" ? EntityKind::Action
                                                             : EntityKind::Prop;
  return {k, parse_term(j.at("term").get<std::string>())};
}

inline std::set<Term> terms_from_json(const nlohmann::json& arr) {
  std::set<Term> out;
  for (const auto& j : arr) out.insert(parse_term(j.get<std::string>()));
  return out;
}

inline std::map<Term, std::set<Term>> term_map_from_json(const nlohmann::json& obj) {
  std::map<Term, std::set<Term>> out;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    out[parse_term(it.key())] = terms_from_json(it.value());
  return out;
}

inline std::set<std::pair<Term, Term>> pairs_from_json(const nlohmann::json& arr) {
  std::set<std::pair<Term, Term>> out;
  for (const auto& j : arr)
    out.insert({parse_term(j.at(0).get<std::string>()),
                parse_term(j.at(1).get<std::string>())});
  return out;
}

}  // namespace detail

/// KB file format: one JSON object, alphabetically sorted keys, all term
/// arrays in canonical order.
inline std::string serialize_kb(const KnowledgeBase& kb) {
  using detail::terms_json;
  nlohmann::json doc;
  doc["statics"] = terms_json(kb.statics);
  doc["fluents"] = terms_json(kb.fluents);
  doc["actions"] = terms_json(kb.actions);
  doc["precond"] = detail::term_map_json(kb.precond);
  doc["pos_effects"] = detail::term_map_json(kb.pos_effects);
  doc["neg_effects"] = detail::term_map_json(kb.neg_effects);
  doc["goal"] = terms_json(kb.goal);
  doc["desired_props"] = terms_json(kb.desired_props);
  doc["desired_actions"] = terms_json(kb.desired_actions);
  doc["undesired_props"] = terms_json(kb.undesired_props);
  doc["undesired_actions"] = terms_json(kb.undesired_actions);
  doc["neutral_props"] = terms_json(kb.neutral_props);
  doc["neutral_actions"] = terms_json(kb.neutral_actions);
  doc["incompatible"] = detail::pairs_json(kb.incompatible);
  doc["incompatible_prop_action"] = detail::pairs_json(kb.incompatible_prop_action);
  auto prev = nlohmann::json::array();
  for (const auto& [a, b] : kb.prevents)
    prev.push_back({{"src", detail::entity_json(a)}, {"dst", detail::entity_json(b)}});
  doc["prevents"] = prev;
  doc["must_precede"] = detail::pairs_json(kb.must_precede);
  doc["mandatory"] = terms_json(kb.mandatory);
  doc["defining"] = detail::term_map_json(kb.defining);
  doc["mandatory_verified"] = kb.mandatory_verified;
  return doc.dump(2) + "\n";
}

inline KnowledgeBase parse_kb(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  KnowledgeBase kb;
  kb.statics = detail::terms_from_json(doc.at("statics"));
  kb.fluents = detail::terms_from_json(doc.at("fluents"));
  kb.actions = detail::terms_from_json(doc.at("actions"));
  kb.precond = detail::term_map_from_json(doc.at("precond"));
  kb.pos_effects = detail::term_map_from_json(doc.at("pos_effects"));
  kb.neg_effects = detail::term_map_from_json(doc.at("neg_effects"));
  kb.goal = detail::terms_from_json(doc.at("goal"));
  kb.desired_props = detail::terms_from_json(doc.at("desired_props"));
  kb.desired_actions = detail::terms_from_json(doc.at("desired_actions"));
  kb.undesired_props = detail::terms_from_json(doc.at("undesired_props"));
  kb.undesired_actions = detail::terms_from_json(doc.at("undesired_actions"));
  kb.neutral_props = detail::terms_from_json(doc.at("neutral_props"));
  kb.neutral_actions = detail::terms_from_json(doc.at("neutral_actions"));
  kb.incompatible = detail::pairs_from_json(doc.at("incompatible"));
  kb.incompatible_prop_action = detail::pairs_from_json(doc.at("incompatible_prop_action"));
  for (const auto& j : doc.at("prevents"))
    kb.prevents.insert({detail::entity_from_json(j.at("src")),
                        detail::entity_from_json(j.at("dst"))});
  kb.must_precede = detail::pairs_from_json(doc.at("must_precede"));
  kb.mandatory = detail::terms_from_json(doc.at("mandatory"));
  kb.defining = detail::term_map_from_json(doc.at("defining"));
  kb.mandatory_verified = doc.at("mandatory_verified").get<bool>();
  return kb;
}

}  // namespace bex
