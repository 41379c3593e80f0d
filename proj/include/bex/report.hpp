#pragma once

#include <cctype>
#include <string>

#include "bex/deontic.hpp"
#include "bex/knowledge.hpp"

namespace bex {

/// Presentation form of a canonical term: first letter of every functor and
/// constant uppercased — on(a,b) becomes On(A,B), [a,b] becomes [A,B].
inline std::string pretty(const Term& t) {
  if (t.kind == Term::Kind::List) {
    std::string out = "[";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ",";
      out += pretty(t.args[i]);
    }
    return out + "]";
  }
  std::string out = t.functor;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(out[0]));
  if (!t.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ",";
      out += pretty(t.args[i]);
    }
    out += ")";
  }
  return out;
}

namespace detail {

inline void section_terms(std::string& out, const std::string& title,
                          const std::set<Term>& ts) {
  out += title + " (" + std::to_string(ts.size()) + "):\n";
  if (ts.empty()) {
    out += "  (none)\n";
    return;
  }
  for (const auto& t : ts) out += "  " + pretty(t) + "\n";
}

inline void section_pairs(std::string& out, const std::string& title,
                          const std::set<std::pair<Term, Term>>& ps) {
  out += title + " (" + std::to_string(ps.size()) + "):\n";
  if (ps.empty()) {
    out += "  (none)\n";
    return;
  }
  for (const auto& [a, b] : ps) out += "  (" + pretty(a) + ", " + pretty(b) + ")\n";
}

}  // namespace detail

/// Human-readable KB summary, one section per relation, mirroring the usual
/// result-table layout.
inline std::string render_report(const KnowledgeBase& kb) {
  std::string out;
  detail::section_terms(out, "static propositions", kb.statics);
  detail::section_terms(out, "fluent propositions", kb.fluents);
  detail::section_terms(out, "actions", kb.actions);
  detail::section_terms(out, "goal", kb.goal);
  detail::section_terms(out, "desired propositions", kb.desired_props);
  detail::section_terms(out, "desired actions", kb.desired_actions);
  detail::section_terms(out, "undesired propositions", kb.undesired_props);
  detail::section_terms(out, "undesired actions", kb.undesired_actions);
  detail::section_terms(out, "neutral propositions", kb.neutral_props);
  detail::section_terms(out, "neutral actions", kb.neutral_actions);
  detail::section_pairs(out, "incompatible propositions", kb.incompatible);
  detail::section_pairs(out, "incompatible proposition/action",
                        kb.incompatible_prop_action);
  out += "prevents (" + std::to_string(kb.prevents.size()) + "):\n";
  if (kb.prevents.empty()) out += "  (none)\n";
  for (const auto& [a, b] : kb.prevents)
    out += "  (" + pretty(a.term) + ", " + pretty(b.term) + ")\n";
  detail::section_pairs(out, "must precede", kb.must_precede);
  detail::section_terms(out, "mandatory", kb.mandatory);
  out += "defining (" + std::to_string(kb.defining.size()) + "):\n";
  if (kb.defining.empty()) out += "  (none)\n";
  for (const auto& [p, body] : kb.defining) {
    out += "  " + pretty(p) + " = {";
    bool first = true;
    for (const auto& q : body) {
      if (!first) out += ", ";
      out += pretty(q);
      first = false;
    }
    out += "}\n";
  }
  return out;
}

}  // namespace bex
