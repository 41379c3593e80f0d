#pragma once

#include <map>
#include <set>
#include <vector>

#include "bex/base_learner.hpp"
#include "bex/trace.hpp"

namespace bex {

struct DefiningFact {
  Atom defined;
  std::set<Atom> body;  // non-empty, never contains `defined`
  auto operator<=>(const DefiningFact&) const = default;
  bool operator==(const DefiningFact&) const = default;
};

struct DefinitionResult {
  std::vector<DefiningFact> facts;
  std::vector<Atom> ambiguous;  // mutually-defining atoms, emitted for neither
};

/// Stage 1: co(p) = intersection, over every state containing p, of the
/// state's other fluents; empty co-sets are discarded. Stage 2: atoms that
/// themselves have definitions are removed from every body; mutually-defining
/// atoms are refused (reported as ambiguous) rather than broken by an
/// arbitrary elimination order.
inline DefinitionResult learn_definitions(const Corpus& corpus,
                                          const std::set<Atom>& fluents) {
  std::map<Atom, std::set<Atom>> co;
  for (const auto& p : fluents) {
    bool first = true;
    std::set<Atom> acc;
    for (const auto& inst : corpus.instances)
      for (const auto& s : inst.states) {
        if (!s.count(p)) continue;
        std::set<Atom> here = detail::intersect(s, fluents);
        here.erase(p);
        if (first) {
          acc = std::move(here);
          first = false;
        } else {
          acc = detail::intersect(acc, here);
        }
      }
    if (!first && !acc.empty()) co[p] = std::move(acc);
  }

  DefinitionResult result;
  std::set<Atom> defined;
  for (const auto& [p, body] : co) defined.insert(p);
  std::set<Atom> cyclic;
  for (const auto& [p, body] : co)
    for (const auto& q : body) {
      auto it = co.find(q);
      if (it != co.end() && it->second.count(p)) {
        cyclic.insert(p);
        cyclic.insert(q);
      }
    }
  for (const auto& p : cyclic) defined.erase(p);
  result.ambiguous.assign(cyclic.begin(), cyclic.end());

  for (const auto& p : defined) {
    std::set<Atom> body = detail::subtract(co.at(p), defined);
    if (!body.empty()) result.facts.push_back({p, std::move(body)});
  }
  return result;
}

}  // namespace bex
