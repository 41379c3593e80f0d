#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bex/term.hpp"

namespace bex {

/// A state is a duplicate-free set of positive ground atoms.
using PropSet = std::set<Atom>;

/// One recorded trace: k+1 states connected by k ground actions. State 0 is
/// the initial state. `successful` marks instances whose final state achieves
/// the actor's goal; fragment instances (used by the micro domain) carry
/// successful = false and are excluded from goal learning.
struct BehaviorInstance {
  std::string id;
  std::vector<PropSet> states;
  std::vector<ActionTerm> actions;
  bool successful = true;
};

struct Corpus {
  std::string class_id;
  std::vector<BehaviorInstance> instances;
};

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Transition {
  int index;                 // i, for (states[i], actions[i], states[i+1])
  const PropSet* pre;
  const ActionTerm* action;
  const PropSet* post;
};

inline std::vector<Transition> transitions(const BehaviorInstance& inst) {
  std::vector<Transition> out;
  out.reserve(inst.actions.size());
  for (std::size_t i = 0; i < inst.actions.size(); ++i)
    out.push_back({static_cast<int>(i), &inst.states[i], &inst.actions[i],
                   &inst.states[i + 1]});
  return out;
}

inline void validate_instance(const BehaviorInstance& inst) {
  if (inst.states.empty())
    throw CorpusError("instance '" + inst.id + "': no states");
  if (inst.actions.size() + 1 != inst.states.size())
    throw CorpusError("instance '" + inst.id + "': " +
                      std::to_string(inst.actions.size()) + " actions but " +
                      std::to_string(inst.states.size()) + " states");
}

inline void validate_corpus(const Corpus& corpus) {
  std::set<std::string> ids;
  for (const auto& inst : corpus.instances) {
    validate_instance(inst);
    if (!ids.insert(inst.id).second)
      throw CorpusError("duplicate instance id '" + inst.id + "'");
  }
}

/// Parses the corpus file format:
///   {"class": str, "instances": [{"id": str, "states": [[term...]...],
///    "actions": [term...]}...]}
/// A state listing the same atom twice is an error, not a deduplication.
inline Corpus parse_corpus(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorpusError(std::string("corpus JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("class") || !doc.contains("instances"))
    throw CorpusError("corpus JSON: expected object with 'class' and 'instances'");

  Corpus corpus;
  corpus.class_id = doc.at("class").get<std::string>();
  for (const auto& j : doc.at("instances")) {
    BehaviorInstance inst;
    inst.id = j.at("id").get<std::string>();
    for (const auto& js : j.at("states")) {
      PropSet props;
      for (const auto& ja : js) {
        Atom a = parse_term(ja.get<std::string>());
        if (!props.insert(a).second)
          throw CorpusError("instance '" + inst.id + "': duplicate atom '" +
                            a.str() + "' in a state");
      }
      inst.states.push_back(std::move(props));
    }
    for (const auto& ja : j.at("actions"))
      inst.actions.push_back(parse_term(ja.get<std::string>()));
    if (j.contains("successful")) inst.successful = j.at("successful").get<bool>();
    corpus.instances.push_back(std::move(inst));
  }
  validate_corpus(corpus);
  return corpus;
}

/// Byte-deterministic inverse of parse_corpus: fixed key order, prop sets
/// emitted in canonical term order, "successful" written only when false.
inline std::string serialize_corpus(const Corpus& corpus) {
  nlohmann::ordered_json doc;
  doc["class"] = corpus.class_id;
  doc["instances"] = nlohmann::ordered_json::array();
  for (const auto& inst : corpus.instances) {
    nlohmann::ordered_json j;
    j["id"] = inst.id;
    j["states"] = nlohmann::ordered_json::array();
    for (const auto& s : inst.states) {
      auto js = nlohmann::ordered_json::array();
      for (const auto& a : s) js.push_back(a.str());
      j["states"].push_back(std::move(js));
    }
    j["actions"] = nlohmann::ordered_json::array();
    for (const auto& a : inst.actions) j["actions"].push_back(a.str());
    if (!inst.successful) j["successful"] = false;
    doc["instances"].push_back(std::move(j));
  }
  return doc.dump();
}

}  // namespace bex
