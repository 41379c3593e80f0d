#pragma once

#include <set>
#include <stdexcept>
#include <string>

namespace bex {

/// Records which prior-knowledge propositions were used, together with
/// observations, to derive a conclusion. Propositions are opaque strings
/// here: no entailment checking is attempted.
struct BackgroundFact {
  std::set<std::string> used_background;  // non-empty
  std::string conclusion;
  bool operator==(const BackgroundFact&) const = default;
};

struct BackgroundError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Background(delta ∩ psi, q), given that psi derives q (caller-attested).
/// Side conditions: psi ⊆ delta ∪ omega; delta ∩ psi non-empty (background
/// was actually used); omega − delta non-empty (some genuinely novel
/// observation; syntactic stand-in for the closure condition).
inline BackgroundFact derive_background(const std::set<std::string>& delta,
                                        const std::set<std::string>& omega,
                                        const std::set<std::string>& psi,
                                        const std::string& q) {
  for (const auto& p : psi)
    if (!delta.count(p) && !omega.count(p))
      throw BackgroundError("premise '" + p +
                            "' is neither background nor observation");
  std::set<std::string> used;
  for (const auto& p : psi)
    if (delta.count(p)) used.insert(p);
  if (used.empty())
    throw BackgroundError("no background proposition was used in the derivation");
  bool novel = false;
  for (const auto& p : omega)
    if (!delta.count(p)) {
      novel = true;
      break;
    }
  if (!novel) throw BackgroundError("observations add nothing beyond background");
  return {std::move(used), q};
}

}  // namespace bex
