#pragma once

#include <stdexcept>
#include <string>

namespace c45 {

// Split-selection policies. Rel7 is the unmodified gain-ratio system;
// SevenG picks thresholds by gain instead of gain ratio; SevenGS adds the
// log2(N-1)/|D| penalty as an exclusion filter; Rel8 additionally uses the
// penalized gain when ranking tests against each other.
enum class Policy { Rel7, SevenG, SevenGS, Rel8 };

inline const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Rel7: return "rel7";
    case Policy::SevenG: return "7g";
    case Policy::SevenGS: return "7gs";
    case Policy::Rel8: return "rel8";
  }
  return "?";
}

inline Policy policy_from_name(const std::string& name) {
  if (name == "rel7") return Policy::Rel7;
  if (name == "7g") return Policy::SevenG;
  if (name == "7gs") return Policy::SevenGS;
  if (name == "rel8") return Policy::Rel8;
  throw std::invalid_argument("unknown policy '" + name + "' (expected rel7, 7g, 7gs or rel8)");
}

// threshold choice uses gain ratio only under Rel7
inline bool threshold_by_gain_ratio(Policy p) { return p == Policy::Rel7; }

// the penalty filter ("attribute effectively ruled out") applies to 7GS and Rel8
inline bool penalty_filters(Policy p) {
  return p == Policy::SevenGS || p == Policy::Rel8;
}

// only Rel8 ranks tests by the penalized gain
inline bool penalty_reranks(Policy p) { return p == Policy::Rel8; }

}  // namespace c45
