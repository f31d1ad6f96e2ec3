#pragma once

// Polynomial-time stable roommates solver (proposal phase + rotation
// elimination), extended to incomplete lists: agents whose lists empty
// during the proposal phase are unmatched in every stable matching; a list
// emptying during rotation elimination proves no stable matching exists.
//
// This is the scalable existence/witness route. The exhaustive enumeration
// oracle is implemented independently and never calls into this file.

#include "sri/model.hpp"

namespace sri {

struct PolySolveResult {
  bool solvable = false;
  Matching matching;                // one stable matching, when solvable
  std::vector<AgentId> matched;     // agents matched in every stable matching
};

PolySolveResult find_stable_polynomial(const Instance& inst);

// Same, on the instance with the given acceptable pairs deleted (both
// directions). Equivalent to rebuilding the reduced instance, but without
// the reconstruction cost; callers sweep many single-pair deletions.
PolySolveResult find_stable_polynomial(const Instance& inst,
                                       const std::vector<AgentPair>& without);

}  // namespace sri
