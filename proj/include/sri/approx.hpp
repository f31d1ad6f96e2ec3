#pragma once
// Approximation / parameterized layer:
//
//  - Min-regret truncation: delete every acceptable pair ranked worse than
//    the minimum regret R by either side. Stable matchings of the truncated
//    instance are exactly the minimum-regret stable matchings of the base.
//  - Last-choice cost construction: per-agent unit cost on the surviving
//    rank-R entry (always the last entry of a truncated list), zero
//    elsewhere; rows satisfy the U-shape condition (non-increasing, then
//    non-decreasing).
//  - solve_lc: among minimum-regret stable matchings, minimize the number of
//    agents matched to their rank-R (worst feasible) choice.
//  - check_ratio: the 2-approximation contract for that count.
//  - fc_xp: decide whether a stable matching with at least k first choices
//    exists by forcing first-choice pairs over all size-k agent subsets.

#include <optional>
#include <vector>

#include "sri/model.hpp"

namespace sri {

// Per-agent cost rows aligned with the truncated instance's lists:
// rows[a][p-1] is the cost of matching agent a at list position p.
struct CostFunction {
  std::vector<std::vector<double>> rows;
};

// A row is U-shaped when every strict decrease precedes every strict
// increase: 1,0,1 passes; 0,1,0 does not.
bool is_u_shaped(const std::vector<double>& row);
bool is_u_shaped(const CostFunction& cost);

struct TruncatedInstance {
  Instance base;
  Rank regret_bound = 0;  // R: minimum regret over stable matchings of base
  Instance reduced;       // base with pairs ranked > R (by either side) removed
};

// Throws UnsolvableError when the instance has no stable matching.
TruncatedInstance truncate_at_min_regret(const Instance& inst);

CostFunction build_lc_cost(const TruncatedInstance& t);

struct LcResult {
  Matching matching;      // stable in the base instance, regret exactly R
  long long rth_count = 0;  // agents matched to their rank-R choice
};

// Throws UnsolvableError when the instance has no stable matching.
LcResult solve_lc(const Instance& inst);

// True iff candidate_count <= 2 x the exact optimum (optimum 0 requires a
// candidate of 0).
bool check_ratio(long long candidate_count, const Instance& inst);

// First stable matching (over size-k agent subsets in lexicographic order)
// that gives every subset member its first choice; nullopt when none exists.
// Subsets whose forced pairs conflict are skipped.
std::optional<Matching> fc_xp(const Instance& inst, int k);

}  // namespace sri
