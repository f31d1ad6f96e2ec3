#pragma once
// Optimality-criterion drivers. Each criterion maps onto one or more engine
// solves:
//
//   any-stable     feasibility only
//   egalitarian    minimize total matched-rank cost
//   fc-max         maximize the number of first choices
//   rank-maximal   lexicographic loop over levels 1..L, maximizing each
//                  level's count subject to the committed floors so far
//   generous       lexicographic loop over levels L..2, minimizing each
//                  level's count subject to the committed ceilings so far
//                  (level 1 is then forced by the invariant matched set)
//   min-regret     smallest R such that a stable matching exists with every
//                  matched rank <= R, found by an upward feasibility sweep
//   almost-stable  minimize the number of blocking pairs over all matchings
//
// All criteria except almost-stable are restricted to stable matchings and
// report unsat on instances without one; almost-stable is total.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sri/analysis.hpp"
#include "sri/engine.hpp"
#include "sri/model.hpp"

namespace sri {

enum class Criterion {
  any_stable,
  egalitarian,
  fc_max,
  rank_maximal,
  generous,
  min_regret,
  almost_stable,
};

// Canonical text names: any-stable, egalitarian, fc-max, rank-maximal,
// generous, min-regret, almost-stable.
std::string criterion_name(Criterion c);
std::optional<Criterion> parse_criterion(const std::string& name);
const std::vector<Criterion>& all_criteria();

enum class CriterionStatus { optimal, unsat, budget_exceeded };

// Text labels for reports: optimal | unsat | timeout.
std::string status_label(CriterionStatus s);

struct CriterionResult {
  Criterion criterion{};
  CriterionStatus status = CriterionStatus::unsat;
  // Criterion-specific scalar: cost (egalitarian), first-choice count
  // (fc-max, rank-maximal), level-L count (generous), regret bound
  // (min-regret), blocking-pair count (almost-stable), 0 (any-stable).
  std::optional<long long> objective;
  std::optional<Matching> matching;
  std::optional<Profile> profile;
  std::optional<CostSummary> summary;
  SolveStats stats;
};

struct SolverConfig {
  std::int64_t node_limit = 100'000'000;
  long long time_limit_ms = 0;  // 0 = unlimited
  bool canonical_tiebreak = true;
};

CriterionResult solve_criterion(const Instance& inst, Criterion c,
                                const SolverConfig& cfg = {});

// Commit sequence of the lexicographic criteria, in commit order:
// rank-maximal yields (1,y1)..(L,yL); generous yields (L,yL)..(2,y2)
// followed by the forced (1,y1). Throws std::invalid_argument for other
// criteria and UnsolvableError when no stable matching exists.
std::vector<std::pair<Rank, long long>> lex_trace(const Instance& inst,
                                                  Criterion c,
                                                  const SolverConfig& cfg = {});

}  // namespace sri
