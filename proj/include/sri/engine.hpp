#pragma once

// Branch-and-bound constraint search over per-agent rank variables.
//
// Each agent's variable ranges over {1..list_len, self_rank}; self_rank
// (list_len + 1) encodes "unmatched" during search and is stripped from the
// returned Matching. Constraints: the pairing channel (a matched to b iff b
// matched to a), and in strict mode the no-blocking implications
//   agent[a] > rank(a,b)  implies  agent[b] <= rank(b,a)
// propagated arc-consistently in both directions. Optional forced pairs,
// per-agent rank caps, and committed per-rank floors/ceilings (the
// lexicographic drivers' state) are installed at the root.
//
// Objectives: feasibility, minimize total matched rank (cost), maximize or
// minimize the number of agents matched at a given rank, and — with
// relax_stability, where feasibility widens to all matchings — minimize the
// number of unordered blocking pairs.
//
// Among co-optimal matchings the returned one is canonical up to
// canonical_limit agents: lexicographically smallest partner array
// (unmatched slots compare smallest), found by a second pinned-objective
// pass. On equal matched sets — always, in strict mode — this equals
// sorted-pair-list order. Larger instances return the first-found optimum;
// still deterministic, merely not order-independent.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sri/model.hpp"

namespace sri {

enum class ObjectiveKind {
  feasibility,
  minimize_cost,
  maximize_profile_level,
  minimize_profile_level,
  minimize_blocking,
};

struct Objective {
  ObjectiveKind kind = ObjectiveKind::feasibility;
  Rank level = 0;  // the rank whose count the profile kinds score

  // Committed lexicographic bounds, indexed by rank r at [r-1]; shorter
  // vectors leave higher ranks unconstrained. floor: matched-at-r count must
  // be >= value. ceiling: <= value (negative entry = unconstrained). Only
  // meaningful with the profile kinds.
  std::vector<int> profile_floor;
  std::vector<int> profile_ceiling;

  static Objective feasibility_only() { return {}; }
  static Objective min_cost() { return {ObjectiveKind::minimize_cost, 0, {}, {}}; }
  static Objective max_level(Rank r) {
    return {ObjectiveKind::maximize_profile_level, r, {}, {}};
  }
  static Objective min_level(Rank r) {
    return {ObjectiveKind::minimize_profile_level, r, {}, {}};
  }
  static Objective min_blocking() {
    return {ObjectiveKind::minimize_blocking, 0, {}, {}};
  }
};

struct SearchProblem {
  const Instance* instance = nullptr;

  // Pairs that must be in the matching; must be acceptable and pairwise
  // disjoint.
  std::vector<AgentPair> forced_pairs;

  // Per-agent maximum allowed partner rank (index = agent id, 0 or absent =
  // uncapped). Staying unmatched is always allowed.
  std::vector<Rank> rank_cap;

  // false: only stable matchings are feasible. true: all matchings are
  // feasible (required by minimize_blocking, rejected for cost/profile
  // objectives).
  bool relax_stability = false;

  Objective objective;

  // Per-agent flagged list position scored by the profile kinds instead of
  // the uniform objective.level position (index = agent id, 0 = unflagged).
  // Used by the truncated-instance pipeline, where the scored entry's
  // position differs per agent.
  std::vector<Rank> count_flags;

  std::int64_t node_limit = 100'000'000;
  std::int64_t time_limit_ms = 0;  // 0 = unlimited

  // Canonical second pass control; solves above canonical_limit agents
  // return the first-found optimum instead.
  bool canonical_tiebreak = true;
  int canonical_limit = 64;

  // tuned: documented default value ordering (best rank first; for
  // minimize_profile_level the scored position is tried late).
  // literal: best-first only for feasibility and maximize level;
  // self-then-worst-first otherwise.
  enum class ValueOrder { tuned, literal };
  ValueOrder value_order = ValueOrder::tuned;

  SearchProblem() = default;
  explicit SearchProblem(const Instance& inst) : instance(&inst) {}
};

enum class SolveStatus { optimal, unsat, budget_exceeded };

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t backtracks = 0;
  std::int64_t millis = 0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::unsat;
  std::optional<Matching> matching;        // present when status == optimal,
                                           // or best incumbent on budget
  std::optional<long long> objective_value;
  SolveStats stats;
};

// Solves the problem to proven optimality (or unsat/budget_exceeded).
// Throws std::invalid_argument on malformed problems: unacceptable or
// overlapping forced pairs, profile/cost objectives with relax_stability,
// minimize_blocking without it, or bounds on non-profile objectives.
SolveOutcome solve(const SearchProblem& p);

// Contradictions detectable without search: static validation plus one
// root propagation fixpoint (no solvability presolve). Empty = consistent.
std::vector<std::string> check_consistency(const SearchProblem& p);

}  // namespace sri
