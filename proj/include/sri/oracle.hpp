#pragma once

// Ground truth for desk-scale instances: exhaustive enumeration of stable
// matchings, exhaustive minimum-blocking-pair search over all matchings, and
// a polynomial satisfiability decision. The enumerators are deliberately
// independent of the branch-and-bound engine — they share no search code —
// so they can serve as its correctness oracle.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sri/model.hpp"

namespace sri {

// Thrown when an enumeration exceeds its node budget. Never a silent
// truncation.
class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::int64_t kDefaultOracleBudget = 100'000'000;

struct StableSet {
  std::vector<Matching> matchings;  // canonically ordered, deduplicated
};

struct MinBlockingResult {
  Matching matching;
  int blocking = 0;
};

// All stable matchings, by backtracking over acceptable pairs with
// blocking-pair pruning. Output sorted by pair list (integer order).
// Intended for n up to ~40.
StableSet enumerate_stable(const Instance& inst,
                           std::int64_t node_budget = kDefaultOracleBudget);

// A matching minimizing the number of unordered blocking pairs, over ALL
// matchings (not just stable ones). count == 0 iff a stable matching exists.
// Intended for n up to ~12.
MinBlockingResult min_blocking_over_all_matchings(
    const Instance& inst, std::int64_t node_budget = kDefaultOracleBudget);

// True iff the instance admits a stable matching. Runs the polynomial
// proposal-and-reduction algorithm, so it scales far past the enumerators.
bool exists_stable(const Instance& inst);

}  // namespace sri
