// Branch-and-bound engine: objective handling, forced pairs, rank caps,
// profile bounds, budgets, problem validation, and — most importantly —
// agreement with the independent exhaustive oracles on random instances.

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "sri/analysis.hpp"
#include "sri/engine.hpp"
#include "sri/model.hpp"
#include "sri/oracle.hpp"
#include "test_util.hpp"

using namespace sri;

namespace {

long long stable_min_cost(const Instance& inst, const StableSet& s) {
  long long best = -1;
  for (const Matching& m : s.matchings) {
    long long c = cost_summary(inst, m).cost;
    if (best < 0 || c < best) best = c;
  }
  return best;
}

int stable_extreme_level(const Instance& inst, const StableSet& s, Rank r,
                         bool maximize) {
  int best = -1;
  for (const Matching& m : s.matchings) {
    int v = profile(inst, m, ProfileScope::matched_set).level(r);
    if (best < 0 || (maximize ? v > best : v < best)) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("feasibility solve returns the canonical stable matching") {
  Instance inst = testutil::appendix_instance();
  SearchProblem sp(inst);
  SolveOutcome o = solve(sp);
  REQUIRE(o.status == SolveStatus::optimal);
  REQUIRE(o.matching.has_value());
  CHECK(blocking_pairs(inst, *o.matching).empty());
  CHECK(testutil::one_based_pairs(*o.matching) ==
        testutil::appendix_stable_pairs()[0]);
  CHECK(o.stats.nodes > 0);

  // Determinism: a second identical solve returns the same matching.
  SolveOutcome o2 = solve(sp);
  CHECK(*o2.matching == *o.matching);
}

TEST_CASE("feasibility reports unsat on the unsolvable instance") {
  Instance inst = testutil::table1_instance();
  SearchProblem sp(inst);
  SolveOutcome o = solve(sp);
  CHECK(o.status == SolveStatus::unsat);
  CHECK_FALSE(o.matching.has_value());
}

TEST_CASE("cost minimization matches the frozen optimum") {
  Instance inst = testutil::appendix_instance();
  SearchProblem sp(inst);
  sp.objective = Objective::min_cost();
  SolveOutcome o = solve(sp);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == testutil::kAppendixEgalCost);
  CHECK(testutil::one_based_pairs(*o.matching) ==
        testutil::appendix_egalitarian_matching());
  CHECK(cost_summary(inst, *o.matching).cost == testutil::kAppendixEgalCost);
}

TEST_CASE("profile level objectives on the appendix instance") {
  Instance inst = testutil::appendix_instance();

  SearchProblem max1(inst);
  max1.objective = Objective::max_level(1);
  SolveOutcome o = solve(max1);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == testutil::kAppendixFcMax);

  SearchProblem min9(inst);
  min9.objective = Objective::min_level(9);
  o = solve(min9);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == 0);
}

TEST_CASE("profile floors and ceilings constrain later levels") {
  Instance inst = testutil::appendix_instance();

  // After committing 2 first choices, the best level-2 count is 1.
  SearchProblem step2(inst);
  step2.objective = Objective::max_level(2);
  step2.objective.profile_floor = {2};
  SolveOutcome o = solve(step2);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == testutil::appendix_rank_maximal_profile()[1]);

  // Demanding 3 first choices is impossible: no stable matching has them.
  SearchProblem infeasible(inst);
  infeasible.objective = Objective::max_level(2);
  infeasible.objective.profile_floor = {3};
  CHECK(solve(infeasible).status == SolveStatus::unsat);

  // Capping worst ranks at zero from 7 up forces the generous level-6 count.
  SearchProblem step6(inst);
  step6.objective = Objective::min_level(6);
  step6.objective.profile_ceiling = {-1, -1, -1, -1, -1, -1, 0, 0, 0};
  o = solve(step6);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == testutil::appendix_generous_profile()[5]);
}

TEST_CASE("count flags override the uniform level") {
  Instance inst = parse_instance("2\n2\n1\n");
  SearchProblem sp(inst);
  sp.objective = Objective::min_level(1);
  sp.count_flags = {1, 1};
  SolveOutcome o = solve(sp);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == 2);  // both agents sit at their flagged rank

  sp.count_flags = {1, 0};  // 0 = unflagged
  o = solve(sp);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == 1);
}

TEST_CASE("forced pairs restrict the stable set") {
  Instance inst = testutil::appendix_instance();
  StableSet s = enumerate_stable(inst);

  // Force the pair (1,3): only stable matchings containing it remain.
  SearchProblem sp(inst);
  sp.forced_pairs = {AgentPair(0, 2)};
  sp.objective = Objective::min_cost();
  SolveOutcome o = solve(sp);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK((*o.matching).partner(0) == 2);

  long long best = -1;
  for (const Matching& m : s.matchings)
    if (m.partner(0) == 2) {
      long long c = cost_summary(inst, m).cost;
      if (best < 0 || c < best) best = c;
    }
  CHECK(*o.objective_value == best);

  // Forcing a pair in no stable matching yields unsat: (1,2) never occurs.
  bool seen = false;
  for (const Matching& m : s.matchings) seen |= m.partner(0) == 1;
  REQUIRE_FALSE(seen);
  SearchProblem sp2(inst);
  sp2.forced_pairs = {AgentPair(0, 1)};
  CHECK(solve(sp2).status == SolveStatus::unsat);
}

TEST_CASE("uniform rank caps bracket the minimum regret") {
  Instance inst = testutil::appendix_instance();

  SearchProblem atR(inst);
  atR.rank_cap.assign(inst.n(), testutil::kAppendixMinRegret);
  CHECK(solve(atR).status == SolveStatus::optimal);

  SearchProblem belowR(inst);
  belowR.rank_cap.assign(inst.n(), testutil::kAppendixMinRegret - 1);
  CHECK(solve(belowR).status == SolveStatus::unsat);
}

TEST_CASE("blocking-pair minimization needs relaxed stability") {
  Instance t1 = testutil::table1_instance();
  SearchProblem sp(t1);
  sp.relax_stability = true;
  sp.objective = Objective::min_blocking();
  SolveOutcome o = solve(sp);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == testutil::kTable1MinBlocking);
  CHECK(static_cast<int>(blocking_pairs(t1, *o.matching).size()) == 1);
  CHECK(testutil::one_based_pairs(*o.matching) ==
        testutil::table1_almost_stable_matching());

  // On a solvable instance the relaxed optimum is zero blocking pairs.
  Instance app = testutil::appendix_instance();
  SearchProblem sp2(app);
  sp2.relax_stability = true;
  sp2.objective = Objective::min_blocking();
  o = solve(sp2);
  REQUIRE(o.status == SolveStatus::optimal);
  CHECK(*o.objective_value == 0);
  CHECK(blocking_pairs(app, *o.matching).empty());
}

TEST_CASE("malformed problems are rejected up front") {
  Instance inst = testutil::appendix_instance();

  SearchProblem relax_cost(inst);
  relax_cost.relax_stability = true;
  relax_cost.objective = Objective::min_cost();
  CHECK_THROWS_AS(solve(relax_cost), std::invalid_argument);

  SearchProblem strict_blocking(inst);
  strict_blocking.objective = Objective::min_blocking();
  CHECK_THROWS_AS(solve(strict_blocking), std::invalid_argument);

  SearchProblem bad_forced(inst);
  bad_forced.forced_pairs = {AgentPair(0, 0)};
  CHECK_THROWS_AS(solve(bad_forced), std::invalid_argument);

  SearchProblem overlap(inst);
  overlap.forced_pairs = {AgentPair(0, 2), AgentPair(2, 4)};
  CHECK_THROWS_AS(solve(overlap), std::invalid_argument);

  SearchProblem bounds_on_cost(inst);
  bounds_on_cost.objective = Objective::min_cost();
  bounds_on_cost.objective.profile_floor = {1};
  CHECK_THROWS_AS(solve(bounds_on_cost), std::invalid_argument);

  SearchProblem flags_on_feasibility(inst);
  flags_on_feasibility.count_flags.assign(inst.n(), 1);
  CHECK_THROWS_AS(solve(flags_on_feasibility), std::invalid_argument);

  SearchProblem zero_level(inst);
  zero_level.objective = Objective::max_level(0);
  CHECK_THROWS_AS(solve(zero_level), std::invalid_argument);

  // A rank-cap vector shorter than n is legal: missing entries mean
  // uncapped, so a lone trailing-agents-free cap behaves like a full
  // vector padded with zeros.
  SearchProblem short_cap(inst);
  short_cap.rank_cap = {3};
  SearchProblem padded_cap(inst);
  padded_cap.rank_cap.assign(inst.n(), 0);
  padded_cap.rank_cap[0] = 3;
  SolveOutcome short_out = solve(short_cap);
  SolveOutcome padded_out = solve(padded_cap);
  REQUIRE(short_out.status == padded_out.status);
  if (short_out.matching)
    CHECK(testutil::one_based_pairs(*short_out.matching) ==
          testutil::one_based_pairs(*padded_out.matching));

  SearchProblem long_cap(inst);
  long_cap.rank_cap.assign(inst.n() + 1, 0);
  CHECK_THROWS_AS(solve(long_cap), std::invalid_argument);

  SearchProblem cap_conflict(inst);
  cap_conflict.forced_pairs = {AgentPair(0, 2)};
  cap_conflict.rank_cap.assign(inst.n(), 1);
  if (inst.rank(0, 2) > 1 || inst.rank(2, 0) > 1)
    CHECK_THROWS_AS(solve(cap_conflict), std::invalid_argument);
}

TEST_CASE("consistency check distinguishes validation from contradiction") {
  Instance inst = testutil::appendix_instance();

  SearchProblem ok(inst);
  CHECK(check_consistency(ok).empty());

  SearchProblem bad(inst);
  bad.forced_pairs = {AgentPair(0, 0)};
  CHECK_FALSE(check_consistency(bad).empty());

  // A floor no matching can reach: more first choices than agents / 2.
  SearchProblem wild(inst);
  wild.objective = Objective::max_level(1);
  wild.objective.profile_floor = {11};
  auto msgs = check_consistency(wild);
  REQUIRE(msgs.size() == 1);
  CHECK(msgs[0].find("contradiction") != std::string::npos);
}

TEST_CASE("node budget yields budget_exceeded, not a wrong answer") {
  Instance inst = testutil::appendix_instance();
  SearchProblem sp(inst);
  sp.objective = Objective::min_cost();
  sp.node_limit = 1;
  SolveOutcome o = solve(sp);
  CHECK(o.status == SolveStatus::budget_exceeded);
}

TEST_CASE("engine agrees with the oracle across random instances") {
  for (int n : {6, 8}) {
    for (double c : {0.5, 1.0}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Instance inst = generate_random({n, c, seed});
        StableSet s = enumerate_stable(inst);
        const Rank L = std::max(1, inst.max_list_len());

        SearchProblem feas(inst);
        SearchProblem cost(inst);
        cost.objective = Objective::min_cost();
        SearchProblem lvl1(inst);
        lvl1.objective = Objective::max_level(1);
        SearchProblem lvlL(inst);
        lvlL.objective = Objective::min_level(L);

        if (s.matchings.empty()) {
          for (auto* sp : {&feas, &cost, &lvl1, &lvlL})
            CHECK(solve(*sp).status == SolveStatus::unsat);
        } else {
          SolveOutcome o = solve(feas);
          REQUIRE(o.status == SolveStatus::optimal);
          // Canonical tie-break = first matching in enumeration order.
          CHECK(*o.matching == s.matchings[0]);

          o = solve(cost);
          REQUIRE(o.status == SolveStatus::optimal);
          CHECK(*o.objective_value == stable_min_cost(inst, s));
          CHECK(cost_summary(inst, *o.matching).cost == *o.objective_value);

          o = solve(lvl1);
          REQUIRE(o.status == SolveStatus::optimal);
          CHECK(*o.objective_value ==
                stable_extreme_level(inst, s, 1, true));

          o = solve(lvlL);
          REQUIRE(o.status == SolveStatus::optimal);
          CHECK(*o.objective_value ==
                stable_extreme_level(inst, s, L, false));
        }

        // Relaxed blocking minimum against the all-matchings oracle.
        SearchProblem blk(inst);
        blk.relax_stability = true;
        blk.objective = Objective::min_blocking();
        SolveOutcome ob = solve(blk);
        REQUIRE(ob.status == SolveStatus::optimal);
        CHECK(*ob.objective_value ==
              min_blocking_over_all_matchings(inst).blocking);
      }
    }
  }
}

TEST_CASE("tuned and literal value orders reach the same optima") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Instance inst = generate_random({8, 0.7, seed});
    for (auto kind : {Objective::min_cost(), Objective::max_level(1)}) {
      SearchProblem tuned(inst);
      tuned.objective = kind;
      tuned.value_order = SearchProblem::ValueOrder::tuned;
      SearchProblem literal(inst);
      literal.objective = kind;
      literal.value_order = SearchProblem::ValueOrder::literal;
      SolveOutcome a = solve(tuned);
      SolveOutcome b = solve(literal);
      CHECK(a.status == b.status);
      if (a.status == SolveStatus::optimal) {
        CHECK(*a.objective_value == *b.objective_value);
        // Canonical pass makes even the matchings coincide.
        CHECK(*a.matching == *b.matching);
      }
    }
  }
}
