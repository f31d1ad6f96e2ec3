// Approximation layer: U-shape validation, min-regret truncation, the
// last-choice cost construction, the rank-R-count minimizer with its
// 2-approximation contract, and the first-choice subset search.

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "doctest.h"
#include "sri/analysis.hpp"
#include "sri/approx.hpp"
#include "sri/criteria.hpp"
#include "sri/model.hpp"
#include "sri/oracle.hpp"
#include "test_util.hpp"

using namespace sri;

namespace {

// Minimum over stable matchings with regret exactly R of the number of
// agents matched at rank R; also reports that regret for cross-checking.
long long oracle_min_rth(const Instance& inst, Rank R) {
  StableSet s = enumerate_stable(inst);
  long long best = std::numeric_limits<long long>::max();
  for (const Matching& m : s.matchings) {
    CostSummary cs = cost_summary(inst, m);
    if (cs.regret != R) continue;
    long long cnt = 0;
    for (AgentId a = 0; a < inst.n(); ++a)
      if (m.matched(a) && inst.rank(a, m.partner(a)) == R) ++cnt;
    best = std::min(best, cnt);
  }
  return best;
}

}  // namespace

TEST_CASE("U-shape predicate") {
  CHECK(is_u_shaped(std::vector<double>{1, 0, 1}));
  CHECK_FALSE(is_u_shaped(std::vector<double>{0, 1, 0}));
  CHECK(is_u_shaped(std::vector<double>{}));
  CHECK(is_u_shaped(std::vector<double>{5}));
  CHECK(is_u_shaped(std::vector<double>{3, 2, 1}));
  CHECK(is_u_shaped(std::vector<double>{1, 2, 3}));
  CHECK(is_u_shaped(std::vector<double>{2, 2, 2}));
  CHECK(is_u_shaped(std::vector<double>{3, 1, 1, 4}));
  CHECK_FALSE(is_u_shaped(std::vector<double>{1, 2, 1}));
  CHECK_FALSE(is_u_shaped(std::vector<double>{0, 0, 1, 0}));

  CostFunction f;
  f.rows = {{1, 0, 1}, {2, 2}};
  CHECK(is_u_shaped(f));
  f.rows.push_back({0, 1, 0});
  CHECK_FALSE(is_u_shaped(f));
}

TEST_CASE("truncation keeps exactly the pairs within the regret bound") {
  Instance inst = testutil::appendix_instance();
  TruncatedInstance t = truncate_at_min_regret(inst);
  CHECK(t.regret_bound == testutil::kAppendixMinRegret);
  CHECK(t.base == inst);
  CHECK(t.reduced.n() == inst.n());

  for (const AgentPair& p : inst.pairs()) {
    bool keep = inst.rank(p.lo, p.hi) <= t.regret_bound &&
                inst.rank(p.hi, p.lo) <= t.regret_bound;
    CHECK(t.reduced.acceptable(p.lo, p.hi) == keep);
  }
  // Relative order within surviving lists is preserved.
  for (AgentId a = 0; a < inst.n(); ++a) {
    std::vector<AgentId> expect;
    for (AgentId b : inst.list(a))
      if (t.reduced.acceptable(a, b)) expect.push_back(b);
    CHECK(t.reduced.list(a) == expect);
  }
}

TEST_CASE("truncation requires solvability") {
  CHECK_THROWS_AS(truncate_at_min_regret(testutil::table1_instance()),
                  UnsolvableError);
}

TEST_CASE("truncated stable set = min-regret stable matchings of the base") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Instance inst = generate_random({9, 0.7, seed});
    if (!exists_stable(inst)) continue;
    TruncatedInstance t = truncate_at_min_regret(inst);

    std::vector<Matching> want;
    for (const Matching& m : enumerate_stable(inst).matchings)
      if (cost_summary(inst, m).regret <= t.regret_bound) want.push_back(m);
    CHECK(enumerate_stable(t.reduced).matchings == want);
  }
}

TEST_CASE("last-choice cost rows: zeros plus at most one trailing unit") {
  Instance inst = testutil::appendix_instance();
  TruncatedInstance t = truncate_at_min_regret(inst);
  CostFunction f = build_lc_cost(t);
  CHECK(is_u_shaped(f));
  REQUIRE(static_cast<int>(f.rows.size()) == t.reduced.n());

  for (AgentId a = 0; a < t.reduced.n(); ++a) {
    const auto& row = f.rows[a];
    const auto& lst = t.reduced.list(a);
    REQUIRE(row.size() == lst.size());
    for (std::size_t p = 0; p + 1 < row.size(); ++p) CHECK(row[p] == 0.0);
    if (!row.empty()) {
      bool unit = t.base.rank(a, lst.back()) == t.regret_bound;
      CHECK(row.back() == (unit ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("rank-R-count minimizer on the appendix instance") {
  Instance inst = testutil::appendix_instance();
  LcResult r = solve_lc(inst);
  CHECK(r.rth_count == 2);
  CHECK(blocking_pairs(inst, r.matching).empty());
  CostSummary cs = cost_summary(inst, r.matching);
  CHECK(cs.regret == testutil::kAppendixMinRegret);
  CHECK(check_ratio(r.rth_count, inst));
}

TEST_CASE("rank-R-count minimizer agrees with the oracle scan") {
  int exercised = 0;
  for (int n : {8, 10, 12}) {
    for (double comp : {0.6, 0.9}) {
      for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Instance inst = generate_random({n, comp, seed});
        if (!exists_stable(inst)) {
          CHECK_THROWS_AS(solve_lc(inst), UnsolvableError);
          continue;
        }
        LcResult r = solve_lc(inst);
        // Stable in the full instance, not merely the truncated one.
        CHECK(blocking_pairs(inst, r.matching).empty());

        CriterionResult mr = solve_criterion(inst, Criterion::min_regret);
        REQUIRE(mr.status == CriterionStatus::optimal);
        const Rank R = static_cast<Rank>(*mr.objective);
        CHECK(cost_summary(inst, r.matching).regret == R);

        long long direct = 0;
        for (AgentId a = 0; a < inst.n(); ++a)
          if (r.matching.matched(a) &&
              inst.rank(a, r.matching.partner(a)) == R)
            ++direct;
        CHECK(r.rth_count == direct);
        CHECK(r.rth_count == oracle_min_rth(inst, R));
        CHECK(check_ratio(r.rth_count, inst));
        ++exercised;
      }
    }
  }
  CHECK(exercised > 10);
}

TEST_CASE("ratio check boundary values") {
  Instance inst = testutil::appendix_instance();  // optimum 2
  CHECK(check_ratio(2, inst));
  CHECK(check_ratio(3, inst));
  CHECK(check_ratio(4, inst));
  CHECK_FALSE(check_ratio(5, inst));

  // Optimum 0 tolerates only a zero candidate.
  Instance empty = Instance::from_lists({{}, {}});
  CHECK(check_ratio(0, empty));
  CHECK_FALSE(check_ratio(1, empty));
}

TEST_CASE("first-choice subset search on the worked instances") {
  Instance inst = testutil::appendix_instance();

  auto m0 = fc_xp(inst, 0);
  REQUIRE(m0.has_value());
  CHECK(blocking_pairs(inst, *m0).empty());

  auto m2 = fc_xp(inst, 2);
  REQUIRE(m2.has_value());
  CHECK(blocking_pairs(inst, *m2).empty());
  CHECK(profile(inst, *m2, ProfileScope::matched_set).level(1) >= 2);

  CHECK_FALSE(fc_xp(inst, 3).has_value());
  CHECK_FALSE(fc_xp(inst, 11).has_value());  // k beyond n
  CHECK_THROWS_AS(fc_xp(inst, -1), std::invalid_argument);

  CHECK_FALSE(fc_xp(testutil::table1_instance(), 0).has_value());
}

TEST_CASE("first-choice subset search matches fc-max across instances") {
  for (int n : {6, 8, 10}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      Instance inst = generate_random({n, 0.7, seed});
      CriterionResult fc = solve_criterion(inst, Criterion::fc_max);
      long long opt =
          fc.status == CriterionStatus::optimal ? *fc.objective : -1;
      for (int k = 0; k <= static_cast<int>(opt) + 1 && k <= n; ++k) {
        auto m = fc_xp(inst, k);
        CHECK(m.has_value() == (opt >= k));
        if (m.has_value()) {
          CHECK(blocking_pairs(inst, *m).empty());
          CHECK(profile(inst, *m, ProfileScope::matched_set).level(1) >= k);
        }
      }
    }
  }
}
