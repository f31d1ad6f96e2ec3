// Diagnostics: blocking pairs, profiles under both scopes, cost summaries,
// the invariant matched set, and the two profile orders.

#include <vector>

#include "doctest.h"
#include "sri/analysis.hpp"
#include "sri/model.hpp"
#include "test_util.hpp"

using namespace sri;
using testutil::make_matching;

namespace {

Profile make_profile(std::vector<int> counts,
                     ProfileScope scope = ProfileScope::matched_set) {
  Profile p;
  p.counts = std::move(counts);
  p.scope = scope;
  return p;
}

}  // namespace

TEST_CASE("blocking pairs on a hand-checked 4-agent instance") {
  // 1: 2 3 4 / 2: 1 3 4 / 3: 1 2 4 / 4: 1 2 3  (complete, harmonious)
  Instance inst = parse_instance("4\n2 3 4\n1 3 4\n1 2 4\n1 2 3\n");

  // (1,2)(3,4) is stable: everyone matched, 1 and 2 have their favorites.
  CHECK(blocking_pairs(inst, make_matching(4, {{1, 2}, {3, 4}})).empty());

  // (1,3)(2,4): 1 prefers 2 to 3 and 2 prefers 1 to 4 -> {1,2} blocks.
  auto bp = blocking_pairs(inst, make_matching(4, {{1, 3}, {2, 4}}));
  CHECK(bp == std::vector<AgentPair>{AgentPair(0, 1)});

  // Empty matching: every acceptable pair blocks, sorted ascending.
  auto all = blocking_pairs(inst, Matching(4));
  CHECK(all.size() == 6);
  CHECK(all == inst.pairs());
}

TEST_CASE("unmatched agents block with anyone acceptable") {
  Instance inst = parse_instance("3\n2\n1 3\n2\n");
  // 2 matched to 3; 1 unmatched and 2 prefers 1 -> {1,2} blocks.
  auto bp = blocking_pairs(inst, make_matching(3, {{2, 3}}));
  CHECK(bp == std::vector<AgentPair>{AgentPair(0, 1)});
  // 1 matched to 2; 3 unmatched, but 2 got its first choice -> stable.
  CHECK(blocking_pairs(inst, make_matching(3, {{1, 2}})).empty());
}

TEST_CASE("profile counts matched agents by rank") {
  Instance inst = parse_instance("4\n2 3 4\n1 3 4\n1 2 4\n1 2 3\n");
  Matching m = make_matching(4, {{1, 2}, {3, 4}});
  // 1 and 2 at rank 1; 3 and 4 each have the other as their third choice.
  Profile p = profile(inst, m, ProfileScope::all_matched);
  CHECK(p.counts == std::vector<int>{2, 0, 2});
  CHECK(p.scope == ProfileScope::all_matched);
  CHECK(p.level(1) == 2);
  CHECK(p.level(7) == 0);  // out of range reads as zero

  // The instance is solvable and m matches everyone, so the invariant-set
  // restriction changes nothing.
  Profile q = profile(inst, m, ProfileScope::matched_set);
  CHECK(q.counts == p.counts);
  CHECK(q.scope == ProfileScope::matched_set);
}

TEST_CASE("matched-set scope requires solvability") {
  Instance t1 = testutil::table1_instance();
  Matching m = make_matching(4, {{1, 2}, {3, 4}});
  CHECK_THROWS_AS(profile(t1, m, ProfileScope::matched_set), UnsolvableError);
  // all_matched still works and is what unstable-output reporting uses.
  Profile p = profile(t1, m, ProfileScope::all_matched);
  CHECK(p.counts == std::vector<int>{1, 1, 2});
}

TEST_CASE("matched-set scope ignores agents outside the invariant set") {
  // 1-2 mutual first choices; 3 acceptable to both but always unmatched.
  Instance inst = parse_instance("3\n2 3\n1 3\n1 2\n");
  Matching stable = make_matching(3, {{1, 2}});
  Profile p = profile(inst, stable, ProfileScope::matched_set);
  CHECK(p.counts == std::vector<int>{2, 0});

  // An unstable matching that matches agents outside the set: restriction
  // counts only invariant-set members (agents 1 and 2).
  Matching odd = make_matching(3, {{1, 3}});
  Profile q = profile(inst, odd, ProfileScope::matched_set);
  CHECK(q.counts == std::vector<int>{0, 1});
  Profile r = profile(inst, odd, ProfileScope::all_matched);
  CHECK(r.counts == std::vector<int>{1, 1});
}

TEST_CASE("cost summary totals both sides") {
  Instance inst = parse_instance("4\n2 3 4\n1 3 4\n1 2 4\n1 2 3\n");
  CostSummary s = cost_summary(inst, make_matching(4, {{1, 2}, {3, 4}}));
  CHECK(s.cost == 1 + 1 + 3 + 3);
  CHECK(s.regret == 3);
  CHECK(s.blocking == 0);

  CostSummary empty = cost_summary(inst, Matching(4));
  CHECK(empty.cost == 0);
  CHECK(empty.regret == 0);
  CHECK(empty.blocking == 6);
}

TEST_CASE("table1 almost-stable witness measures") {
  Instance t1 = testutil::table1_instance();
  Matching m = make_matching(4, testutil::table1_almost_stable_matching());
  CostSummary s = cost_summary(t1, m);
  CHECK(s.blocking == testutil::kTable1MinBlocking);
  CHECK(s.cost == 9);
  CHECK(s.regret == 3);
}

TEST_CASE("matched set of the worked instances") {
  // Complete solvable instance with even n: everyone is always matched.
  auto app = matched_set(testutil::appendix_instance());
  REQUIRE(app.has_value());
  CHECK(app->size() == 10);

  CHECK_FALSE(matched_set(testutil::table1_instance()).has_value());

  // 3 is never matched in the only stable matching.
  auto partial = matched_set(parse_instance("3\n2 3\n1 3\n1 2\n"));
  REQUIRE(partial.has_value());
  CHECK(*partial == std::vector<AgentId>{0, 1});
}

TEST_CASE("profile orders") {
  Profile a = make_profile({2, 1, 1});
  Profile b = make_profile({2, 2, 0});
  // rank-maximal: lexicographically greater is better -> b wins.
  CHECK(compare_rank_maximal(b, a) < 0);
  CHECK(compare_rank_maximal(a, b) > 0);
  CHECK(compare_rank_maximal(a, a) == 0);

  // generous: read from the worst rank down, smaller is better.
  Profile c = make_profile({1, 2, 1});
  CHECK(compare_generous(b, c) < 0);  // level-3 count 0 beats 1
  CHECK(compare_generous(c, b) > 0);
  CHECK(compare_generous(b, a) < 0);  // level-3 count 0 beats 1 again
  // Ties propagate downward: {2,1,1} vs {1,2,1} tie at level 3, then
  // level 2 decides (1 < 2).
  CHECK(compare_generous(a, c) < 0);
  CHECK(compare_generous(c, c) == 0);
}
