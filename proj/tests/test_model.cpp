// Data model: instance validation, text round-trips, matchings, and the
// random instance generator.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sri/model.hpp"
#include "test_util.hpp"

using namespace sri;

TEST_CASE("from_lists validates and indexes ranks") {
  // 0-based lists: 0 and 1 mutually acceptable, 2 isolated.
  Instance inst = Instance::from_lists({{1}, {0}, {}});
  CHECK(inst.n() == 3);
  CHECK(inst.rank(0, 1) == 1);
  CHECK(inst.rank(1, 0) == 1);
  CHECK(inst.rank(0, 2) == 0);
  CHECK(inst.acceptable(0, 1));
  CHECK_FALSE(inst.acceptable(2, 0));
  CHECK(inst.self_rank(0) == 2);
  CHECK(inst.self_rank(2) == 1);
  CHECK(inst.max_list_len() == 1);
  CHECK(inst.pairs() == std::vector<AgentPair>{AgentPair(0, 1)});
}

TEST_CASE("from_lists rejects malformed lists") {
  CHECK_THROWS_AS(Instance::from_lists({{0}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance::from_lists({{1, 1}, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance::from_lists({{5}, {0}}), std::invalid_argument);
  // One-sided acceptability: 0 lists 1, but 1 does not list 0.
  CHECK_THROWS_AS(Instance::from_lists({{1}, {}}), std::invalid_argument);
}

TEST_CASE("from_lists symmetrize drops one-sided entries") {
  Instance inst = Instance::from_lists({{1, 2}, {0}, {}}, true);
  CHECK(inst.acceptable(0, 1));
  CHECK_FALSE(inst.acceptable(0, 2));
  CHECK(inst.list(0) == std::vector<AgentId>{1});
}

TEST_CASE("instance text round-trip") {
  const std::string text = "3\n2 3\n1\n1\n";
  Instance inst = parse_instance(text);
  CHECK(inst.n() == 3);
  CHECK(inst.rank(0, 1) == 1);
  CHECK(inst.rank(0, 2) == 2);
  CHECK(serialize_instance(inst) == text);
  CHECK(parse_instance(serialize_instance(inst)) == inst);
}

TEST_CASE("instance parsing skips comments and reports line numbers") {
  Instance inst = parse_instance("# header\n2  # two agents\n2\n1\n");
  CHECK(inst.n() == 2);
  CHECK(inst.acceptable(0, 1));

  CHECK_THROWS_AS(parse_instance(""), ParseError);
  CHECK_THROWS_AS(parse_instance("2\n2\n"), ParseError);       // missing list
  CHECK_THROWS_AS(parse_instance("2\n2\n1\n1 2\n"), ParseError);  // extra line
  CHECK_THROWS_AS(parse_instance("x\n"), ParseError);
  try {
    parse_instance("2\n2\nbogus\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  // Asymmetric lists are rejected unless symmetrize is requested.
  CHECK_THROWS_AS(parse_instance("2\n2\n\n"), ParseError);
  Instance sym = parse_instance("2\n2\n\n", true);
  CHECK_FALSE(sym.acceptable(0, 1));
}

TEST_CASE("fixture instances parse to the expected shapes") {
  Instance app = testutil::appendix_instance();
  CHECK(app.n() == 10);
  CHECK(app.max_list_len() == 9);
  for (AgentId a = 0; a < app.n(); ++a) CHECK(app.list_len(a) == 9);

  Instance t1 = testutil::table1_instance();
  CHECK(t1.n() == 4);
  CHECK(t1.max_list_len() == 3);
  // First agent prefers 2, then 3, then 4.
  CHECK(t1.rank(0, 1) == 1);
  CHECK(t1.rank(0, 2) == 2);
  CHECK(t1.rank(0, 3) == 3);
}

TEST_CASE("matching basics and canonical pair order") {
  Matching m(4);
  CHECK(m.pair_count() == 0);
  m.match(2, 0);
  m.match(1, 3);
  CHECK(m.matched(0));
  CHECK(m.partner(0) == 2);
  CHECK(m.pair_count() == 2);
  CHECK(m.pairs() ==
        std::vector<AgentPair>{AgentPair(0, 2), AgentPair(1, 3)});
  m.unmatch(2);
  CHECK_FALSE(m.matched(0));
  CHECK_FALSE(m.matched(2));
  CHECK(m.pair_count() == 1);
}

TEST_CASE("matching text round-trip and validation") {
  Instance inst = parse_instance("4\n2 3 4\n1\n1\n1\n");
  Matching m = parse_matching("1 2\n", inst);
  CHECK(m.partner(0) == 1);
  CHECK(serialize_matching(m) == "1 2\n");
  CHECK(parse_matching(serialize_matching(m), inst) == m);

  CHECK_THROWS_AS(parse_matching("1\n", inst), ParseError);
  CHECK_THROWS_AS(parse_matching("1 9\n", inst), ParseError);
  CHECK_THROWS_AS(parse_matching("2 2\n", inst), ParseError);
  CHECK_THROWS_AS(parse_matching("2 3\n", inst), ParseError);  // unacceptable
  CHECK_THROWS_AS(parse_matching("1 2\n1 3\n", inst), ParseError);  // reuse
  CHECK(parse_matching("", inst).pair_count() == 0);
}

TEST_CASE("generator is deterministic per spec and rejects bad parameters") {
  RandomSpec spec{8, 0.5, 42};
  Instance a = generate_random(spec);
  Instance b = generate_random(spec);
  CHECK(a == b);
  CHECK(serialize_instance(a) == serialize_instance(b));

  Instance c = generate_random({8, 0.5, 43});
  CHECK_FALSE(a == c);

  CHECK_THROWS_AS(generate_random({0, 0.5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_random({4, 1.5, 1}), std::invalid_argument);
}

TEST_CASE("generator completeness endpoints") {
  Instance full = generate_random({9, 1.0, 7});
  for (AgentId a = 0; a < 9; ++a) CHECK(full.list_len(a) == 8);

  Instance empty = generate_random({9, 0.0, 7});
  for (AgentId a = 0; a < 9; ++a) CHECK(empty.list_len(a) == 0);
}

TEST_CASE("generator acceptance rate tracks completeness") {
  // 60 agents -> 1770 unordered pairs; with p = 0.4 the accepted fraction
  // concentrates tightly (sd ~ 0.012), so a +-0.08 window is generous.
  const int n = 60;
  Instance inst = generate_random({n, 0.4, 123});
  double frac =
      static_cast<double>(inst.pairs().size()) / (n * (n - 1) / 2);
  CHECK(frac > 0.32);
  CHECK(frac < 0.48);
}

TEST_CASE("generator lists are strict orders over accepted partners") {
  Instance inst = generate_random({12, 0.6, 5});
  for (AgentId a = 0; a < inst.n(); ++a) {
    std::set<AgentId> seen;
    for (AgentId b : inst.list(a)) {
      CHECK(b != a);
      CHECK(seen.insert(b).second);
      CHECK(inst.acceptable(b, a));  // mutuality
    }
  }
}
