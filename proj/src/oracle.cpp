#include "sri/oracle.hpp"

#include <algorithm>
#include <limits>

#include "sri/irving.hpp"

namespace sri {

namespace {

constexpr AgentId kUndecided = -2;
constexpr AgentId kUnmatched = -1;

// Shared backtracking skeleton: decide agents in ascending index order; the
// smallest undecided agent is either matched to an undecided acceptable
// partner (necessarily of larger index) or left permanently unmatched.
// Every unordered pair is examined exactly once — when its later-decided
// side is decided — so "blocking among decided agents" is exact at leaves.
struct Enumerator {
  const Instance& inst;
  std::int64_t budget;
  std::int64_t nodes = 0;

  std::vector<AgentId> state;  // kUndecided, kUnmatched, or partner id

  explicit Enumerator(const Instance& i, std::int64_t b)
      : inst(i), budget(b), state(static_cast<std::size_t>(i.n()), kUndecided) {}

  void tick() {
    if (++nodes > budget) {
      throw OracleBudgetError("oracle node budget exceeded (" +
                              std::to_string(budget) + " extensions)");
    }
  }

  Rank outcome_rank(AgentId a) const {
    const AgentId p = state[static_cast<std::size_t>(a)];
    return p >= 0 ? inst.rank(a, p) : inst.self_rank(a);
  }

  // Blocking pairs {a, x} with x already decided, created by deciding a.
  // Both sides' outcomes are final, so each such pair blocks every
  // completion of the current partial assignment.
  int new_decided_blocks(AgentId a) const {
    int cnt = 0;
    const Rank ra = outcome_rank(a);
    for (AgentId x : inst.list(a)) {
      if (state[static_cast<std::size_t>(x)] == kUndecided) continue;
      if (state[static_cast<std::size_t>(a)] == x) continue;  // matched pair
      if (inst.rank(a, x) < ra && inst.rank(x, a) < outcome_rank(x)) ++cnt;
    }
    return cnt;
  }

  Matching current_matching() const {
    Matching m(inst.n());
    for (AgentId a = 0; a < inst.n(); ++a) {
      const AgentId p = state[static_cast<std::size_t>(a)];
      if (p > a) m.match(a, p);
    }
    return m;
  }

  AgentId first_undecided(AgentId from) const {
    for (AgentId a = from; a < inst.n(); ++a) {
      if (state[static_cast<std::size_t>(a)] == kUndecided) return a;
    }
    return -1;
  }
};

struct StableEnumerator : Enumerator {
  using Enumerator::Enumerator;
  std::vector<Matching> found;

  void search(AgentId from) {
    const AgentId a = first_undecided(from);
    if (a < 0) {
      found.push_back(current_matching());
      return;
    }
    auto& sa = state[static_cast<std::size_t>(a)];
    // Partners in preference order; only larger-index agents can still be
    // undecided here.
    for (AgentId b : inst.list(a)) {
      auto& sb = state[static_cast<std::size_t>(b)];
      if (sb != kUndecided) continue;
      tick();
      sa = b;
      sb = a;
      if (new_decided_blocks(a) == 0 && new_decided_blocks(b) == 0) {
        search(a + 1);
      }
      sa = kUndecided;
      sb = kUndecided;
    }
    tick();
    sa = kUnmatched;
    if (new_decided_blocks(a) == 0) search(a + 1);
    sa = kUndecided;
  }
};

struct MinBlockingEnumerator : Enumerator {
  using Enumerator::Enumerator;
  int best = std::numeric_limits<int>::max();
  Matching best_matching{0};

  void search(AgentId from, int blocks) {
    if (blocks >= best) return;  // decided blocks persist in any completion
    const AgentId a = first_undecided(from);
    if (a < 0) {
      best = blocks;
      best_matching = current_matching();
      return;
    }
    auto& sa = state[static_cast<std::size_t>(a)];
    // Ascending partner index, then unmatched: deterministic witness.
    std::vector<AgentId> partners(inst.list(a));
    std::sort(partners.begin(), partners.end());
    for (AgentId b : partners) {
      auto& sb = state[static_cast<std::size_t>(b)];
      if (sb != kUndecided) continue;
      tick();
      sa = b;
      sb = a;
      search(a + 1, blocks + new_decided_blocks(a) + new_decided_blocks(b));
      sa = kUndecided;
      sb = kUndecided;
    }
    tick();
    sa = kUnmatched;
    search(a + 1, blocks + new_decided_blocks(a));
    sa = kUndecided;
  }
};

}  // namespace

StableSet enumerate_stable(const Instance& inst, std::int64_t node_budget) {
  StableEnumerator e(inst, node_budget);
  e.search(0);
  std::sort(e.found.begin(), e.found.end());
  e.found.erase(std::unique(e.found.begin(), e.found.end()), e.found.end());
  return StableSet{std::move(e.found)};
}

MinBlockingResult min_blocking_over_all_matchings(const Instance& inst,
                                                  std::int64_t node_budget) {
  MinBlockingEnumerator e(inst, node_budget);
  e.search(0, 0);
  return MinBlockingResult{std::move(e.best_matching), e.best};
}

bool exists_stable(const Instance& inst) {
  return find_stable_polynomial(inst).solvable;
}

}  // namespace sri
