#include "sri/irving.hpp"

#include <deque>
#include <numeric>

namespace sri {

namespace {

// Working table of shrinking preference lists with O(1) mutual deletion.
// Entries live in one flat array (cheap to build in tight sweeps);
// positions are fixed and deletion flips an alive flag, with head/tail
// hints advancing lazily.
class Table {
 public:
  explicit Table(const Instance& inst) : inst_(inst) {
    const int n = inst.n();
    off_.resize(n + 1);
    off_[0] = 0;
    for (AgentId a = 0; a < n; ++a) off_[a + 1] = off_[a] + inst.list_len(a);
    alive_.assign(off_[n], 1);
    count_.resize(n);
    head_.assign(n, 0);
    tail_.resize(n);
    for (AgentId a = 0; a < n; ++a) {
      count_[a] = inst.list_len(a);
      tail_[a] = inst.list_len(a) - 1;
    }
  }

  int count(AgentId a) const { return count_[a]; }

  AgentId first(AgentId a) {
    advance(a);
    return inst_.list(a)[head_[a]];
  }

  AgentId second(AgentId a) {
    advance(a);
    const auto& l = inst_.list(a);
    for (int i = head_[a] + 1;; ++i)
      if (alive_[off_[a] + i]) return l[i];
  }

  AgentId last(AgentId a) {
    while (!alive_[off_[a] + tail_[a]]) --tail_[a];
    return inst_.list(a)[tail_[a]];
  }

  void delete_pair(AgentId a, AgentId b) {
    erase(a, b);
    erase(b, a);
  }

  // Deletes every pair {a, z} with z strictly worse than b on a's list.
  void truncate_below(AgentId a, AgentId b) {
    const auto& l = inst_.list(a);
    for (int i = inst_.rank(a, b); i <= tail_[a]; ++i)
      if (alive_[off_[a] + i]) delete_pair(a, l[i]);
  }

 private:
  void erase(AgentId a, AgentId b) {
    int idx = off_[a] + inst_.rank(a, b) - 1;
    if (alive_[idx]) {
      alive_[idx] = 0;
      --count_[a];
    }
  }

  void advance(AgentId a) {
    while (!alive_[off_[a] + head_[a]]) ++head_[a];
  }

  const Instance& inst_;
  std::vector<int> off_;
  std::vector<char> alive_;
  std::vector<int> count_;
  std::vector<int> head_;
  std::vector<int> tail_;
};

PolySolveResult run_phases(const Instance& inst, Table& table) {
  const int n = inst.n();

  // Proposal phase. holder[y] = agent whose proposal y currently holds.
  std::vector<AgentId> holder(n, -1);
  std::deque<AgentId> free;
  for (AgentId a = 0; a < n; ++a)
    if (table.count(a) > 0) free.push_back(a);

  while (!free.empty()) {
    AgentId x = free.front();
    free.pop_front();
    while (table.count(x) > 0) {
      AgentId y = table.first(x);
      AgentId z = holder[y];
      if (z < 0) {
        holder[y] = x;
        break;
      }
      if (inst.rank(y, x) < inst.rank(y, z)) {
        holder[y] = x;
        table.delete_pair(y, z);
        free.push_back(z);
        break;
      }
      table.delete_pair(x, y);
    }
  }

  // Reduction: each holder truncates below the proposal it holds. This
  // never deletes anyone's current head pair, so no re-proposals arise.
  for (AgentId y = 0; y < n; ++y)
    if (holder[y] >= 0) table.truncate_below(y, holder[y]);

  // Agents emptied by the proposal phase are unmatched in every stable
  // matching; survivors must all stay nonempty from here on.
  std::vector<bool> survivor(n, false);
  for (AgentId a = 0; a < n; ++a) survivor[a] = table.count(a) > 0;

  // Rotation elimination phase.
  std::vector<int> pos_in_walk(n, -1);
  std::vector<AgentId> walk;
  for (;;) {
    AgentId start = -1;
    for (AgentId a = 0; a < n; ++a)
      if (table.count(a) >= 2) {
        start = a;
        break;
      }
    if (start < 0) break;

    // Walk x -> last(second(x)) until a repeat; the cycled suffix is a
    // rotation. Every agent reached has >= 2 live entries, so second() is
    // defined throughout.
    walk.clear();
    AgentId x = start;
    while (pos_in_walk[x] < 0) {
      pos_in_walk[x] = static_cast<int>(walk.size());
      walk.push_back(x);
      x = table.last(table.second(x));
    }
    std::size_t cycle_from = static_cast<std::size_t>(pos_in_walk[x]);

    // Eliminate: y_{i+1} = second(x_i) rejects everyone worse than x_i.
    // Collect the pairs first; truncations change second() as they go.
    std::vector<std::pair<AgentId, AgentId>> steps;
    for (std::size_t i = cycle_from; i < walk.size(); ++i)
      steps.emplace_back(walk[i], table.second(walk[i]));
    for (AgentId a : walk) pos_in_walk[a] = -1;
    for (auto [xi, yi1] : steps) table.truncate_below(yi1, xi);

    // Mutual deletions can empty lists outside the rotation too; any
    // survivor emptying here proves no stable matching exists, and the
    // next walk's invariants need every nonempty list intact.
    for (AgentId a = 0; a < n; ++a)
      if (survivor[a] && table.count(a) == 0) return {};
  }

  PolySolveResult res;
  res.solvable = true;
  res.matching = Matching(n);
  for (AgentId a = 0; a < n; ++a)
    if (survivor[a]) {
      if (table.count(a) == 0) return {};
      res.matched.push_back(a);
      AgentId b = table.first(a);
      if (a < b) res.matching.match(a, b);
    }
  return res;
}

}  // namespace

PolySolveResult find_stable_polynomial(const Instance& inst) {
  Table table(inst);
  return run_phases(inst, table);
}

PolySolveResult find_stable_polynomial(const Instance& inst,
                                       const std::vector<AgentPair>& without) {
  Table table(inst);
  for (const AgentPair& e : without) table.delete_pair(e.lo, e.hi);
  return run_phases(inst, table);
}

}  // namespace sri
