#include "sri/analysis.hpp"

#include <algorithm>

#include "sri/irving.hpp"

namespace sri {

std::vector<AgentPair> blocking_pairs(const Instance& inst, const Matching& m) {
  std::vector<AgentPair> out;
  const int n = inst.n();
  for (AgentId a = 0; a < n; ++a) {
    const Rank ra =
        m.matched(a) ? inst.rank(a, m.partner(a)) : inst.self_rank(a);
    for (AgentId b : inst.list(a)) {
      if (b <= a) continue;                 // each unordered pair once
      if (inst.rank(a, b) >= ra) continue;  // a does not prefer b
      const Rank rb =
          m.matched(b) ? inst.rank(b, m.partner(b)) : inst.self_rank(b);
      if (inst.rank(b, a) < rb) out.push_back({a, b});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Profile profile(const Instance& inst, const Matching& m, ProfileScope scope) {
  Profile p;
  p.scope = scope;
  p.counts.assign(static_cast<std::size_t>(inst.max_list_len()), 0);
  std::vector<char> in_scope(static_cast<std::size_t>(inst.n()), 1);
  if (scope == ProfileScope::matched_set) {
    auto ms = matched_set(inst);
    if (!ms) {
      throw UnsolvableError(
          "matched-set profile requested for an unsolvable instance");
    }
    std::fill(in_scope.begin(), in_scope.end(), 0);
    for (AgentId a : *ms) in_scope[static_cast<std::size_t>(a)] = 1;
  }
  for (AgentId a = 0; a < inst.n(); ++a) {
    if (!m.matched(a) || !in_scope[static_cast<std::size_t>(a)]) continue;
    const Rank r = inst.rank(a, m.partner(a));
    p.counts[static_cast<std::size_t>(r) - 1] += 1;
  }
  return p;
}

CostSummary cost_summary(const Instance& inst, const Matching& m) {
  CostSummary cs;
  for (AgentId a = 0; a < inst.n(); ++a) {
    if (!m.matched(a)) continue;
    const Rank r = inst.rank(a, m.partner(a));
    cs.cost += r;
    cs.regret = std::max(cs.regret, r);
  }
  cs.blocking = static_cast<int>(blocking_pairs(inst, m).size());
  return cs;
}

std::optional<std::vector<AgentId>> matched_set(const Instance& inst) {
  PolySolveResult res = find_stable_polynomial(inst);
  if (!res.solvable) return std::nullopt;
  return res.matched;
}

int compare_rank_maximal(const Profile& a, const Profile& b) {
  const std::size_t len = std::max(a.counts.size(), b.counts.size());
  for (std::size_t i = 0; i < len; ++i) {
    const int ca = i < a.counts.size() ? a.counts[i] : 0;
    const int cb = i < b.counts.size() ? b.counts[i] : 0;
    if (ca != cb) return ca > cb ? -1 : 1;  // larger count at rank r wins
  }
  return 0;
}

int compare_generous(const Profile& a, const Profile& b) {
  const std::size_t len = std::max(a.counts.size(), b.counts.size());
  for (std::size_t i = len; i-- > 0;) {
    const int ca = i < a.counts.size() ? a.counts[i] : 0;
    const int cb = i < b.counts.size() ? b.counts[i] : 0;
    if (ca != cb) return ca < cb ? -1 : 1;  // smaller count at rank r wins
  }
  return 0;
}

}  // namespace sri
