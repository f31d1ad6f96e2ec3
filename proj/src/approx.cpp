#include "sri/approx.hpp"

#include <stdexcept>
#include <string>

#include "sri/criteria.hpp"
#include "sri/engine.hpp"

namespace sri {

bool is_u_shaped(const std::vector<double>& row) {
  const int m = static_cast<int>(row.size());
  int first_inc = m;  // index of the first strict increase
  int last_dec = -1;  // index of the last strict decrease
  for (int i = 0; i + 1 < m; ++i) {
    if (row[i] < row[i + 1] && first_inc == m) first_inc = i;
    if (row[i] > row[i + 1]) last_dec = i;
  }
  return last_dec < first_inc;
}

bool is_u_shaped(const CostFunction& cost) {
  for (const auto& row : cost.rows)
    if (!is_u_shaped(row)) return false;
  return true;
}

TruncatedInstance truncate_at_min_regret(const Instance& inst) {
  CriterionResult mr = solve_criterion(inst, Criterion::min_regret);
  if (mr.status == CriterionStatus::unsat)
    throw UnsolvableError("no stable matching: minimum regret undefined");
  if (mr.status != CriterionStatus::optimal)
    throw std::runtime_error("budget exhausted computing minimum regret");
  const Rank R = static_cast<Rank>(*mr.objective);

  const int n = inst.n();
  std::vector<std::vector<AgentId>> lists(n);
  for (AgentId a = 0; a < n; ++a)
    for (AgentId b : inst.list(a))
      if (inst.rank(a, b) <= R && inst.rank(b, a) <= R)
        lists[a].push_back(b);
  TruncatedInstance t{inst, R, Instance::from_lists(lists)};
  return t;
}

CostFunction build_lc_cost(const TruncatedInstance& t) {
  CostFunction c;
  const int n = t.reduced.n();
  c.rows.resize(n);
  for (AgentId a = 0; a < n; ++a) {
    const auto& lst = t.reduced.list(a);
    c.rows[a].assign(lst.size(), 0.0);
    // Surviving entries keep base rank <= R, so a base-rank-R entry can only
    // sit at the end of the truncated list.
    if (!lst.empty() && t.base.rank(a, lst.back()) == t.regret_bound)
      c.rows[a].back() = 1.0;
  }
  return c;
}

LcResult solve_lc(const Instance& inst) {
  TruncatedInstance t = truncate_at_min_regret(inst);
  CostFunction cost = build_lc_cost(t);

  SearchProblem sp(t.reduced);
  sp.objective = Objective::min_level(1);
  sp.count_flags.assign(t.reduced.n(), 0);
  for (AgentId a = 0; a < t.reduced.n(); ++a)
    if (!cost.rows[a].empty() && cost.rows[a].back() == 1.0)
      sp.count_flags[a] = static_cast<Rank>(cost.rows[a].size());

  SolveOutcome o = solve(sp);
  if (o.status == SolveStatus::unsat)
    throw std::logic_error(
        "truncated instance lost all stable matchings (expected at least "
        "every minimum-regret one)");
  if (o.status != SolveStatus::optimal)
    throw std::runtime_error("budget exhausted in last-choice minimization");
  return {*o.matching, *o.objective_value};
}

bool check_ratio(long long candidate_count, const Instance& inst) {
  const long long opt = solve_lc(inst).rth_count;
  if (opt == 0) return candidate_count == 0;
  return candidate_count <= 2 * opt;
}

namespace {

// Forced first-choice pairs of one agent subset; false = inconsistent
// (an empty list, or an agent pulled toward two different partners).
bool subset_forced_pairs(const Instance& inst,
                         const std::vector<AgentId>& subset,
                         std::vector<AgentPair>& out) {
  out.clear();
  std::vector<std::pair<AgentId, AgentId>> bound;  // (agent, required partner)
  auto bind = [&](AgentId x, AgentId y) {
    for (const auto& [bx, by] : bound)
      if (bx == x) return by == y;
    bound.emplace_back(x, y);
    return true;
  };
  for (AgentId a : subset) {
    if (inst.list_len(a) == 0) return false;
    const AgentId b = inst.list(a)[0];
    if (!bind(a, b) || !bind(b, a)) return false;
    const AgentPair p(a, b);
    bool seen = false;
    for (const AgentPair& q : out) seen = seen || q == p;
    if (!seen) out.push_back(p);
  }
  return true;
}

}  // namespace

std::optional<Matching> fc_xp(const Instance& inst, int k) {
  if (k < 0) throw std::invalid_argument("fc_xp: k must be non-negative");
  const int n = inst.n();
  if (k > n) return std::nullopt;

  auto try_forced = [&](const std::vector<AgentPair>& forced)
      -> std::optional<Matching> {
    SearchProblem sp(inst);
    sp.objective = Objective::feasibility_only();
    sp.forced_pairs = forced;
    SolveOutcome o = solve(sp);
    if (o.status == SolveStatus::optimal) return o.matching;
    return std::nullopt;
  };

  if (k == 0) return try_forced({});

  // An agent whose own first-choice pair is unforceable poisons every
  // superset: forcing more pairs only removes solutions.
  std::vector<char> viable(n, 0);
  std::vector<AgentPair> forced;
  for (AgentId a = 0; a < n; ++a) {
    if (!subset_forced_pairs(inst, {a}, forced)) continue;
    viable[a] = try_forced(forced).has_value();
  }

  // Size-k subsets in lexicographic order over agent indices.
  std::vector<AgentId> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    bool all_viable = true;
    for (AgentId a : idx) all_viable = all_viable && viable[a];
    if (all_viable && subset_forced_pairs(inst, idx, forced)) {
      if (auto m = try_forced(forced)) return m;
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::nullopt;
}

}  // namespace sri
