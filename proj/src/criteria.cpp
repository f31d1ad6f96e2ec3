#include "sri/criteria.hpp"

#include <chrono>
#include <stdexcept>

#include "sri/irving.hpp"

namespace sri {

namespace {

using Clock = std::chrono::steady_clock;

// Shared node/time budget across the solves of one multi-solve driver.
struct Budget {
  std::int64_t node_limit;
  long long time_limit_ms;
  Clock::time_point t0 = Clock::now();
  std::int64_t used_nodes = 0;

  explicit Budget(const SolverConfig& cfg)
      : node_limit(cfg.node_limit), time_limit_ms(cfg.time_limit_ms) {}

  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                                 t0)
        .count();
  }
  bool exhausted() const {
    if (used_nodes >= node_limit) return true;
    return time_limit_ms > 0 && elapsed_ms() >= time_limit_ms;
  }
  void arm(SearchProblem& sp) const {
    sp.node_limit = node_limit - used_nodes;
    if (time_limit_ms > 0) {
      sp.time_limit_ms = time_limit_ms - elapsed_ms();
      if (sp.time_limit_ms < 1) sp.time_limit_ms = 1;
    }
  }
  void absorb(const SolveOutcome& o) { used_nodes += o.stats.nodes; }
};

CriterionStatus map_status(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal:
      return CriterionStatus::optimal;
    case SolveStatus::unsat:
      return CriterionStatus::unsat;
    case SolveStatus::budget_exceeded:
      return CriterionStatus::budget_exceeded;
  }
  return CriterionStatus::unsat;
}

ProfileScope scope_for(Criterion c) {
  return c == Criterion::almost_stable ? ProfileScope::all_matched
                                       : ProfileScope::matched_set;
}

void attach_measures(CriterionResult& r, const Instance& inst) {
  if (r.matching) {
    r.profile = profile(inst, *r.matching, scope_for(r.criterion));
    r.summary = cost_summary(inst, *r.matching);
  }
}

CriterionResult run_single(const Instance& inst, Criterion c,
                           const SolverConfig& cfg) {
  SearchProblem sp(inst);
  switch (c) {
    case Criterion::any_stable:
      sp.objective = Objective::feasibility_only();
      break;
    case Criterion::egalitarian:
      sp.objective = Objective::min_cost();
      break;
    case Criterion::fc_max:
      sp.objective = Objective::max_level(1);
      break;
    case Criterion::almost_stable:
      sp.relax_stability = true;
      sp.objective = Objective::min_blocking();
      break;
    default:
      throw std::logic_error("run_single: not a single-solve criterion");
  }
  sp.node_limit = cfg.node_limit;
  sp.time_limit_ms = cfg.time_limit_ms;
  sp.canonical_tiebreak = cfg.canonical_tiebreak;
  SolveOutcome o = solve(sp);

  CriterionResult r;
  r.criterion = c;
  r.status = map_status(o.status);
  r.stats = o.stats;
  r.objective = o.objective_value;
  r.matching = o.matching;
  attach_measures(r, inst);
  return r;
}

// Shared scaffolding for the two lexicographic drivers and min-regret.
struct Driver {
  const Instance& inst;
  const SolverConfig& cfg;
  Budget bud;
  CriterionResult r;

  Driver(const Instance& i, Criterion c, const SolverConfig& f)
      : inst(i), cfg(f), bud(f) {
    r.criterion = c;
  }

  CriterionResult finish(CriterionStatus st) {
    r.status = st;
    r.stats.millis = bud.elapsed_ms();
    attach_measures(r, inst);
    return r;
  }

  // Runs one engine solve under the remaining budget; accumulates stats.
  SolveOutcome step(SearchProblem& sp) {
    bud.arm(sp);
    SolveOutcome o = solve(sp);
    bud.absorb(o);
    r.stats.nodes += o.stats.nodes;
    r.stats.backtracks += o.stats.backtracks;
    return o;
  }
};

CriterionResult run_rank_maximal(
    const Instance& inst, const SolverConfig& cfg,
    std::vector<std::pair<Rank, long long>>* trace) {
  Driver d(inst, Criterion::rank_maximal, cfg);
  const Rank L = inst.max_list_len();
  if (L == 0) {
    // No acceptable pairs: the empty matching is the unique stable matching.
    d.r.objective = 0;
    d.r.matching = Matching(inst.n());
    return d.finish(CriterionStatus::optimal);
  }
  std::vector<int> committed;  // committed[i] is the floor for rank i+1
  for (Rank lvl = 1; lvl <= L; ++lvl) {
    if (d.bud.exhausted()) return d.finish(CriterionStatus::budget_exceeded);
    SearchProblem sp(inst);
    sp.objective = Objective::max_level(lvl);
    sp.objective.profile_floor = committed;
    sp.canonical_tiebreak = cfg.canonical_tiebreak && lvl == L;
    SolveOutcome o = d.step(sp);
    if (o.status == SolveStatus::unsat)
      return d.finish(CriterionStatus::unsat);
    if (o.status == SolveStatus::budget_exceeded)
      return d.finish(CriterionStatus::budget_exceeded);
    committed.push_back(static_cast<int>(*o.objective_value));
    d.r.matching = o.matching;
    if (lvl == 1) d.r.objective = *o.objective_value;
    if (trace) trace->emplace_back(lvl, *o.objective_value);
  }
  return d.finish(CriterionStatus::optimal);
}

CriterionResult run_generous(const Instance& inst, const SolverConfig& cfg,
                             std::vector<std::pair<Rank, long long>>* trace) {
  Driver d(inst, Criterion::generous, cfg);
  const Rank L = inst.max_list_len();
  if (L == 0) {
    d.r.objective = 0;
    d.r.matching = Matching(inst.n());
    return d.finish(CriterionStatus::optimal);
  }
  std::vector<int> ceilings(L, -1);  // -1 = not yet committed
  for (Rank lvl = L; lvl >= 2; --lvl) {
    if (d.bud.exhausted()) return d.finish(CriterionStatus::budget_exceeded);
    SearchProblem sp(inst);
    sp.objective = Objective::min_level(lvl);
    sp.objective.profile_ceiling = ceilings;
    sp.canonical_tiebreak = cfg.canonical_tiebreak && lvl == 2;
    SolveOutcome o = d.step(sp);
    if (o.status == SolveStatus::unsat)
      return d.finish(CriterionStatus::unsat);
    if (o.status == SolveStatus::budget_exceeded)
      return d.finish(CriterionStatus::budget_exceeded);
    ceilings[lvl - 1] = static_cast<int>(*o.objective_value);
    d.r.matching = o.matching;
    if (lvl == L) d.r.objective = *o.objective_value;
    if (trace) trace->emplace_back(lvl, *o.objective_value);
  }
  if (L == 1) {
    // Only one level exists and its count equals the invariant matched-set
    // size, so every stable matching is generous.
    SearchProblem sp(inst);
    sp.objective = Objective::feasibility_only();
    sp.canonical_tiebreak = cfg.canonical_tiebreak;
    SolveOutcome o = d.step(sp);
    if (o.status != SolveStatus::optimal) return d.finish(map_status(o.status));
    d.r.matching = o.matching;
  }
  CriterionResult out = d.finish(CriterionStatus::optimal);
  if (L == 1 && out.profile) out.objective = out.profile->level(1);
  if (trace && out.profile) trace->emplace_back(1, out.profile->level(1));
  return out;
}

CriterionResult run_min_regret(const Instance& inst, const SolverConfig& cfg) {
  Driver d(inst, Criterion::min_regret, cfg);
  if (!find_stable_polynomial(inst).solvable)
    return d.finish(CriterionStatus::unsat);
  if (inst.pairs().empty()) {
    // Everyone has an empty list; the empty matching has regret 0.
    d.r.objective = 0;
    d.r.matching = Matching(inst.n());
    return d.finish(CriterionStatus::optimal);
  }
  const Rank L = inst.max_list_len();
  for (Rank cap = 1; cap <= L; ++cap) {
    if (d.bud.exhausted()) return d.finish(CriterionStatus::budget_exceeded);
    SearchProblem sp(inst);
    sp.objective = Objective::feasibility_only();
    sp.rank_cap.assign(inst.n(), cap);
    sp.canonical_tiebreak = cfg.canonical_tiebreak;
    SolveOutcome o = d.step(sp);
    if (o.status == SolveStatus::budget_exceeded)
      return d.finish(CriterionStatus::budget_exceeded);
    if (o.status == SolveStatus::optimal) {
      // cap-1 was infeasible, so every stable matching has regret >= cap,
      // and this one has regret <= cap: exactly cap.
      d.r.objective = cap;
      d.r.matching = o.matching;
      return d.finish(CriterionStatus::optimal);
    }
  }
  // Unreachable on a solvable instance: cap L removes nothing.
  return d.finish(CriterionStatus::unsat);
}

}  // namespace

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::any_stable:
      return "any-stable";
    case Criterion::egalitarian:
      return "egalitarian";
    case Criterion::fc_max:
      return "fc-max";
    case Criterion::rank_maximal:
      return "rank-maximal";
    case Criterion::generous:
      return "generous";
    case Criterion::min_regret:
      return "min-regret";
    case Criterion::almost_stable:
      return "almost-stable";
  }
  return "?";
}

std::optional<Criterion> parse_criterion(const std::string& name) {
  for (Criterion c : all_criteria())
    if (criterion_name(c) == name) return c;
  return std::nullopt;
}

const std::vector<Criterion>& all_criteria() {
  static const std::vector<Criterion> k = {
      Criterion::any_stable,  Criterion::egalitarian, Criterion::fc_max,
      Criterion::rank_maximal, Criterion::generous,   Criterion::min_regret,
      Criterion::almost_stable,
  };
  return k;
}

std::string status_label(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::optimal:
      return "optimal";
    case CriterionStatus::unsat:
      return "unsat";
    case CriterionStatus::budget_exceeded:
      return "timeout";
  }
  return "?";
}

CriterionResult solve_criterion(const Instance& inst, Criterion c,
                                const SolverConfig& cfg) {
  switch (c) {
    case Criterion::any_stable:
    case Criterion::egalitarian:
    case Criterion::fc_max:
    case Criterion::almost_stable:
      return run_single(inst, c, cfg);
    case Criterion::rank_maximal:
      return run_rank_maximal(inst, cfg, nullptr);
    case Criterion::generous:
      return run_generous(inst, cfg, nullptr);
    case Criterion::min_regret:
      return run_min_regret(inst, cfg);
  }
  throw std::logic_error("solve_criterion: unknown criterion");
}

std::vector<std::pair<Rank, long long>> lex_trace(const Instance& inst,
                                                  Criterion c,
                                                  const SolverConfig& cfg) {
  std::vector<std::pair<Rank, long long>> tr;
  CriterionResult r;
  if (c == Criterion::rank_maximal) {
    r = run_rank_maximal(inst, cfg, &tr);
  } else if (c == Criterion::generous) {
    r = run_generous(inst, cfg, &tr);
  } else {
    throw std::invalid_argument(
        "lex_trace is defined for rank-maximal and generous only");
  }
  if (r.status == CriterionStatus::unsat)
    throw UnsolvableError("no stable matching: lexicographic trace undefined");
  if (r.status == CriterionStatus::budget_exceeded)
    throw std::runtime_error("search budget exhausted during lex trace");
  return tr;
}

}  // namespace sri
