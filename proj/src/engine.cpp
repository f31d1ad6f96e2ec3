#include "sri/engine.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <stdexcept>

#include "sri/analysis.hpp"
#include "sri/irving.hpp"

namespace sri {

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetHit {};
struct SearchDone {};

struct RunResult {
  bool completed = false;  // search exhausted: result is a proof
  bool found = false;
  long long value = 0;
  Matching matching{0};
};

bool is_profile_kind(ObjectiveKind k) {
  return k == ObjectiveKind::maximize_profile_level ||
         k == ObjectiveKind::minimize_profile_level;
}

// One branch-and-bound pass over the problem. Variables are per-agent list
// positions 1..len plus self (len+1, unmatched), stored in one flat alive
// array with a removal trail for backtracking.
//
// Propagation: pairing channel (removal + assignment rules), the no-blocking
// implications via per-agent watermarks (strict mode), committed per-rank
// floor/ceiling counters, and in relax mode an exactly-once definite-blocking
// counter used as the minimize_blocking lower bound.
class Engine {
 public:
  enum class Phase { optimize, canonical };

  Engine(const Instance& inst, const SearchProblem& prob,
         const std::vector<char>* astar, Phase phase, long long pin,
         std::int64_t node_limit, std::optional<Clock::time_point> deadline)
      : inst_(inst),
        prob_(prob),
        phase_(phase),
        pin_(pin),
        node_limit_(node_limit),
        deadline_(deadline),
        n_(inst.n()),
        L_(inst.max_list_len()),
        strict_(!prob.relax_stability),
        kind_(prob.objective.kind) {
    init_domains();
    root_ok_ = install_root(astar);
  }

  bool root_ok() const { return root_ok_; }
  std::int64_t nodes() const { return nodes_; }
  std::int64_t backtracks() const { return backtracks_; }

  RunResult run() {
    RunResult r;
    if (!root_ok_) {
      r.completed = true;
      return r;
    }
    try {
      dfs();
      r.completed = true;
    } catch (const SearchDone&) {
      r.completed = true;
    } catch (const BudgetHit&) {
      r.completed = false;
    }
    r.found = has_incumbent_;
    r.value = best_value_;
    r.matching = best_matching_;
    return r;
  }

 private:
  // ----- state layout -----

  bool alive_at(AgentId a, Rank p) const { return alive_[base_[a] + p - 1]; }

  void init_domains() {
    base_.resize(n_ + 1);
    len_.resize(n_);
    base_[0] = 0;
    for (AgentId a = 0; a < n_; ++a) {
      len_[a] = static_cast<Rank>(inst_.list_len(a));
      base_[a + 1] = base_[a] + len_[a] + 1;
    }
    alive_.assign(base_[n_], 1);
    cnt_.resize(n_);
    dmin_.assign(n_, 1);
    dmax_.resize(n_);
    procmin_.assign(n_, 0);
    for (AgentId a = 0; a < n_; ++a) {
      cnt_[a] = len_[a] + 1;
      dmax_[a] = len_[a] + 1;
    }
    in_queue_.assign(n_, 0);

    flags_.assign(n_, 0);
    if (is_profile_kind(kind_)) {
      if (!prob_.count_flags.empty()) {
        for (AgentId a = 0; a < n_; ++a) flags_[a] = prob_.count_flags[a];
      } else {
        for (AgentId a = 0; a < n_; ++a)
          flags_[a] = prob_.objective.level <= len_[a] ? prob_.objective.level
                                                       : 0;
      }
    }
    flag_possible_ = 0;
    for (AgentId a = 0; a < n_; ++a)
      if (flags_[a] != 0) ++flag_possible_;

    possible_.assign(L_ + 1, 0);
    assigned_.assign(L_ + 1, 0);
    for (AgentId a = 0; a < n_; ++a)
      for (Rank r = 1; r <= len_[a]; ++r) ++possible_[r];

    floor_.assign(L_ + 1, 0);
    ceil_.assign(L_ + 1, -1);
    const auto& fl = prob_.objective.profile_floor;
    const auto& ce = prob_.objective.profile_ceiling;
    for (std::size_t i = 0; i < fl.size(); ++i) {
      if (static_cast<int>(i) < L_) {
        floor_[i + 1] = fl[i];
      } else if (fl[i] > 0) {
        infeasible_bounds_ = true;  // demands agents at a rank nobody has
      }
    }
    for (std::size_t i = 0; i < ce.size() && static_cast<int>(i) < L_; ++i)
      ceil_[i + 1] = ce[i];
    for (Rank r = 1; r <= L_; ++r)
      if (floor_[r] > 0 || ceil_[r] >= 0) tracked_.push_back(r);
  }

  bool install_root(const std::vector<char>* astar) {
    if (infeasible_bounds_) return false;
    if (astar) {
      // Stable matchings all match exactly the invariant set: pin non-members
      // to self, deny self to members.
      for (AgentId a = 0; a < n_; ++a) {
        if ((*astar)[a]) {
          pending_.push_back({a, static_cast<Rank>(len_[a] + 1)});
        } else {
          for (Rank p = 1; p <= len_[a]; ++p) pending_.push_back({a, p});
        }
      }
    }
    for (const AgentPair& fp : prob_.forced_pairs) {
      const Rank pa = inst_.rank(fp.lo, fp.hi);
      const Rank pb = inst_.rank(fp.hi, fp.lo);
      for (Rank t = 1; t <= len_[fp.lo] + 1; ++t)
        if (t != pa) pending_.push_back({fp.lo, t});
      for (Rank t = 1; t <= len_[fp.hi] + 1; ++t)
        if (t != pb) pending_.push_back({fp.hi, t});
    }
    for (AgentId a = 0;
         a < static_cast<AgentId>(prob_.rank_cap.size()) && a < n_; ++a) {
      const Rank cap = prob_.rank_cap[a];
      if (cap >= 1)
        for (Rank p = cap + 1; p <= len_[a]; ++p) pending_.push_back({a, p});
    }
    return propagate();
  }

  // ----- trail -----

  struct Removal {
    AgentId a;
    Rank p;
  };
  struct IntSet {
    int* where;
    int old_value;
  };
  struct Frame {
    std::size_t t;
    std::size_t it;
  };

  void set_int(int* where, int value) {
    itrail_.push_back({where, *where});
    *where = value;
  }

  void push_frame() { frames_.push_back({trail_.size(), itrail_.size()}); }

  void pop_frame() {
    const Frame f = frames_.back();
    frames_.pop_back();
    while (trail_.size() > f.t) {
      const Removal r = trail_.back();
      trail_.pop_back();
      undo_remove(r.a, r.p);
    }
    while (itrail_.size() > f.it) {
      const IntSet e = itrail_.back();
      itrail_.pop_back();
      *e.where = e.old_value;
    }
    for (AgentId a : queue_) in_queue_[a] = 0;
    queue_.clear();
    pending_.clear();
    failed_ = false;
  }

  void touch(AgentId a) {
    if (!in_queue_[a]) {
      in_queue_[a] = 1;
      queue_.push_back(a);
    }
  }

  // ----- propagation -----

  void apply_remove(AgentId a, Rank p) {
    const int f = base_[a] + p - 1;
    if (!alive_[f]) return;
    alive_[f] = 0;
    trail_.push_back({a, p});
    if (p <= len_[a]) {
      --possible_[p];
      if (flags_[a] == p) --flag_possible_;
      // channel, removal direction: the reciprocal entry goes too
      const AgentId b = inst_.list(a)[p - 1];
      pending_.push_back({b, inst_.rank(b, a)});
    }
    if (--cnt_[a] == 0) {
      failed_ = true;
      return;
    }
    if (p == dmin_[a]) {
      Rank q = p + 1;
      while (!alive_[base_[a] + q - 1]) ++q;
      dmin_[a] = q;
      touch(a);
    }
    if (p == dmax_[a]) {
      Rank q = p - 1;
      while (!alive_[base_[a] + q - 1]) --q;
      dmax_[a] = q;
    }
    if (cnt_[a] == 1) {
      const Rank q = dmin_[a];
      if (q <= len_[a]) {
        ++assigned_[q];
        if (flags_[a] == q) ++flag_assigned_;
        // channel, assignment direction: the partner must reciprocate
        const AgentId b = inst_.list(a)[q - 1];
        const Rank rb = inst_.rank(b, a);
        for (Rank t = dmin_[b]; t <= dmax_[b]; ++t)
          if (t != rb && alive_at(b, t)) pending_.push_back({b, t});
      }
    }
  }

  // Exact mirror of apply_remove, run in reverse trail order.
  void undo_remove(AgentId a, Rank p) {
    if (cnt_[a] == 1) {
      const Rank q = dmin_[a];
      if (q <= len_[a]) {
        --assigned_[q];
        if (flags_[a] == q) --flag_assigned_;
      }
    }
    ++cnt_[a];
    alive_[base_[a] + p - 1] = 1;
    if (p < dmin_[a]) dmin_[a] = p;
    if (p > dmax_[a]) dmax_[a] = p;
    if (p <= len_[a]) {
      ++possible_[p];
      if (flags_[a] == p) ++flag_possible_;
    }
  }

  // Watermark: positions 1..procmin are known unreachable (dmin passed
  // them). Processing position p of a fires the no-blocking implication for
  // the pair {a, list(a)[p-1]} exactly once per search path: in strict mode
  // it prunes the partner's worse-than-reciprocal values; in relax mode it
  // counts the pair as a definite block once both sides have processed it.
  void process(AgentId a) {
    for (;;) {
      const Rank limit = std::min<Rank>(dmin_[a] - 1, len_[a]);
      if (procmin_[a] >= limit || failed_) return;
      set_int(&procmin_[a], procmin_[a] + 1);
      const Rank p = procmin_[a];
      const AgentId b = inst_.list(a)[p - 1];
      const Rank rba = inst_.rank(b, a);
      if (strict_) {
        for (Rank q = std::max<Rank>(rba + 1, dmin_[b]); q <= dmax_[b]; ++q)
          if (alive_at(b, q)) pending_.push_back({b, q});
      } else {
        if (procmin_[b] >= rba) set_int(&defblock_, defblock_ + 1);
      }
    }
  }

  // Floor/ceiling fixpoint step; returns true if it queued removals.
  bool count_sweeps() {
    for (Rank r : tracked_) {
      if (floor_[r] > 0) {
        if (possible_[r] < floor_[r]) {
          failed_ = true;
          return false;
        }
        if (possible_[r] == floor_[r] && assigned_[r] < floor_[r]) {
          bool queued = false;
          for (AgentId a = 0; a < n_; ++a)
            if (cnt_[a] > 1 && r <= len_[a] && alive_at(a, r))
              for (Rank t = dmin_[a]; t <= dmax_[a]; ++t)
                if (t != r && alive_at(a, t)) {
                  pending_.push_back({a, t});
                  queued = true;
                }
          if (queued) return true;
        }
      }
      if (ceil_[r] >= 0) {
        if (assigned_[r] > ceil_[r]) {
          failed_ = true;
          return false;
        }
        if (assigned_[r] == ceil_[r] && possible_[r] > assigned_[r]) {
          bool queued = false;
          for (AgentId a = 0; a < n_; ++a)
            if (cnt_[a] > 1 && r <= len_[a] && alive_at(a, r)) {
              pending_.push_back({a, r});
              queued = true;
            }
          if (queued) return true;
        }
      }
    }
    return false;
  }

  bool propagate() {
    while (!failed_) {
      if (!pending_.empty()) {
        const Removal r = pending_.back();
        pending_.pop_back();
        apply_remove(r.a, r.p);
        continue;
      }
      if (!queue_.empty()) {
        const AgentId a = queue_.back();
        queue_.pop_back();
        in_queue_[a] = 0;
        process(a);
        continue;
      }
      if (count_sweeps()) continue;
      break;
    }
    return !failed_ && bounds_ok();
  }

  // ----- objective bounds -----

  bool min_bound_ok(long long lb) const {
    if (phase_ == Phase::canonical) return lb <= pin_;
    return !has_incumbent_ || lb < best_value_;
  }

  bool bounds_ok() const {
    switch (kind_) {
      case ObjectiveKind::feasibility:
        return true;
      case ObjectiveKind::minimize_cost: {
        long long lb = 0;
        for (AgentId a = 0; a < n_; ++a)
          if (!alive_at(a, len_[a] + 1)) lb += dmin_[a];
        return min_bound_ok(lb);
      }
      case ObjectiveKind::maximize_profile_level: {
        const long long ub = flag_possible_;
        if (phase_ == Phase::canonical) return ub >= pin_;
        return !has_incumbent_ || ub > best_value_;
      }
      case ObjectiveKind::minimize_profile_level:
        return min_bound_ok(flag_assigned_);
      case ObjectiveKind::minimize_blocking:
        return min_bound_ok(defblock_);
    }
    return true;
  }

  // ----- search -----

  void check_budget() {
    if (nodes_ > node_limit_) throw BudgetHit{};
    if (deadline_ && (nodes_ & 255) == 0 && Clock::now() > *deadline_)
      throw BudgetHit{};
  }

  AgentId pick_var() const {
    if (phase_ == Phase::canonical) {
      for (AgentId a = 0; a < n_; ++a)
        if (cnt_[a] > 1) return a;
      return -1;
    }
    AgentId best = -1;
    int bc = INT_MAX;
    for (AgentId a = 0; a < n_; ++a)
      if (cnt_[a] > 1 && cnt_[a] < bc) {
        bc = cnt_[a];
        best = a;
      }
    return best;
  }

  std::vector<Rank> value_order(AgentId a) const {
    std::vector<Rank> out;
    const Rank self = len_[a] + 1;
    auto push_if = [&](Rank p) {
      if (alive_at(a, p)) out.push_back(p);
    };
    if (phase_ == Phase::canonical) {
      // Canonical = lexicographically smallest partner array: unmatched
      // first, then partners by ascending id.
      push_if(self);
      std::vector<Rank> ps;
      for (Rank p = 1; p <= len_[a]; ++p)
        if (alive_at(a, p)) ps.push_back(p);
      std::sort(ps.begin(), ps.end(), [&](Rank x, Rank y) {
        return inst_.list(a)[x - 1] < inst_.list(a)[y - 1];
      });
      out.insert(out.end(), ps.begin(), ps.end());
      return out;
    }
    const bool literal =
        prob_.value_order == SearchProblem::ValueOrder::literal;
    const bool best_first =
        !literal || kind_ == ObjectiveKind::feasibility ||
        (kind_ == ObjectiveKind::maximize_profile_level &&
         prob_.objective.level == 1);
    if (best_first) {
      if (kind_ == ObjectiveKind::minimize_profile_level && flags_[a] != 0) {
        // scored position late: good incumbents avoid it
        for (Rank p = 1; p <= len_[a]; ++p)
          if (p != flags_[a]) push_if(p);
        push_if(flags_[a]);
        push_if(self);
      } else {
        for (Rank p = 1; p <= len_[a] + 1; ++p) push_if(p);
      }
    } else {
      push_if(self);
      for (Rank p = len_[a]; p >= 1; --p) push_if(p);
    }
    return out;
  }

  Matching build_matching() const {
    Matching m(n_);
    for (AgentId a = 0; a < n_; ++a) {
      const Rank p = dmin_[a];
      if (p <= len_[a]) {
        const AgentId b = inst_.list(a)[p - 1];
        if (a < b) m.match(a, b);
      }
    }
    return m;
  }

  long long leaf_value(const Matching& m) const {
    switch (kind_) {
      case ObjectiveKind::feasibility:
        return 0;
      case ObjectiveKind::minimize_cost: {
        long long c = 0;
        for (AgentId a = 0; a < n_; ++a)
          if (dmin_[a] <= len_[a]) c += dmin_[a];
        return c;
      }
      case ObjectiveKind::maximize_profile_level:
      case ObjectiveKind::minimize_profile_level: {
        long long c = 0;
        for (AgentId a = 0; a < n_; ++a)
          if (flags_[a] != 0 && dmin_[a] == flags_[a]) ++c;
        return c;
      }
      case ObjectiveKind::minimize_blocking:
        return static_cast<long long>(blocking_pairs(inst_, m).size());
    }
    return 0;
  }

  void on_leaf() {
    Matching m = build_matching();
    const long long v = leaf_value(m);
    if (phase_ == Phase::canonical) {
      if (v == pin_) {
        best_matching_ = std::move(m);
        best_value_ = v;
        has_incumbent_ = true;
        throw SearchDone{};
      }
      return;  // defensive; bounds are exact at leaves
    }
    bool improves = !has_incumbent_;
    if (has_incumbent_) {
      if (kind_ == ObjectiveKind::maximize_profile_level)
        improves = v > best_value_;
      else if (kind_ != ObjectiveKind::feasibility)
        improves = v < best_value_;
    }
    if (improves) {
      best_matching_ = std::move(m);
      best_value_ = v;
      has_incumbent_ = true;
    }
    if (kind_ == ObjectiveKind::feasibility) throw SearchDone{};
  }

  void dfs() {
    const AgentId a = pick_var();
    if (a < 0) {
      on_leaf();
      return;
    }
    for (Rank p : value_order(a)) {
      ++nodes_;
      check_budget();
      push_frame();
      for (Rank t = dmin_[a]; t <= dmax_[a]; ++t)
        if (t != p && alive_at(a, t)) pending_.push_back({a, t});
      if (propagate()) dfs();
      pop_frame();
      ++backtracks_;
    }
  }

  // ----- members -----

  const Instance& inst_;
  const SearchProblem& prob_;
  Phase phase_;
  long long pin_;
  std::int64_t node_limit_;
  std::optional<Clock::time_point> deadline_;

  int n_;
  int L_;
  bool strict_;
  ObjectiveKind kind_;
  bool root_ok_ = false;
  bool infeasible_bounds_ = false;

  std::vector<int> base_;
  std::vector<Rank> len_;
  std::vector<char> alive_;
  std::vector<int> cnt_;
  std::vector<Rank> dmin_, dmax_, procmin_;
  std::vector<Rank> flags_;
  std::vector<int> floor_, ceil_;
  std::vector<Rank> tracked_;
  std::vector<int> possible_, assigned_;
  int flag_possible_ = 0;
  int flag_assigned_ = 0;
  int defblock_ = 0;

  std::vector<Removal> trail_;
  std::vector<IntSet> itrail_;
  std::vector<Frame> frames_;
  std::vector<Removal> pending_;
  std::vector<AgentId> queue_;
  std::vector<char> in_queue_;
  bool failed_ = false;

  bool has_incumbent_ = false;
  long long best_value_ = 0;
  Matching best_matching_{0};

  std::int64_t nodes_ = 0;
  std::int64_t backtracks_ = 0;
};

bool caps_trivial(const std::vector<Rank>& caps) {
  return std::all_of(caps.begin(), caps.end(), [](Rank c) { return c <= 0; });
}

std::vector<std::string> validate_problem(const SearchProblem& p) {
  std::vector<std::string> out;
  if (!p.instance) {
    out.push_back("no instance attached to the problem");
    return out;
  }
  const Instance& inst = *p.instance;
  const int n = inst.n();
  const ObjectiveKind k = p.objective.kind;

  if (p.relax_stability) {
    if (k == ObjectiveKind::minimize_cost || is_profile_kind(k))
      out.push_back(
          "cost/profile objectives require strict stability "
          "(relax_stability must be false)");
  } else if (k == ObjectiveKind::minimize_blocking) {
    out.push_back(
        "minimize_blocking requires relax_stability (it is identically 0 "
        "over stable matchings)");
  }
  if (!is_profile_kind(k)) {
    if (!p.objective.profile_floor.empty() ||
        !p.objective.profile_ceiling.empty())
      out.push_back("profile floors/ceilings are only valid with profile "
                    "objectives");
    if (!p.count_flags.empty())
      out.push_back("count_flags are only valid with profile objectives");
  } else {
    if (p.count_flags.empty()) {
      if (p.objective.level < 1)
        out.push_back("profile objective needs a positive level");
    } else if (static_cast<int>(p.count_flags.size()) != n) {
      out.push_back("count_flags must have one entry per agent");
    } else {
      for (AgentId a = 0; a < n; ++a)
        if (p.count_flags[a] < 0 || p.count_flags[a] > inst.list_len(a)) {
          out.push_back("count_flags entry out of range for agent " +
                        std::to_string(a + 1));
          break;
        }
    }
  }

  std::vector<char> used(n, 0);
  for (const AgentPair& fp : p.forced_pairs) {
    if (fp.lo < 0 || fp.hi >= n || fp.lo == fp.hi) {
      out.push_back("forced pair with invalid agent ids");
      continue;
    }
    if (!inst.acceptable(fp.lo, fp.hi)) {
      out.push_back("forced pair (" + std::to_string(fp.lo + 1) + "," +
                    std::to_string(fp.hi + 1) + ") is not acceptable");
      continue;
    }
    if (used[fp.lo] || used[fp.hi])
      out.push_back("forced pairs overlap on agent " +
                    std::to_string((used[fp.lo] ? fp.lo : fp.hi) + 1));
    used[fp.lo] = used[fp.hi] = 1;
  }

  if (static_cast<int>(p.rank_cap.size()) > n) {
    out.push_back("rank_cap has more entries than agents");
  } else {
    for (std::size_t a = 0; a < p.rank_cap.size(); ++a)
      if (p.rank_cap[a] < 0) {
        out.push_back("negative rank cap for agent " + std::to_string(a + 1));
        break;
      }
  }
  for (const AgentPair& fp : p.forced_pairs) {
    if (fp.lo < 0 || fp.hi >= n || fp.lo == fp.hi ||
        !inst.acceptable(fp.lo, fp.hi))
      continue;
    auto capped = [&](AgentId x, AgentId y) {
      return x < static_cast<AgentId>(p.rank_cap.size()) &&
             p.rank_cap[x] >= 1 && inst.rank(x, y) > p.rank_cap[x];
    };
    if (capped(fp.lo, fp.hi) || capped(fp.hi, fp.lo))
      out.push_back("forced pair (" + std::to_string(fp.lo + 1) + "," +
                    std::to_string(fp.hi + 1) +
                    ") exceeds an agent's rank cap");
  }
  return out;
}

}  // namespace

SolveOutcome solve(const SearchProblem& p) {
  {
    auto msgs = validate_problem(p);
    if (!msgs.empty()) throw std::invalid_argument(msgs.front());
  }
  const Instance& inst = *p.instance;
  const int n = inst.n();
  const auto t0 = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (p.time_limit_ms > 0)
    deadline = t0 + std::chrono::milliseconds(p.time_limit_ms);

  SolveOutcome out;
  auto finish = [&](SolveStatus st) {
    out.status = st;
    out.stats.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                           Clock::now() - t0)
                           .count();
    return out;
  };
  auto add_stats = [&](const Engine& e) {
    out.stats.nodes += e.nodes();
    out.stats.backtracks += e.backtracks();
  };

  // Strict mode: decide solvability in polynomial time and pin the invariant
  // matched set (every stable matching matches exactly those agents).
  std::vector<char> astar_flags;
  const std::vector<char>* astar = nullptr;
  if (!p.relax_stability) {
    PolySolveResult poly = find_stable_polynomial(inst);
    if (!poly.solvable) return finish(SolveStatus::unsat);
    astar_flags.assign(n, 0);
    for (AgentId a : poly.matched) astar_flags[a] = 1;
    astar = &astar_flags;
  }

  const bool canonical_wanted = p.canonical_tiebreak && n <= p.canonical_limit;

  // Minimum-blocking ladder: k deleted pairs, k = 0,1,2, each decided by the
  // polynomial algorithm. A stable matching of the instance minus k pairs
  // has at most k blocking pairs (only the deleted pairs can block), and
  // every smaller k already failed, so the first success is exactly optimal.
  if (p.relax_stability && p.objective.kind == ObjectiveKind::minimize_blocking &&
      p.forced_pairs.empty() && caps_trivial(p.rank_cap) &&
      p.objective.profile_floor.empty() && p.objective.profile_ceiling.empty() &&
      p.count_flags.empty()) {
    long long v = -1;
    Matching m;
    bool budget_hit = false;
    auto tick = [&]() {
      ++out.stats.nodes;
      if (out.stats.nodes > p.node_limit) return true;
      if (deadline && Clock::now() > *deadline) return true;
      return false;
    };

    PolySolveResult r0 = find_stable_polynomial(inst);
    ++out.stats.nodes;
    if (r0.solvable) {
      v = 0;
      m = r0.matching;
    }
    const auto& all_pairs = inst.pairs();
    if (v < 0) {
      std::vector<AgentPair> banned(1);
      for (const AgentPair& e : all_pairs) {
        if ((budget_hit = tick())) break;
        banned[0] = e;
        PolySolveResult r = find_stable_polynomial(inst, banned);
        if (r.solvable) {
          v = 1;
          m = r.matching;
          break;
        }
      }
    }
    if (v < 0 && !budget_hit) {
      std::vector<AgentPair> banned(2);
      for (std::size_t i = 0; i < all_pairs.size() && v < 0 && !budget_hit;
           ++i) {
        banned[0] = all_pairs[i];
        for (std::size_t j = i + 1; j < all_pairs.size(); ++j) {
          if ((budget_hit = tick())) break;
          banned[1] = all_pairs[j];
          PolySolveResult r = find_stable_polynomial(inst, banned);
          if (r.solvable) {
            v = 2;
            m = r.matching;
            break;
          }
        }
      }
    }
    if (budget_hit) return finish(SolveStatus::budget_exceeded);
    if (v >= 0) {
      out.objective_value = v;
      out.matching = std::move(m);
      if (canonical_wanted) {
        Engine e2(inst, p, nullptr, Engine::Phase::canonical, v,
                  p.node_limit - out.stats.nodes, deadline);
        RunResult r2 = e2.run();
        add_stats(e2);
        if (r2.completed && r2.found) out.matching = r2.matching;
      }
      return finish(SolveStatus::optimal);
    }
    // optimum >= 3: fall through to exhaustive branch and bound
  }

  Engine e1(inst, p, astar, Engine::Phase::optimize, 0, p.node_limit,
            deadline);
  RunResult r1 = e1.run();
  add_stats(e1);
  if (!r1.completed) {
    if (r1.found) {
      out.matching = r1.matching;
      out.objective_value = r1.value;
    }
    return finish(SolveStatus::budget_exceeded);
  }
  if (!r1.found) return finish(SolveStatus::unsat);
  out.objective_value = r1.value;
  out.matching = r1.matching;

  if (canonical_wanted) {
    Engine e2(inst, p, astar, Engine::Phase::canonical, r1.value,
              p.node_limit - out.stats.nodes, deadline);
    RunResult r2 = e2.run();
    add_stats(e2);
    if (r2.completed && r2.found) out.matching = r2.matching;
  }
  return finish(SolveStatus::optimal);
}

std::vector<std::string> check_consistency(const SearchProblem& p) {
  std::vector<std::string> msgs = validate_problem(p);
  if (!msgs.empty() || !p.instance) return msgs;
  // Propagation alone: no solvability presolve, no search.
  Engine e(*p.instance, p, nullptr, Engine::Phase::optimize, 0, p.node_limit,
           std::nullopt);
  if (!e.root_ok())
    msgs.push_back(
        "root propagation reaches a contradiction (domain wipeout or "
        "count bound violation)");
  return msgs;
}

}  // namespace sri
