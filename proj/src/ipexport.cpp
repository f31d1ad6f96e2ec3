#include "sri/ipexport.hpp"

#include <algorithm>
#include <stdexcept>

namespace sri {

namespace {

std::string x_name(AgentId u, AgentId v) {
  return "x_" + std::to_string(u + 1) + "_" + std::to_string(v + 1);
}
std::string b_name(AgentId u, AgentId v) {
  return "b_" + std::to_string(u + 1) + "_" + std::to_string(v + 1);
}

}  // namespace

IpModel build_ip(const Instance& inst, const IpObjectiveSpec& objective,
                 bool omit_stability) {
  const int n = inst.n();
  IpModel m;

  // x variables: agents ascending, each list in preference order.
  std::vector<std::vector<int>> xvar(n);  // xvar[u][pos] -> var index
  for (AgentId u = 0; u < n; ++u) {
    xvar[u].reserve(inst.list(u).size());
    for (AgentId v : inst.list(u)) {
      xvar[u].push_back(static_cast<int>(m.vars.size()));
      m.vars.push_back({x_name(u, v), false, u, v});
    }
  }
  auto x_of = [&](AgentId u, AgentId v) {
    return xvar[u][inst.rank(u, v) - 1];
  };

  const auto& pairs = inst.pairs();
  const bool with_slack = objective.kind == IpObjectiveKind::almost_stable;
  std::vector<int> bvar;
  if (with_slack) {
    bvar.reserve(pairs.size());
    for (const AgentPair& e : pairs) {
      bvar.push_back(static_cast<int>(m.vars.size()));
      m.vars.push_back({b_name(e.lo, e.hi), true, e.lo, e.hi});
    }
  }

  switch (objective.kind) {
    case IpObjectiveKind::egalitarian:
      m.maximize = false;
      for (AgentId u = 0; u < n; ++u)
        for (AgentId v : inst.list(u))
          m.objective_terms.emplace_back(inst.rank(u, v), x_of(u, v));
      break;
    case IpObjectiveKind::fc:
    case IpObjectiveKind::level: {
      const Rank r = objective.kind == IpObjectiveKind::fc ? 1
                                                           : objective.level;
      m.maximize = true;
      for (AgentId u = 0; u < n; ++u)
        for (AgentId v : inst.list(u))
          if (inst.rank(u, v) == r)
            m.objective_terms.emplace_back(1, x_of(u, v));
      break;
    }
    case IpObjectiveKind::almost_stable:
      m.maximize = false;
      for (int b : bvar) m.objective_terms.emplace_back(1, b);
      break;
    case IpObjectiveKind::none:
      m.maximize = false;
      break;
  }

  int cnum = 0;
  auto add = [&](char sense, long long rhs,
                 std::vector<std::pair<long long, int>> terms) {
    m.constraints.push_back(
        {"c" + std::to_string(++cnum), std::move(terms), sense, rhs});
  };

  // capacity
  for (AgentId u = 0; u < n; ++u) {
    if (inst.list(u).empty()) continue;
    std::vector<std::pair<long long, int>> terms;
    for (AgentId v : inst.list(u)) terms.emplace_back(1, x_of(u, v));
    add('L', 1, std::move(terms));
  }
  // stability
  if (!omit_stability) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const AgentId u = pairs[i].lo, v = pairs[i].hi;
      std::vector<std::pair<long long, int>> terms;
      for (AgentId w : inst.list(u)) {
        if (inst.rank(u, w) >= inst.rank(u, v)) break;
        terms.emplace_back(1, x_of(u, w));
      }
      for (AgentId w : inst.list(v)) {
        if (inst.rank(v, w) >= inst.rank(v, u)) break;
        terms.emplace_back(1, x_of(v, w));
      }
      terms.emplace_back(1, x_of(u, v));
      if (with_slack) terms.emplace_back(1, bvar[i]);
      add('G', 1, std::move(terms));
    }
  }
  // symmetry
  for (const AgentPair& e : pairs) {
    std::vector<std::pair<long long, int>> terms;
    terms.emplace_back(1, x_of(e.lo, e.hi));
    terms.emplace_back(-1, x_of(e.hi, e.lo));
    add('E', 0, std::move(terms));
  }
  return m;
}

namespace {

void append_terms(std::string& out,
                  const std::vector<std::pair<long long, int>>& terms,
                  const std::vector<IpVariable>& vars) {
  bool first = true;
  for (const auto& [c, v] : terms) {
    if (c == 0) continue;
    const long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "- ";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) {
      out += std::to_string(mag);
      out += ' ';
    }
    out += vars[v].name;
  }
}

}  // namespace

std::string export_lp(const IpModel& model) {
  std::string out;
  out += model.maximize ? "Maximize\n" : "Minimize\n";
  out += " obj: ";
  append_terms(out, model.objective_terms, model.vars);
  out += "\nSubject To\n";
  for (const IpConstraint& c : model.constraints) {
    out += ' ';
    out += c.name;
    out += ": ";
    append_terms(out, c.terms, model.vars);
    out += c.sense == 'L' ? " <= " : c.sense == 'G' ? " >= " : " = ";
    out += std::to_string(c.rhs);
    out += '\n';
  }
  out += "Binary\n";
  for (const IpVariable& v : model.vars) {
    out += ' ';
    out += v.name;
    out += '\n';
  }
  out += "End\n";
  return out;
}

namespace {

// Evaluates the x-part of every constraint against the induced assignment;
// rows with slack variables may draw on them freely (each slack is binary).
bool assignment_feasible(const IpModel& model, const Matching& m) {
  for (const IpConstraint& c : model.constraints) {
    long long xsum = 0;
    long long slack_headroom = 0;
    for (const auto& [coef, vi] : c.terms) {
      const IpVariable& var = model.vars[vi];
      if (var.is_slack) {
        if (coef > 0) slack_headroom += coef;
        continue;  // negative-coefficient slack would only hurt 'G'; none built
      }
      if (m.matched(var.u) && m.partner(var.u) == var.v) xsum += coef;
    }
    switch (c.sense) {
      case 'L':
        if (xsum > c.rhs) return false;
        break;
      case 'G':
        if (xsum + slack_headroom < c.rhs) return false;
        break;
      case 'E':
        if (xsum != c.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace

std::vector<Matching> ip_feasible_matchings(const IpModel& model,
                                            const Instance& inst,
                                            std::int64_t budget) {
  const auto& pairs = inst.pairs();
  std::vector<Matching> out;
  Matching cur(inst.n());
  std::int64_t ticks = 0;
  auto tick = [&]() {
    if (++ticks > budget)
      throw OracleBudgetError("feasible-set enumeration budget exceeded");
  };
  // DFS over unordered acceptable pairs: include (if both ends free) or skip.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    tick();
    if (i == pairs.size()) {
      if (assignment_feasible(model, cur)) out.push_back(cur);
      return;
    }
    const AgentPair& e = pairs[i];
    if (!cur.matched(e.lo) && !cur.matched(e.hi)) {
      cur.match(e.lo, e.hi);
      self(self, i + 1);
      cur.unmatch(e.lo);
    }
    self(self, i + 1);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

long long min_slack_sum(const IpModel& model, const Instance& inst,
                        const Matching& m) {
  (void)inst;
  long long total = 0;
  for (const IpConstraint& c : model.constraints) {
    long long xsum = 0;
    long long headroom = 0;
    bool has_slack = false;
    for (const auto& [coef, vi] : c.terms) {
      const IpVariable& var = model.vars[vi];
      if (var.is_slack) {
        has_slack = true;
        headroom += coef;
        continue;
      }
      if (m.matched(var.u) && m.partner(var.u) == var.v) xsum += coef;
    }
    if (!has_slack || c.sense != 'G') continue;
    const long long deficit = c.rhs - xsum;
    if (deficit > headroom)
      throw std::logic_error("slack cannot absorb the constraint deficit");
    if (deficit > 0) total += deficit;
  }
  return total;
}

bool feasible_set_equals_stable_set(const Instance& inst) {
  const IpModel model = build_ip(inst, IpObjectiveSpec::none());
  const std::vector<Matching> feasible = ip_feasible_matchings(model, inst);
  const StableSet stable = enumerate_stable(inst);
  return feasible == stable.matchings;
}

}  // namespace sri
