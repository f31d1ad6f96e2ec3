#pragma once
// 0/1 integer-program encoding of stability, and an LP-format exporter.
//
// Variables: x_u_v for every ordered acceptable pair (both directions kept,
// tied by symmetry equalities), plus one slack b_u_v per unordered pair in
// almost-stable mode. Unacceptable pairs get no variable at all.
//
// Constraint families, in emission order:
//   capacity   per agent u:            sum_{v in list(u)} x_u_v <= 1
//   stability  per unordered {u,v}:    sum_{w: rank(u,w)<rank(u,v)} x_u_w
//                                    + sum_{w: rank(v,w)<rank(v,u)} x_v_w
//                                    + x_u_v [+ b_u_v]              >= 1
//   symmetry   per unordered {u,v}:    x_u_v - x_v_u = 0
//
// Objective conventions (documented deliberately): the egalitarian objective
// sums rank(u,v) * x_u_v over ordered pairs WITHOUT any scaling factor. At a
// feasible point each matched pair contributes rank(u,v) + rank(v,u), which
// is exactly how the total-cost measure counts both partners, so the
// objective value equals the cost, 1x. Level objectives (fc = level 1) count
// ordered pairs matched at the given rank and export with Maximize sense;
// almost-stable minimizes the slack sum; none emits an empty objective.

#include <cstdint>
#include <string>
#include <vector>

#include "sri/model.hpp"
#include "sri/oracle.hpp"

namespace sri {

enum class IpObjectiveKind { egalitarian, fc, level, almost_stable, none };

struct IpObjectiveSpec {
  IpObjectiveKind kind = IpObjectiveKind::none;
  Rank level = 1;  // only read for kind == level

  static IpObjectiveSpec egalitarian() {
    return {IpObjectiveKind::egalitarian, 1};
  }
  static IpObjectiveSpec fc() { return {IpObjectiveKind::fc, 1}; }
  static IpObjectiveSpec level_count(Rank r) {
    return {IpObjectiveKind::level, r};
  }
  static IpObjectiveSpec almost_stable() {
    return {IpObjectiveKind::almost_stable, 1};
  }
  static IpObjectiveSpec none() { return {IpObjectiveKind::none, 1}; }
};

struct IpVariable {
  std::string name;  // x_u_v / b_u_v with 1-based agent ids
  bool is_slack = false;
  AgentId u = -1;  // x: ordered pair (u,v); b: normalized (u < v)
  AgentId v = -1;
};

struct IpConstraint {
  std::string name;  // c1, c2, ... in emission order
  std::vector<std::pair<long long, int>> terms;  // (coefficient, var index)
  char sense = 'L';  // 'L' <=, 'G' >=, 'E' =
  long long rhs = 0;
};

struct IpModel {
  bool maximize = false;
  std::vector<std::pair<long long, int>> objective_terms;
  std::vector<IpVariable> vars;
  std::vector<IpConstraint> constraints;
};

// omit_stability drops the entire stability family; it exists so tests can
// prove the family is load-bearing (the feasible set then admits unstable
// matchings).
IpModel build_ip(const Instance& inst, const IpObjectiveSpec& objective,
                 bool omit_stability = false);

// LP text: sense line, " obj: ", "Subject To", "Binary", "End". ASCII, LF
// line endings, byte-deterministic for a fixed model.
std::string export_lp(const IpModel& model);

// All matchings over acceptable pairs whose induced 0/1 assignment satisfies
// every stored constraint (slack variables are free binaries, so rows
// containing them are satisfiable whenever some slack setting works).
// Throws OracleBudgetError past the node budget.
std::vector<Matching> ip_feasible_matchings(
    const IpModel& model, const Instance& inst,
    std::int64_t budget = kDefaultOracleBudget);

// Minimal slack sum consistent with the matching's induced assignment.
// Meaningful for almost-stable models; equals the blocking-pair count.
long long min_slack_sum(const IpModel& model, const Instance& inst,
                        const Matching& m);

// Enumerates the 0/1 feasible set of the plain stability model and compares
// it, as a set of matchings, with the brute-force stable set.
bool feasible_set_equals_stable_set(const Instance& inst);

}  // namespace sri
