#pragma once

// Matching diagnostics: blocking pairs, rank profiles, cost/regret summaries,
// and the invariant matched set (the agents matched in every stable matching,
// which is the same set in all of them).

#include <optional>

#include "sri/model.hpp"

namespace sri {

// Scope for profile/cost counting. Stable matchings match exactly the
// invariant set, so the two scopes coincide on them; they differ only for
// unstable matchings (e.g. minimum-blocking-pair outputs), where counting
// falls back to all matched agents.
enum class ProfileScope { matched_set, all_matched };

struct Profile {
  std::vector<int> counts;  // counts[r-1] = agents matched to rank r, r=1..L
  ProfileScope scope = ProfileScope::matched_set;

  int level(Rank r) const {
    return (r >= 1 && r <= static_cast<Rank>(counts.size()))
               ? counts[r - 1]
               : 0;
  }
  friend bool operator==(const Profile&, const Profile&) = default;
};

struct CostSummary {
  long long cost = 0;   // sum of partner ranks over matched agents
  Rank regret = 0;      // max partner rank over matched agents (0 if none)
  int blocking = 0;     // unordered blocking pairs
};

// Unordered pairs {a,b} where each side is unmatched or strictly prefers the
// other to its current partner. Sorted ascending.
std::vector<AgentPair> blocking_pairs(const Instance& inst, const Matching& m);

// Rank profile of m, indexed 1..max_list_len(). With scope = matched_set the
// count is restricted to the invariant matched set (requires a solvable
// instance); with all_matched every matched agent counts.
Profile profile(const Instance& inst, const Matching& m,
                ProfileScope scope = ProfileScope::all_matched);

CostSummary cost_summary(const Instance& inst, const Matching& m);

// Agents matched in every stable matching; nullopt if no stable matching
// exists.
std::optional<std::vector<AgentId>> matched_set(const Instance& inst);

// Profile orders. rank_maximal: lexicographically greater profile wins.
// generous: lexicographically smaller reversed profile (counts read from
// rank L down to 1) wins. Both return <0, 0, >0 like three-way compares,
// where a negative value means a is better.
int compare_rank_maximal(const Profile& a, const Profile& b);
int compare_generous(const Profile& a, const Profile& b);

}  // namespace sri
