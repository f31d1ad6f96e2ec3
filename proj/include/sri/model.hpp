#pragma once

// Core data model for stable roommates with incomplete lists (SRI):
// instances (strictly ordered, mutually acceptable preference lists),
// matchings, the text file formats, and the random instance generator.
//
// Agents are 0-based internally; all text formats are 1-based.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sri {

using AgentId = std::int32_t;
using Rank = std::int32_t;  // 1-based position in a preference list

// Unordered agent pair, normalized to lo < hi.
struct AgentPair {
  AgentId lo = 0;
  AgentId hi = 0;

  AgentPair() = default;
  AgentPair(AgentId a, AgentId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

  friend bool operator==(const AgentPair&, const AgentPair&) = default;
  friend auto operator<=>(const AgentPair&, const AgentPair&) = default;
};

// Thrown on malformed input text; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Thrown where an operation requires a stable matching and none exists.
class UnsolvableError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An SRI instance: n agents, each with a strictly ordered list of acceptable
// partners. Acceptability is mutual: b appears in a's list iff a appears in
// b's. rank(a,b) is the 1-based position of b in a's list, 0 if unacceptable.
class Instance {
 public:
  Instance() = default;

  // Validates and adopts the lists (0-based ids). Throws std::invalid_argument
  // on self-reference, duplicate entries, out-of-range ids, or one-sided
  // acceptability. With symmetrize = true, one-sided entries are deleted
  // instead of rejected.
  static Instance from_lists(std::vector<std::vector<AgentId>> lists,
                             bool symmetrize = false);

  int n() const { return static_cast<int>(prefs_.size()); }
  const std::vector<AgentId>& list(AgentId a) const { return prefs_[a]; }
  int list_len(AgentId a) const { return static_cast<int>(prefs_[a].size()); }

  Rank rank(AgentId a, AgentId b) const { return rank_[a][b]; }
  bool acceptable(AgentId a, AgentId b) const { return rank_[a][b] > 0; }

  // Domain value meaning "a stays unmatched": one past the end of a's list.
  Rank self_rank(AgentId a) const { return list_len(a) + 1; }

  // L: the longest list length (profile vectors are indexed 1..L).
  int max_list_len() const { return max_len_; }

  // All acceptable pairs, sorted ascending.
  const std::vector<AgentPair>& pairs() const { return pairs_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.prefs_ == b.prefs_;
  }

 private:
  std::vector<std::vector<AgentId>> prefs_;
  std::vector<std::vector<Rank>> rank_;  // n x n, 0 = unacceptable
  std::vector<AgentPair> pairs_;
  int max_len_ = 0;
};

// A matching: partner[a] = matched agent or -1. Always an involution.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int n) : partner_(n, -1) {}

  int n() const { return static_cast<int>(partner_.size()); }
  AgentId partner(AgentId a) const { return partner_[a]; }
  bool matched(AgentId a) const { return partner_[a] >= 0; }

  void match(AgentId a, AgentId b) {
    partner_[a] = b;
    partner_[b] = a;
  }
  void unmatch(AgentId a) {
    if (partner_[a] >= 0) {
      partner_[partner_[a]] = -1;
      partner_[a] = -1;
    }
  }

  int pair_count() const;
  // Pairs sorted ascending; this is the canonical form used for ordering
  // and serialization.
  std::vector<AgentPair> pairs() const;

  friend bool operator==(const Matching&, const Matching&) = default;
  // Canonical order: lexicographic on the sorted pair list.
  friend bool operator<(const Matching& a, const Matching& b) {
    return a.pairs() < b.pairs();
  }

 private:
  std::vector<AgentId> partner_;
};

// Instance text format:
//   line 1: n
//   lines 2..n+1: agent i's list, 1-based ids, most preferred first;
//                 an empty line is an empty list
// '#' starts a comment anywhere; lines that are entirely comment are skipped.
Instance parse_instance(std::string_view text, bool symmetrize = false);
std::string serialize_instance(const Instance& inst);

// Matching text format: one "i j" line per pair, 1-based, i < j, sorted.
Matching parse_matching(std::string_view text, const Instance& inst);
std::string serialize_matching(const Matching& m);

// Random instance family: every unordered pair is mutually acceptable with
// probability `completeness` (one coin flip per pair), and each agent's list
// is an independent uniform permutation of its accepted partners.
// Byte-deterministic for a fixed spec.
struct RandomSpec {
  int n = 0;
  double completeness = 1.0;
  std::uint64_t seed = 0;
};

Instance generate_random(const RandomSpec& spec);

}  // namespace sri
