#include "sri/model.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace sri {

namespace {

std::string agent_str(AgentId a) { return std::to_string(a + 1); }

}  // namespace

Instance Instance::from_lists(std::vector<std::vector<AgentId>> lists,
                              bool symmetrize) {
  const int n = static_cast<int>(lists.size());
  for (AgentId a = 0; a < n; ++a) {
    std::vector<bool> seen(n, false);
    for (AgentId b : lists[a]) {
      if (b < 0 || b >= n)
        throw std::invalid_argument("agent " + agent_str(a) +
                                    " lists out-of-range agent " +
                                    std::to_string(b + 1));
      if (b == a)
        throw std::invalid_argument("agent " + agent_str(a) + " lists itself");
      if (seen[b])
        throw std::invalid_argument("agent " + agent_str(a) +
                                    " lists agent " + agent_str(b) + " twice");
      seen[b] = true;
    }
  }

  // Mutual acceptability: b on a's list requires a on b's list.
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  for (AgentId a = 0; a < n; ++a)
    for (AgentId b : lists[a]) has[a][b] = true;
  bool asymmetric = false;
  for (AgentId a = 0; a < n && !asymmetric; ++a)
    for (AgentId b : lists[a])
      if (!has[b][a]) {
        if (!symmetrize)
          throw std::invalid_argument("asymmetric pair (" + agent_str(a) +
                                      "," + agent_str(b) + "): agent " +
                                      agent_str(b) + " does not list agent " +
                                      agent_str(a));
        asymmetric = true;
        break;
      }
  if (asymmetric) {
    for (AgentId a = 0; a < n; ++a) {
      std::erase_if(lists[a], [&](AgentId b) { return !has[b][a]; });
    }
  }

  Instance inst;
  inst.prefs_ = std::move(lists);
  inst.rank_.assign(n, std::vector<Rank>(n, 0));
  for (AgentId a = 0; a < n; ++a) {
    const auto& l = inst.prefs_[a];
    for (int i = 0; i < static_cast<int>(l.size()); ++i)
      inst.rank_[a][l[i]] = static_cast<Rank>(i + 1);
    inst.max_len_ = std::max(inst.max_len_, static_cast<int>(l.size()));
  }
  for (AgentId a = 0; a < n; ++a)
    for (AgentId b : inst.prefs_[a])
      if (a < b) inst.pairs_.emplace_back(a, b);
  std::sort(inst.pairs_.begin(), inst.pairs_.end());
  return inst;
}

int Matching::pair_count() const {
  int c = 0;
  for (AgentId a = 0; a < n(); ++a)
    if (partner_[a] > a) ++c;
  return c;
}

std::vector<AgentPair> Matching::pairs() const {
  std::vector<AgentPair> out;
  for (AgentId a = 0; a < n(); ++a)
    if (partner_[a] > a) out.emplace_back(a, partner_[a]);
  return out;  // already sorted: lo ascends with a
}

namespace {

// Splits into lines, drops comments ('#' to end of line), and classifies
// pure-comment lines as skippable while keeping genuinely blank lines
// (they encode empty preference lists).
struct SourceLine {
  int number = 0;  // 1-based in the original text
  std::string text;
};

std::vector<SourceLine> data_lines(std::string_view text) {
  std::vector<SourceLine> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    ++number;
    bool comment_only = false;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
      std::string_view before = line.substr(0, hash);
      comment_only =
          before.find_first_not_of(" \t\r") == std::string_view::npos;
      line = before;
    }
    if (!comment_only) {
      std::string s(line);
      while (!s.empty() && (s.back() == '\r' || s.back() == ' ' ||
                            s.back() == '\t'))
        s.pop_back();
      out.push_back({number, s});
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  // The split above yields one trailing empty fragment when the text ends
  // with a newline; drop it so "n\n...\n" does not grow a phantom line.
  if (!out.empty() && out.back().text.empty()) out.pop_back();
  return out;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t") == std::string::npos;
}

std::vector<long long> parse_ints(const SourceLine& line) {
  std::istringstream in(line.text);
  std::vector<long long> out;
  long long v;
  while (in >> v) out.push_back(v);
  if (!in.eof())
    throw ParseError(line.number, "expected whitespace-separated integers");
  return out;
}

}  // namespace

Instance parse_instance(std::string_view text, bool symmetrize) {
  auto lines = data_lines(text);
  std::size_t idx = 0;
  while (idx < lines.size() && blank(lines[idx].text)) ++idx;
  if (idx == lines.size()) throw ParseError(1, "missing agent count");
  auto header = parse_ints(lines[idx]);
  if (header.size() != 1 || header[0] < 1)
    throw ParseError(lines[idx].number,
                     "first line must be a single positive agent count");
  const int n = static_cast<int>(header[0]);
  ++idx;

  std::vector<std::vector<AgentId>> lists(n);
  for (int a = 0; a < n; ++a) {
    if (idx >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().number,
                       "expected " + std::to_string(n) +
                           " preference lines, got " + std::to_string(a));
    auto vals = parse_ints(lines[idx]);
    for (long long v : vals) {
      if (v < 1 || v > n)
        throw ParseError(lines[idx].number,
                         "agent id " + std::to_string(v) + " out of range 1.." +
                             std::to_string(n));
      lists[a].push_back(static_cast<AgentId>(v - 1));
    }
    ++idx;
  }
  for (; idx < lines.size(); ++idx)
    if (!blank(lines[idx].text))
      throw ParseError(lines[idx].number, "unexpected content after the " +
                                              std::to_string(n) +
                                              " preference lines");
  try {
    return Instance::from_lists(std::move(lists), symmetrize);
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  std::string out = std::to_string(inst.n());
  out.push_back('\n');
  for (AgentId a = 0; a < inst.n(); ++a) {
    const auto& l = inst.list(a);
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(l[i] + 1);
    }
    out.push_back('\n');
  }
  return out;
}

Matching parse_matching(std::string_view text, const Instance& inst) {
  Matching m(inst.n());
  for (const auto& line : data_lines(text)) {
    if (blank(line.text)) continue;
    auto vals = parse_ints(line);
    if (vals.size() != 2)
      throw ParseError(line.number, "expected two agent ids per line");
    for (long long v : vals)
      if (v < 1 || v > inst.n())
        throw ParseError(line.number, "agent id " + std::to_string(v) +
                                          " out of range 1.." +
                                          std::to_string(inst.n()));
    AgentId a = static_cast<AgentId>(vals[0] - 1);
    AgentId b = static_cast<AgentId>(vals[1] - 1);
    if (a == b) throw ParseError(line.number, "agent paired with itself");
    if (!inst.acceptable(a, b))
      throw ParseError(line.number, "pair (" + std::to_string(vals[0]) + "," +
                                        std::to_string(vals[1]) +
                                        ") is not mutually acceptable");
    if (m.matched(a) || m.matched(b))
      throw ParseError(line.number, "agent appears in two pairs");
    m.match(a, b);
  }
  return m;
}

std::string serialize_matching(const Matching& m) {
  std::string out;
  for (const AgentPair& p : m.pairs()) {
    out += std::to_string(p.lo + 1);
    out.push_back(' ');
    out += std::to_string(p.hi + 1);
    out.push_back('\n');
  }
  return out;
}

namespace {

// Deliberately simple primitives so a fixed seed yields identical instances
// on every platform (std::shuffle and the std distributions are
// implementation-defined).
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t next_below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

}  // namespace

Instance generate_random(const RandomSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be positive");
  if (spec.completeness < 0.0 || spec.completeness > 1.0)
    throw std::invalid_argument("completeness must be in [0,1]");
  std::mt19937_64 rng(spec.seed);
  const int n = spec.n;

  // One coin flip per unordered pair, in (lo,hi) lexicographic order.
  std::vector<std::vector<AgentId>> lists(n);
  for (AgentId a = 0; a < n; ++a)
    for (AgentId b = a + 1; b < n; ++b)
      if (next_unit(rng) < spec.completeness) {
        lists[a].push_back(b);
        lists[b].push_back(a);
      }

  // Fisher-Yates per agent, in agent order.
  for (AgentId a = 0; a < n; ++a) {
    auto& l = lists[a];
    for (std::size_t i = l.size(); i > 1; --i)
      std::swap(l[i - 1], l[next_below(rng, i)]);
  }
  return Instance::from_lists(std::move(lists));
}

}  // namespace sri
