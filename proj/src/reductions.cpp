#include "sri/reductions.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sri/criteria.hpp"

namespace sri {

SimpleGraph SimpleGraph::from_edges(int n,
                                    std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  SimpleGraph g;
  g.n = n;
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("multi-edge");
  g.edges = std::move(edges);
  g.adj.resize(n);
  for (const auto& [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  return g;
}

bool SimpleGraph::is_cubic() const {
  for (const auto& nb : adj)
    if (nb.size() != 3) return false;
  return n > 0;
}

SimpleGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos)
      continue;  // blank or comment-only line
    std::istringstream ls(raw);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0) {
        throw ParseError(lineno, "expected header \"n m\"");
      }
      std::string tail;
      if (ls >> tail) throw ParseError(lineno, "trailing content after header");
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) throw ParseError(lineno, "edge needs two endpoints");
    std::string tail;
    if (ls >> tail) throw ParseError(lineno, "trailing content after edge");
    if (u < 1 || v < 1 || u > n || v > n)
      throw ParseError(lineno, "vertex out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    edges.emplace_back(u - 1, v - 1);
  }
  if (n < 0) throw ParseError(lineno, "missing header \"n m\"");
  if (static_cast<int>(edges.size()) != m)
    throw ParseError(lineno, "expected " + std::to_string(m) + " edges, got " +
                                 std::to_string(edges.size()));
  try {
    return SimpleGraph::from_edges(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

std::string variant_name(GadgetVariant v) {
  switch (v) {
    case GadgetVariant::fc:
      return "fc";
    case GadgetVariant::generous:
      return "generous";
    case GadgetVariant::egalitarian:
      return "egalitarian";
    case GadgetVariant::independent_set:
      return "independent-set";
  }
  return "?";
}

std::optional<GadgetVariant> parse_variant(const std::string& name) {
  for (GadgetVariant v :
       {GadgetVariant::fc, GadgetVariant::generous, GadgetVariant::egalitarian,
        GadgetVariant::independent_set})
    if (variant_name(v) == name) return v;
  return std::nullopt;
}

AgentId vc_agent(int vertex, char role, int copy) {
  const AgentId base = vertex * 18;
  switch (role) {
    case 'v':
      if (copy < 1 || copy > 8) throw std::invalid_argument("v copy in 1..8");
      return base + copy - 1;
    case 'w':
      if (copy < 1 || copy > 5) throw std::invalid_argument("w copy in 1..5");
      return base + 8 + copy - 1;
    case 'x':
      if (copy < 1 || copy > 5) throw std::invalid_argument("x copy in 1..5");
      return base + 13 + copy - 1;
    default:
      throw std::invalid_argument("role must be v, w, or x");
  }
}

AgentId is_agent(int vertex, char role) {
  const AgentId base = vertex * 6;
  switch (role) {
    case 'v':
      return base + 0;
    case 'w':
      return base + 1;
    case 'x':
      return base + 2;
    case 'y':
      return base + 3;
    case 'a':
      return base + 4;
    case 'b':
      return base + 5;
    default:
      throw std::invalid_argument("role must be one of v,w,x,y,a,b");
  }
}

Instance build_vc_gadget(const SimpleGraph& g, GadgetVariant variant) {
  if (variant == GadgetVariant::independent_set)
    throw std::invalid_argument(
        "independent-set gadgets come from build_is_gadget");
  if (!g.is_cubic())
    throw std::invalid_argument(
        "vertex-cover gadgets require a cubic graph (every degree 3)");

  auto V = [](int i, int r) { return vc_agent(i, 'v', r); };
  auto W = [](int i, int j) { return vc_agent(i, 'w', j); };
  auto X = [](int i, int j) { return vc_agent(i, 'x', j); };

  // Cross-group wiring: per-vertex counters start at -1; edges in sorted
  // order bump both endpoints by 2, landing on odd copies 1, 3, 5. The two
  // selected copies become each other's second choices.
  std::vector<AgentId> cross(static_cast<std::size_t>(g.n) * 18, -1);
  std::vector<int> counter(g.n, -1);
  for (const auto& [i, j] : g.edges) {
    counter[i] += 2;
    counter[j] += 2;
    const AgentId ci = V(i, counter[i]);
    const AgentId cj = V(j, counter[j]);
    cross[ci] = cj;
    cross[cj] = ci;
  }

  std::vector<std::vector<AgentId>> lists(static_cast<std::size_t>(g.n) * 18);
  for (int i = 0; i < g.n; ++i) {
    lists[V(i, 1)] = {V(i, 2), cross[V(i, 1)], V(i, 8)};
    lists[V(i, 2)] = {V(i, 3), W(i, 1), V(i, 1)};
    lists[V(i, 3)] = {V(i, 4), cross[V(i, 3)], V(i, 2)};
    lists[V(i, 4)] = {V(i, 5), W(i, 2), V(i, 3)};
    lists[V(i, 5)] = {V(i, 6), cross[V(i, 5)], V(i, 4)};
    lists[V(i, 6)] = {V(i, 7), W(i, 3), V(i, 5)};
    lists[V(i, 7)] = variant == GadgetVariant::generous
                         ? std::vector<AgentId>{V(i, 8), V(i, 6), W(i, 4)}
                         : std::vector<AgentId>{W(i, 4), V(i, 8), V(i, 6)};
    lists[V(i, 8)] = {V(i, 1), W(i, 5), V(i, 7)};
    // w_j's fallback v partner mirrors the v list that names w_j.
    static constexpr int kWPartner[6] = {0, 2, 4, 6, 7, 8};
    for (int j = 1; j <= 5; ++j) {
      lists[W(i, j)] = {X(i, j), V(i, kWPartner[j])};
      lists[X(i, j)] = {W(i, j)};
    }
  }
  return Instance::from_lists(lists);
}

Instance build_is_gadget(const SimpleGraph& g) {
  std::vector<std::vector<AgentId>> lists(static_cast<std::size_t>(g.n) * 6);
  for (int i = 0; i < g.n; ++i) {
    const AgentId v = is_agent(i, 'v');
    const AgentId w = is_agent(i, 'w');
    const AgentId x = is_agent(i, 'x');
    const AgentId y = is_agent(i, 'y');
    const AgentId a = is_agent(i, 'a');
    const AgentId b = is_agent(i, 'b');
    auto& vl = lists[v];
    vl = {a, w};
    for (int j : g.adj[i]) vl.push_back(is_agent(j, 'v'));
    vl.push_back(y);
    lists[w] = {x, v, a, b};
    lists[x] = {a, y, w};
    lists[y] = {a, v, x};
    lists[a] = {w, b, v, x, y};
    lists[b] = {w, a};
  }
  return Instance::from_lists(lists);
}

namespace {

int popcount(unsigned mask) {
  int c = 0;
  while (mask) {
    mask &= mask - 1;
    ++c;
  }
  return c;
}

void require_small(const SimpleGraph& g) {
  if (g.n > 16)
    throw std::invalid_argument(
        "brute-force graph parameters are limited to 16 vertices");
}

}  // namespace

int brute_force_min_vertex_cover(const SimpleGraph& g) {
  require_small(g);
  int best = g.n;
  for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
    bool covers = true;
    for (const auto& [u, v] : g.edges)
      if (!((mask >> u) & 1u) && !((mask >> v) & 1u)) {
        covers = false;
        break;
      }
    if (covers) best = std::min(best, popcount(mask));
  }
  return best;
}

int brute_force_max_independent_set(const SimpleGraph& g) {
  require_small(g);
  int best = 0;
  for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
    bool independent = true;
    for (const auto& [u, v] : g.edges)
      if (((mask >> u) & 1u) && ((mask >> v) & 1u)) {
        independent = false;
        break;
      }
    if (independent) best = std::max(best, popcount(mask));
  }
  return best;
}

GadgetReport predict_and_verify(const GadgetSpec& spec, int k) {
  GadgetReport rep;
  rep.variant = spec.variant;
  rep.claimed_k = k;

  const long long n = spec.graph.n;
  Instance inst = spec.variant == GadgetVariant::independent_set
                      ? build_is_gadget(spec.graph)
                      : build_vc_gadget(spec.graph, spec.variant);
  Criterion crit;
  switch (spec.variant) {
    case GadgetVariant::fc:
    case GadgetVariant::independent_set:
      crit = Criterion::fc_max;
      break;
    case GadgetVariant::generous:
      crit = Criterion::generous;
      break;
    case GadgetVariant::egalitarian:
      crit = Criterion::egalitarian;
      break;
    default:
      throw std::logic_error("unknown gadget variant");
  }
  rep.brute_k = spec.variant == GadgetVariant::independent_set
                    ? brute_force_max_independent_set(spec.graph)
                    : brute_force_min_vertex_cover(spec.graph);
  switch (spec.variant) {
    case GadgetVariant::fc:
      rep.predicted = 14 * n - rep.brute_k;
      break;
    case GadgetVariant::generous:
      rep.predicted = 3 * n + rep.brute_k;
      break;
    case GadgetVariant::egalitarian:
      rep.predicted = 26 * n + rep.brute_k;
      break;
    case GadgetVariant::independent_set:
      rep.predicted = rep.brute_k;
      break;
  }

  CriterionResult res = solve_criterion(inst, crit);
  if (res.status != CriterionStatus::optimal)
    throw std::runtime_error("gadget solve did not finish: " +
                             status_label(res.status));
  rep.actual = *res.objective;
  rep.ok = rep.claimed_k == rep.brute_k && rep.actual == rep.predicted;
  return rep;
}

}  // namespace sri
