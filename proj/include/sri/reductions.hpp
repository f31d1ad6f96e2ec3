#pragma once
// Hardness-gadget builders: encode a graph as an SRI instance whose optimum
// under a chosen criterion is a closed-form function of the graph's minimum
// vertex cover (cubic graphs, 18 agents per vertex) or maximum independent
// set (any graph, 6 agents per vertex). predict_and_verify recomputes the
// graph parameter by brute force, solves the gadget, and compares.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sri/model.hpp"

namespace sri {

struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized (lo, hi), sorted
  std::vector<std::vector<int>> adj;       // ascending neighbor lists

  // Validates vertex range, self-loops, and multi-edges.
  static SimpleGraph from_edges(int n, std::vector<std::pair<int, int>> edges);
  bool is_cubic() const;
};

// Text format: first line "n m", then m lines "u v" with 1-based vertices.
// '#' starts a comment. Throws ParseError on malformed input.
SimpleGraph parse_graph(const std::string& text);

enum class GadgetVariant { fc, generous, egalitarian, independent_set };

// Text names: fc | generous | egalitarian | independent-set.
std::string variant_name(GadgetVariant v);
std::optional<GadgetVariant> parse_variant(const std::string& name);

struct GadgetSpec {
  GadgetVariant variant{};
  SimpleGraph graph;
};

// Agent-id layout, vertex index i (0-based):
//   vertex-cover gadget: 18 agents per vertex at base i*18;
//     v copies 1..8 -> base+0..7, w copies 1..5 -> base+8..12,
//     x copies 1..5 -> base+13..17
//   independent-set gadget: 6 agents per vertex at base i*6;
//     roles v,w,x,y,a,b -> base+0..5
AgentId vc_agent(int vertex, char role, int copy);
AgentId is_agent(int vertex, char role);

// 18n-agent instance; variant selects the v7 list ordering (the generous
// reduction demotes w4 to v7's last choice). Throws std::invalid_argument
// on non-cubic graphs or the independent-set variant.
Instance build_vc_gadget(const SimpleGraph& g, GadgetVariant variant);

// 6n-agent instance; any graph.
Instance build_is_gadget(const SimpleGraph& g);

// Exhaustive over vertex subsets; graphs up to 16 vertices.
int brute_force_min_vertex_cover(const SimpleGraph& g);
int brute_force_max_independent_set(const SimpleGraph& g);

struct GadgetReport {
  GadgetVariant variant{};
  int claimed_k = 0;    // caller-supplied graph parameter
  int brute_k = 0;      // brute-forced min VC / max IS
  long long predicted = 0;  // closed form at brute_k
  long long actual = 0;     // solver optimum on the gadget
  bool ok = false;          // claimed_k == brute_k && actual == predicted
};

// Closed forms (n = graph vertices, k = brute-forced parameter):
//   fc: 14n - k first choices; generous: 3n + k third choices;
//   egalitarian: cost 26n + k; independent-set: k first choices.
GadgetReport predict_and_verify(const GadgetSpec& spec, int k);

}  // namespace sri
