#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "graphctx/graph.hpp"
#include "graphctx/reference_graph.hpp"

namespace graphctx {

// Injective assignment of query-graph node ids to reference-graph node ids.
using NodeMapping = std::map<NodeId, NodeId>;

struct MatchResult {
  Graph best_subgraph;       // induced subgraph of the reference skeleton
  NodeMapping mapping;       // query node -> reference node
  int ged_score = 0;         // edge mismatches under the best bijection
  Rational weight_penalty;   // weight-difference penalty under that bijection
  Rational combined_score;   // ged_score + weight_penalty
  int candidates_examined = 0;
  bool ged_exact = true;     // false when the swap-refinement fallback ran
};

// At most `cap` distinct connected induced subgraphs of `ref_skeleton` with
// exactly k nodes, each one induced with its reference weights. Enumeration
// order is a seeded permutation of an exact enumeration, so the output is
// deterministic per seed and complete whenever the total count fits the cap.
std::vector<Graph> generate_subgraphs(const Graph& ref_skeleton, int k,
                                      int cap, std::uint64_t seed);

struct GedResult {
  int distance = 0;
  NodeMapping mapping;
  bool exact = true;
};

// Minimum number of edge mismatches over all bijections between two graphs
// of equal node count, with the lexicographically smallest optimal bijection
// (by ascending query node order). Exhaustive up to 8 nodes; larger inputs
// fall back to a greedy assignment refined by pairwise swaps.
GedResult graph_edit_distance(const Graph& gq, const Graph& gsub);

// Sum over query edges of |query weight - reference weight| when the mapped
// pair is an edge of gsub, else `max_edge_weight` per missing edge.
Rational edge_weight_penalty(const Graph& gq, const Graph& gsub,
                             const NodeMapping& mapping,
                             Rational max_edge_weight = Rational(5));

// Scores every generated candidate with GED plus the weight penalty and
// keeps the first candidate that strictly improves the combined score.
MatchResult best_subgraph(const Graph& gq, const ReferenceGraph& ref, int cap,
                          std::uint64_t seed);

}  // namespace graphctx
