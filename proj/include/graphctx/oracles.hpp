#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphctx/task.hpp"

namespace graphctx {

// Exact ground-truth solvers for the four benchmark tasks. All of them are
// pure functions over immutable graphs.

// True iff t is reachable from s. s == t counts as connected.
bool is_connected(const Graph& g, NodeId s, NodeId t);

// True iff the undirected graph contains a simple cycle (length >= 3).
bool has_cycle(const Graph& g);

// Deterministic topological order: smallest node id first among the nodes
// whose predecessors are all placed. Throws CyclicGraph when no order exists.
std::vector<NodeId> solve_toposort(const Graph& g);

// True iff `order` is a permutation of the nodes that respects every edge.
// Invalid sequences return false rather than throwing.
bool validate_toposort(const Graph& g, const std::vector<NodeId>& order);

struct ShortestPathResult {
  std::vector<NodeId> path;
  Rational total_weight;
};

// Minimum-weight s-t path with a deterministic tie-break: the
// lexicographically smallest optimal node sequence. s == t yields ([s], 0).
ShortestPathResult shortest_path(const Graph& g, NodeId s, NodeId t);

struct GeneratorParams {
  int n = 8;
  double edge_density = 0.4;
  long long weight_lo = 1;
  long long weight_hi = 1;
};

// Seeded random instance with the oracle truth embedded. Identical arguments
// produce identical instances. Property-test plumbing; benchmark accuracy
// runs ingest dataset files instead.
TaskInstance generate_instance(TaskKind task, const GeneratorParams& params,
                               std::uint64_t seed);

// The canonical question line for a task, e.g. "Is there a path between node
// 0 and node 2?". Shared by the generator, the dataset writer and prompts.
std::string task_question(TaskKind task, std::optional<NodeId> source,
                          std::optional<NodeId> target);

}  // namespace graphctx
