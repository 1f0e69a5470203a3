#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphctx/rational.hpp"

namespace graphctx {

using NodeId = int;

struct Edge {
  NodeId u;
  NodeId v;
  Rational weight;

  bool operator==(const Edge& other) const {
    return u == other.u && v == other.v && weight == other.weight;
  }
};

// Node/edge structure shared by every part of the toolkit. Undirected edges
// are stored once under the canonical orientation u < v; self-loops,
// duplicates and non-positive weights are rejected at insertion. Values are
// treated as immutable once built, so they can be shared across workers.
class Graph {
 public:
  explicit Graph(bool directed = false) : directed_(directed) {}

  bool directed() const { return directed_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<NodeId>& nodes() const { return nodes_; }

  void add_node(NodeId v);
  void add_edge(NodeId u, NodeId v, Rational weight = Rational(1));

  bool has_node(NodeId v) const { return nodes_.count(v) > 0; }
  // For undirected graphs the orientation of the query does not matter.
  bool has_edge(NodeId u, NodeId v) const;
  std::optional<Rational> edge_weight(NodeId u, NodeId v) const;

  // Neighbors reachable from v (out-neighbors when directed), ascending.
  std::vector<NodeId> neighbors(NodeId v) const;

  // Edges in canonical ascending (u, v) order.
  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const {
    return directed_ == other.directed_ && nodes_ == other.nodes_ &&
           edges_ == other.edges_;
  }
  bool operator!=(const Graph& other) const { return !(*this == other); }

 private:
  std::pair<NodeId, NodeId> canonical(NodeId u, NodeId v) const;

  bool directed_;
  std::set<NodeId> nodes_;
  std::map<std::pair<NodeId, NodeId>, Rational> edges_;
};

struct ParseOptions {
  bool directed = false;
  std::optional<int> declared_n;
  // Strict mode treats a repeated canonical pair as an error; lenient mode
  // keeps the first occurrence and records a warning.
  bool lenient_duplicates = false;
  std::vector<std::string>* warnings = nullptr;
};

// Parses the benchmark edge-list text format: whitespace-separated tokens
// "(u,v)" or "(u,v,w)". Missing weights default to 1.
Graph parse_edge_list(std::string_view text, const ParseOptions& options);
Graph parse_edge_list(std::string_view text, bool directed = false,
                      std::optional<int> declared_n = std::nullopt);

// Canonical ascending edge order, single spaces, no trailing whitespace,
// weight suffix only when != 1. parse(serialize(g)) reconstructs g exactly.
std::string serialize_edge_list(const Graph& g);

// Subgraph of g induced on `keep`: those nodes and every edge of g with both
// endpoints in the set, weights preserved.
Graph induced_subgraph(const Graph& g, const std::set<NodeId>& keep);

// Isomorphic copy of g under an injective node rename.
Graph relabel(const Graph& g, const std::map<NodeId, NodeId>& mapping);

// Forgets edge direction. When both orientations of a pair exist, the weight
// of the canonical (u < v) orientation wins.
Graph undirected_skeleton(const Graph& g);

}  // namespace graphctx
