#pragma once

// Independent reference implementations used only by tests. Everything here
// is deliberately naive (transitive closure, exhaustive path and bijection
// search) and shares no code paths with the library algorithms it checks.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "graphctx/graph.hpp"

namespace graphctx::testsupport {

// Reachability via boolean transitive closure.
inline bool reachable_closure(const Graph& g, NodeId s, NodeId t) {
  std::vector<NodeId> nodes(g.nodes().begin(), g.nodes().end());
  const std::size_t n = nodes.size();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = i;
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const Edge& e : g.edges()) {
    reach[index.at(e.u)][index.at(e.v)] = true;
    if (!g.directed()) reach[index.at(e.v)][index.at(e.u)] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach[index.at(s)][index.at(t)];
}

namespace detail {

inline bool cycle_search(const Graph& g, NodeId start, NodeId current,
                         std::vector<NodeId>& path) {
  for (NodeId next : g.neighbors(current)) {
    if (next == start && path.size() >= 3) return true;
    if (std::find(path.begin(), path.end(), next) != path.end()) continue;
    path.push_back(next);
    if (cycle_search(g, start, next, path)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace detail

// Exhaustive simple-path search for a cycle of length >= 3.
inline bool has_simple_cycle_exhaustive(const Graph& g) {
  for (NodeId start : g.nodes()) {
    std::vector<NodeId> path{start};
    if (detail::cycle_search(g, start, start, path)) return true;
  }
  return false;
}

struct EnumeratedShortestPath {
  std::vector<NodeId> path;  // lexicographically smallest optimal path
  Rational weight;
};

namespace detail {

inline void path_search(const Graph& g, NodeId current, NodeId t,
                        std::vector<NodeId>& path, Rational cost,
                        std::optional<EnumeratedShortestPath>& best) {
  if (current == t) {
    if (!best || cost < best->weight ||
        (cost == best->weight && path < best->path)) {
      best = EnumeratedShortestPath{path, cost};
    }
    return;
  }
  for (NodeId next : g.neighbors(current)) {
    if (std::find(path.begin(), path.end(), next) != path.end()) continue;
    path.push_back(next);
    path_search(g, next, t, path, cost + *g.edge_weight(current, next), best);
    path.pop_back();
  }
}

}  // namespace detail

// Minimum-weight simple path by exhaustive enumeration; nullopt when t is
// unreachable from s.
inline std::optional<EnumeratedShortestPath> shortest_by_enumeration(
    const Graph& g, NodeId s, NodeId t) {
  std::optional<EnumeratedShortestPath> best;
  std::vector<NodeId> path{s};
  detail::path_search(g, s, t, path, Rational(0), best);
  return best;
}

// Every k-subset of nodes whose induced subgraph is connected.
inline std::vector<std::set<NodeId>> connected_induced_subsets(const Graph& g,
                                                               int k) {
  std::vector<NodeId> nodes(g.nodes().begin(), g.nodes().end());
  std::vector<std::set<NodeId>> out;
  std::vector<bool> pick(nodes.size(), false);
  std::fill(pick.end() - k, pick.end(), true);
  if (static_cast<int>(nodes.size()) < k) return out;
  do {
    std::set<NodeId> subset;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (pick[i]) subset.insert(nodes[i]);
    }
    Graph sub = induced_subgraph(g, subset);
    bool connected = true;
    NodeId first = *subset.begin();
    for (NodeId v : subset) {
      if (!reachable_closure(sub, first, v)) {
        connected = false;
        break;
      }
    }
    if (connected) out.push_back(std::move(subset));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

struct BruteMatch {
  std::set<NodeId> subgraph_nodes;
  std::map<NodeId, NodeId> mapping;
  int mismatches = 0;
  Rational penalty;
  Rational combined;
};

// Minimum combined score over all connected induced k-subgraphs and all
// bijections, computed with its own mismatch and penalty arithmetic.
inline std::optional<BruteMatch> exhaustive_best_match(
    const Graph& query, const Graph& reference_skeleton,
    Rational max_edge_weight) {
  const int k = static_cast<int>(query.node_count());
  std::vector<NodeId> qnodes(query.nodes().begin(), query.nodes().end());
  std::optional<BruteMatch> best;
  for (const auto& subset :
       connected_induced_subsets(reference_skeleton, k)) {
    Graph candidate = induced_subgraph(reference_skeleton, subset);
    std::vector<NodeId> targets(subset.begin(), subset.end());
    std::sort(targets.begin(), targets.end());
    do {
      std::map<NodeId, NodeId> mapping;
      for (std::size_t i = 0; i < qnodes.size(); ++i) {
        mapping[qnodes[i]] = targets[i];
      }
      int mismatches = 0;
      int shared = 0;
      Rational penalty(0);
      for (const Edge& e : query.edges()) {
        auto weight = candidate.edge_weight(mapping.at(e.u), mapping.at(e.v));
        if (weight) {
          ++shared;
          penalty += (e.weight - *weight).abs();
        } else {
          ++mismatches;
          penalty += max_edge_weight;
        }
      }
      mismatches += static_cast<int>(candidate.edge_count()) - shared;
      Rational combined = Rational(mismatches) + penalty;
      if (!best || combined < best->combined) {
        best = BruteMatch{subset, mapping, mismatches, penalty, combined};
      }
    } while (std::next_permutation(targets.begin(), targets.end()));
  }
  return best;
}

}  // namespace graphctx::testsupport
