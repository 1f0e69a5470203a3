#include "graphctx/oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "graphctx/error.hpp"

namespace graphctx {

namespace {

void require_undirected(const Graph& g, const char* op) {
  if (g.directed()) {
    fail(Errc::directed_graph_rejected,
         std::string(op) + " operates on undirected graphs");
  }
}

void require_node(const Graph& g, NodeId v) {
  if (!g.has_node(v)) {
    fail(Errc::unknown_node, "node " + std::to_string(v) + " not in graph");
  }
}

// mt19937_64 output reduced without std::uniform_int_distribution, whose
// sequence is implementation-defined; this keeps instances reproducible
// across standard libraries.
long long bounded(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(
                                               hi - lo + 1));
}

bool coin(std::mt19937_64& rng, double p) {
  return (rng() >> 11) * 0x1.0p-53 < p;
}

}  // namespace

std::string task_name(TaskKind task) {
  switch (task) {
    case TaskKind::connectivity: return "connectivity";
    case TaskKind::cycle_detection: return "cycle";
    case TaskKind::topological_sort: return "toposort";
    case TaskKind::shortest_path: return "shortest_path";
  }
  return "unknown";
}

std::optional<TaskKind> task_from_name(std::string_view name) {
  if (name == "connectivity") return TaskKind::connectivity;
  if (name == "cycle") return TaskKind::cycle_detection;
  if (name == "toposort") return TaskKind::topological_sort;
  if (name == "shortest_path") return TaskKind::shortest_path;
  return std::nullopt;
}

bool task_is_directed(TaskKind task) {
  return task == TaskKind::topological_sort;
}

bool is_connected(const Graph& g, NodeId s, NodeId t) {
  require_undirected(g, "is_connected");
  require_node(g, s);
  require_node(g, t);
  if (s == t) return true;
  std::set<NodeId> seen{s};
  std::deque<NodeId> frontier{s};
  while (!frontier.empty()) {
    NodeId v = frontier.front();
    frontier.pop_front();
    for (NodeId w : g.neighbors(v)) {
      if (w == t) return true;
      if (seen.insert(w).second) frontier.push_back(w);
    }
  }
  return false;
}

bool has_cycle(const Graph& g) {
  require_undirected(g, "has_cycle");
  // Iterative DFS with parent tracking; any non-parent back edge closes a
  // cycle of length >= 3 because self-loops and parallel edges are excluded.
  std::set<NodeId> visited;
  for (NodeId root : g.nodes()) {
    if (visited.count(root) > 0) continue;
    std::vector<std::pair<NodeId, NodeId>> stack{{root, -1}};
    while (!stack.empty()) {
      auto [v, parent] = stack.back();
      stack.pop_back();
      if (!visited.insert(v).second) continue;
      for (NodeId w : g.neighbors(v)) {
        if (w == parent) continue;
        if (visited.count(w) > 0) return true;
        stack.push_back({w, v});
      }
    }
  }
  return false;
}

std::vector<NodeId> solve_toposort(const Graph& g) {
  if (!g.directed()) {
    fail(Errc::undirected_graph_rejected,
         "solve_toposort operates on directed graphs");
  }
  std::map<NodeId, int> indegree;
  for (NodeId v : g.nodes()) indegree[v] = 0;
  for (const Edge& e : g.edges()) indegree[e.v]++;

  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [v, d] : indegree) {
    if (d == 0) ready.push(v);
  }
  std::vector<NodeId> order;
  order.reserve(g.node_count());
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeId w : g.neighbors(v)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != g.node_count()) {
    fail(Errc::cyclic_graph, "graph has no topological order");
  }
  return order;
}

bool validate_toposort(const Graph& g, const std::vector<NodeId>& order) {
  if (order.size() != g.node_count()) return false;
  std::map<NodeId, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!g.has_node(order[i])) return false;
    if (!position.emplace(order[i], i).second) return false;
  }
  for (const Edge& e : g.edges()) {
    if (position.at(e.u) >= position.at(e.v)) return false;
  }
  return true;
}

ShortestPathResult shortest_path(const Graph& g, NodeId s, NodeId t) {
  require_undirected(g, "shortest_path");
  require_node(g, s);
  require_node(g, t);
  if (s == t) return {{s}, Rational(0)};

  // Dijkstra from t gives the remaining distance at every node; the witness
  // is then rebuilt greedily, always taking the smallest neighbor that stays
  // on an optimal route, which yields the lexicographically smallest path.
  std::map<NodeId, Rational> dist;
  std::set<NodeId> done;
  dist[t] = Rational(0);
  using Item = std::pair<Rational, NodeId>;
  auto cmp = [](const Item& a, const Item& b) {
    if (a.first != b.first) return b.first < a.first;
    return b.second < a.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
  queue.push({Rational(0), t});
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (!done.insert(v).second) continue;
    for (NodeId w : g.neighbors(v)) {
      Rational nd = d + *g.edge_weight(v, w);
      auto it = dist.find(w);
      if (it == dist.end() || nd < it->second) {
        dist[w] = nd;
        queue.push({nd, w});
      }
    }
  }

  auto at_source = dist.find(s);
  if (at_source == dist.end()) {
    fail(Errc::unreachable, "no path between node " + std::to_string(s) +
                                " and node " + std::to_string(t));
  }

  std::vector<NodeId> path{s};
  NodeId current = s;
  while (current != t) {
    NodeId next = -1;
    for (NodeId w : g.neighbors(current)) {
      auto it = dist.find(w);
      if (it == dist.end()) continue;
      if (*g.edge_weight(current, w) + it->second == dist.at(current)) {
        next = w;
        break;
      }
    }
    if (next < 0) {
      fail(Errc::unreachable, "optimal successor missing during rebuild");
    }
    path.push_back(next);
    current = next;
  }
  return {path, at_source->second};
}

std::string task_question(TaskKind task, std::optional<NodeId> source,
                          std::optional<NodeId> target) {
  std::ostringstream out;
  switch (task) {
    case TaskKind::connectivity:
      out << "Is there a path between node " << *source << " and node "
          << *target << "?";
      break;
    case TaskKind::cycle_detection:
      out << "Is there a cycle in this graph?";
      break;
    case TaskKind::topological_sort:
      out << "Give a valid topological ordering of all the nodes.";
      break;
    case TaskKind::shortest_path:
      out << "What is the shortest path between node " << *source
          << " and node " << *target << ", and what is its total weight?";
      break;
  }
  return out.str();
}

TaskInstance generate_instance(TaskKind task, const GeneratorParams& params,
                               std::uint64_t seed) {
  if (params.n < 1 || params.edge_density < 0.0 ||
      params.edge_density > 1.0 || params.weight_lo < 1 ||
      params.weight_lo > params.weight_hi) {
    fail(Errc::invalid_params, "bad generator parameters");
  }
  std::mt19937_64 rng(seed);

  const bool directed = task_is_directed(task);
  const bool weighted = task == TaskKind::shortest_path;
  Graph g(directed);
  for (NodeId v = 0; v < params.n; ++v) g.add_node(v);

  if (directed) {
    // Random DAG: edges only run forward along a random permutation.
    std::vector<NodeId> perm(params.n);
    for (int i = 0; i < params.n; ++i) perm[i] = i;
    for (int i = params.n - 1; i > 0; --i) {
      std::swap(perm[i], perm[bounded(rng, 0, i)]);
    }
    for (int i = 0; i < params.n; ++i) {
      for (int j = i + 1; j < params.n; ++j) {
        if (coin(rng, params.edge_density)) g.add_edge(perm[i], perm[j]);
      }
    }
  } else {
    for (int u = 0; u < params.n; ++u) {
      for (int v = u + 1; v < params.n; ++v) {
        if (!coin(rng, params.edge_density)) continue;
        Rational w(weighted ? bounded(rng, params.weight_lo, params.weight_hi)
                            : 1);
        g.add_edge(u, v, w);
      }
    }
  }

  TaskInstance instance;
  instance.task = task;
  instance.graph = g;
  std::ostringstream origin;
  origin << "generated(task=" << task_name(task) << ",n=" << params.n
         << ",density=" << params.edge_density << ",seed=" << seed << ")";
  instance.origin = origin.str();
  std::ostringstream id;
  id << task_name(task) << "-gen-" << seed;
  instance.id = id.str();

  switch (task) {
    case TaskKind::connectivity: {
      NodeId s = static_cast<NodeId>(bounded(rng, 0, params.n - 1));
      NodeId t = static_cast<NodeId>(bounded(rng, 0, params.n - 1));
      instance.source = s;
      instance.target = t;
      instance.truth = BoolTruth{is_connected(g, s, t)};
      break;
    }
    case TaskKind::cycle_detection:
      instance.truth = BoolTruth{has_cycle(g)};
      break;
    case TaskKind::topological_sort:
      instance.truth = OrderTruth{solve_toposort(g)};
      break;
    case TaskKind::shortest_path: {
      NodeId s = static_cast<NodeId>(bounded(rng, 0, params.n - 1));
      NodeId t = static_cast<NodeId>(bounded(rng, 0, params.n - 1));
      instance.source = s;
      instance.target = t;
      PathTruth truth;
      try {
        auto result = shortest_path(g, s, t);
        truth.witness = result.path;
        truth.optimal_weight = result.total_weight;
        truth.reachable = true;
      } catch (const Error& e) {
        if (e.code() != Errc::unreachable) throw;
        truth.reachable = false;
      }
      instance.truth = truth;
      break;
    }
  }
  instance.question = task_question(task, instance.source, instance.target);
  return instance;
}

}  // namespace graphctx
