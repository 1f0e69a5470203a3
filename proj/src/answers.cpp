#include "graphctx/answers.hpp"

#include <sstream>

#include "graphctx/oracles.hpp"

namespace graphctx {

namespace {

std::string join_ids(const std::vector<NodeId>& ids, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out << sep;
    out << ids[i];
  }
  return out.str();
}

std::string yes_no_path(bool yes, NodeId s, NodeId t) {
  std::ostringstream out;
  if (yes) {
    out << "Yes, there is a path between node " << s << " and node " << t
        << ".";
  } else {
    out << "No, there is no path between node " << s << " and node " << t
        << ".";
  }
  return out.str();
}

}  // namespace

std::string oracle_answer_text(const TaskInstance& instance) {
  switch (instance.task) {
    case TaskKind::connectivity:
      return yes_no_path(std::get<BoolTruth>(instance.truth).value,
                         *instance.source, *instance.target);
    case TaskKind::cycle_detection:
      return std::get<BoolTruth>(instance.truth).value
                 ? "Yes, there is a cycle in this graph."
                 : "No, there is no cycle in this graph.";
    case TaskKind::topological_sort: {
      const auto& truth = std::get<OrderTruth>(instance.truth);
      return "A valid topological ordering is: " +
             join_ids(truth.witness, ", ") + ".";
    }
    case TaskKind::shortest_path: {
      const auto& truth = std::get<PathTruth>(instance.truth);
      if (!truth.reachable) {
        return yes_no_path(false, *instance.source, *instance.target);
      }
      return "The shortest path is " + join_ids(truth.witness, " -> ") +
             " with total weight " + truth.optimal_weight.str() + ".";
    }
  }
  return {};
}

std::string adversarial_answer_text(const TaskInstance& instance) {
  switch (instance.task) {
    case TaskKind::connectivity:
      return yes_no_path(!std::get<BoolTruth>(instance.truth).value,
                         *instance.source, *instance.target);
    case TaskKind::cycle_detection:
      return std::get<BoolTruth>(instance.truth).value
                 ? "No, there is no cycle in this graph."
                 : "Yes, there is a cycle in this graph.";
    case TaskKind::topological_sort: {
      const auto& truth = std::get<OrderTruth>(instance.truth);
      if (instance.graph.edge_count() == 0) {
        // Every permutation of an edgeless graph is valid, so the only wrong
        // reply is one that parses to nothing.
        return "I cannot determine an ordering for this graph.";
      }
      std::vector<NodeId> reversed(truth.witness.rbegin(),
                                   truth.witness.rend());
      return "A valid topological ordering is: " + join_ids(reversed, ", ") +
             ".";
    }
    case TaskKind::shortest_path: {
      const auto& truth = std::get<PathTruth>(instance.truth);
      if (!truth.reachable) {
        std::ostringstream out;
        out << "The shortest path is " << *instance.source << " -> "
            << *instance.target << " with total weight 1.";
        return out.str();
      }
      return yes_no_path(false, *instance.source, *instance.target);
    }
  }
  return {};
}

std::string reasoning_text(const TaskInstance& instance) {
  switch (instance.task) {
    case TaskKind::connectivity: {
      if (std::get<BoolTruth>(instance.truth).value) {
        auto witness =
            shortest_path(instance.graph, *instance.source, *instance.target);
        return "Following the edges " + join_ids(witness.path, " -> ") +
               " links the two query nodes.";
      }
      std::ostringstream out;
      out << "Exploring every node reachable from node " << *instance.source
          << " never arrives at node " << *instance.target << ".";
      return out.str();
    }
    case TaskKind::cycle_detection:
      return std::get<BoolTruth>(instance.truth).value
                 ? "Walking the edges eventually returns to a node that was "
                   "already visited, which closes a cycle."
                 : "Every walk along the edges terminates without revisiting "
                   "a node, so the graph is acyclic.";
    case TaskKind::topological_sort:
      return "Repeatedly output a node whose incoming edges are all "
             "satisfied, removing it from the graph.";
    case TaskKind::shortest_path: {
      const auto& truth = std::get<PathTruth>(instance.truth);
      if (!truth.reachable) {
        return "The two query nodes lie in different connected components.";
      }
      return "Comparing the candidate routes, " +
             join_ids(truth.witness, " -> ") + " totals " +
             truth.optimal_weight.str() + ", and no other route costs less.";
    }
  }
  return {};
}

}  // namespace graphctx
