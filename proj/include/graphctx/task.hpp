#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphctx/graph.hpp"

namespace graphctx {

enum class TaskKind {
  connectivity,
  cycle_detection,
  topological_sort,
  shortest_path,
};

constexpr TaskKind kAllTasks[] = {
    TaskKind::connectivity,
    TaskKind::cycle_detection,
    TaskKind::topological_sort,
    TaskKind::shortest_path,
};

// Canonical lowercase names used for CLI values, dataset directories and
// report keys: connectivity, cycle, toposort, shortest_path.
std::string task_name(TaskKind task);
std::optional<TaskKind> task_from_name(std::string_view name);

bool task_is_directed(TaskKind task);

struct BoolTruth {
  bool value = false;
};

// A witness order; grading accepts any order that validates, not just this one.
struct OrderTruth {
  std::vector<NodeId> witness;
};

// Witness path plus the optimal weight; grading accepts any path achieving the
// optimum. `reachable == false` marks disconnected source/target pairs.
struct PathTruth {
  std::vector<NodeId> witness;
  Rational optimal_weight;
  bool reachable = true;
};

using GroundTruth = std::variant<BoolTruth, OrderTruth, PathTruth>;

struct TaskInstance {
  std::string id;
  TaskKind task = TaskKind::connectivity;
  Graph graph;
  // Query endpoints for connectivity and shortest path; unset otherwise.
  std::optional<NodeId> source;
  std::optional<NodeId> target;
  std::string question;
  GroundTruth truth;
  // Dataset path or generator descriptor this instance came from.
  std::string origin;
};

}  // namespace graphctx
