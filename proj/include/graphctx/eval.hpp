#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphctx/matcher.hpp"
#include "graphctx/reference_graph.hpp"
#include "graphctx/task.hpp"

namespace graphctx {

struct BooleanAnswer {
  bool yes = false;
};

struct OrderAnswer {
  std::vector<NodeId> order;
};

struct PathAnswer {
  std::vector<NodeId> path;
  std::optional<Rational> stated_weight;
};

struct UnparsedAnswer {};

using ParsedAnswer =
    std::variant<BooleanAnswer, OrderAnswer, PathAnswer, UnparsedAnswer>;

// Character name -> query node id, for answers phrased with names.
using ReverseNameMap = std::map<std::string, NodeId>;

ReverseNameMap reverse_name_map(const NodeMapping& mapping,
                                const ReferenceGraph& ref);

// Rule-based extraction; a total function, failures become UnparsedAnswer.
// Booleans take the last standalone yes/no; orders and paths take the last
// maximal integer sequence joined by commas, arrows, or whitespace; the
// stated weight is the last number after a weight/cost/length cue. Character
// names are reverse-mapped to node ids before scanning when `names` is given.
ParsedAnswer extract_answer(TaskKind task, const std::string& text,
                            const ReverseNameMap* names = nullptr);

struct GradeResult {
  std::string instance_id;
  TaskKind task = TaskKind::connectivity;
  std::string strategy;
  std::string model;
  bool correct = false;  // connectivity, cycle detection, topological sort
  bool path_ok = false;  // shortest path only
  bool weight_ok = false;
  bool both_ok = false;
  std::string response;  // raw model text
  bool from_cache = false;
  std::optional<NodeMapping> mapping;
  std::string error;  // non-empty when the instance failed to process
};

// Task-specific correctness: booleans must match the truth, any valid
// topological order is accepted, and a shortest path counts when it is a
// real s-t path of exactly optimal weight. Disconnected shortest-path
// queries grade correct only on an explicit unreachability assertion.
GradeResult grade(const TaskInstance& instance, const ParsedAnswer& answer,
                  const std::optional<NodeMapping>& mapping = std::nullopt);

struct AccuracyGroup {
  TaskKind task = TaskKind::connectivity;
  std::string strategy;
  std::string model;
  int count = 0;
  int correct = 0;  // boolean-style tasks and toposort
  int path_ok = 0;  // shortest path columns
  int weight_ok = 0;
  int both_ok = 0;
};

struct AccuracyTable {
  std::vector<AccuracyGroup> groups;  // sorted by (task, strategy, model)

  const AccuracyGroup* find(TaskKind task, const std::string& strategy,
                            const std::string& model) const;
};

AccuracyTable aggregate(const std::vector<GradeResult>& results);

// 100 * numerator / denominator with two decimals, half-up: "66.67".
std::string format_percent(int numerator, int denominator);

}  // namespace graphctx
