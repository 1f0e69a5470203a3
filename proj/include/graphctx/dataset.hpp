#pragma once

#include <string>
#include <vector>

#include "graphctx/task.hpp"

namespace graphctx {

// Reads every instance file under <root>/<task dir> (or under root itself
// when no task directory exists), recomputes the ground truth with the exact
// solvers, and cross-checks any stored answer. Instances come back sorted by
// id with a natural numeric ordering.
std::vector<TaskInstance> load_dataset(const std::string& root, TaskKind task);

// Parses one instance file. Format, one field per line:
//   # comment
//   n: <node count>            (optional)
//   Graph: (u,v) (u,v,w) ...
//   Question: <text>
//   Answer: <stored answer>    (optional; verified against the oracle)
TaskInstance parse_instance_file(const std::string& path, TaskKind task);

// Writes an instance in the same format, including its oracle answer.
void write_instance_file(const TaskInstance& instance,
                         const std::string& path);

// Digit-aware ordering: "g2" sorts before "g10".
bool natural_less(const std::string& a, const std::string& b);

}  // namespace graphctx
