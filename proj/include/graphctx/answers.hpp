#pragma once

#include <string>

#include "graphctx/task.hpp"

namespace graphctx {

// The reply a perfectly informed model would give for an instance, phrased so
// that the answer extractor recovers it. Shared by the oracle-backed mock and
// the few-shot exemplar renderer.
std::string oracle_answer_text(const TaskInstance& instance);

// A fluent but systematically wrong reply: negated booleans, an invalid
// ordering, a claimed path where none exists. Grades false on every task.
std::string adversarial_answer_text(const TaskInstance& instance);

// A short worked explanation of the oracle answer, used by chain-of-thought
// exemplars.
std::string reasoning_text(const TaskInstance& instance);

}  // namespace graphctx
