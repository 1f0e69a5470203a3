#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphctx/gateway.hpp"
#include "graphctx/matcher.hpp"
#include "graphctx/reference_graph.hpp"
#include "graphctx/task.hpp"

namespace graphctx {

enum class StrategyKind {
  zero_shot,
  few_shot,
  zero_cot,
  cot,
  algorithm,
  instruct,
  noun_based,
  got_random,
  got_subgraph,
};

constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::zero_shot,  StrategyKind::few_shot,
    StrategyKind::zero_cot,   StrategyKind::cot,
    StrategyKind::algorithm,  StrategyKind::instruct,
    StrategyKind::noun_based, StrategyKind::got_random,
    StrategyKind::got_subgraph,
};

std::string strategy_name(StrategyKind kind);
std::optional<StrategyKind> strategy_from_name(std::string_view name);

// Character names replace node ids for these strategies.
bool strategy_needs_mapping(StrategyKind kind);
// Few-shot style strategies require at least one exemplar instance.
bool strategy_needs_exemplars(StrategyKind kind);
// The consolidated task-level context block is injected for these.
bool strategy_uses_task_context(StrategyKind kind);

struct PromptStrategy {
  StrategyKind kind = StrategyKind::zero_shot;
  int exemplar_count = 2;
};

// The task-level context block: produced once per task and embedded verbatim
// into every prompt of that task.
struct TaskContext {
  TaskKind task = TaskKind::connectivity;
  std::string text;
  std::vector<std::pair<std::string, std::string>> provenance;  // label, draft
};

struct RenderedPrompt {
  std::string instance_id;
  PromptStrategy strategy;
  std::string text;
  std::optional<NodeMapping> mapping;
  std::optional<MatchResult> match;
};

// Prompt text sources, one per (task, strategy). Placeholders: {{graph}},
// {{question}}, {{context}}, {{mapping}}, {{exemplars}}.
class TemplateSet {
 public:
  static TemplateSet builtin();
  // Built-ins plus per-file overrides from <dir>/<task>/<strategy>.txt.
  static TemplateSet with_overrides(const std::string& directory);

  const std::string& text(TaskKind task, StrategyKind strategy) const;

 private:
  std::map<std::pair<TaskKind, StrategyKind>, std::string> templates_;
};

// Injective map of query nodes onto characters drawn uniformly without
// replacement; deterministic per seed.
NodeMapping assign_random_mapping(const Graph& gq, const ReferenceGraph& ref,
                                  std::uint64_t seed);

// Structure-aware assignment through the matcher.
std::pair<NodeMapping, MatchResult> assign_matched_mapping(
    const Graph& gq, const ReferenceGraph& ref, int cap, std::uint64_t seed);

struct RenderInputs {
  const NodeMapping* mapping = nullptr;
  const MatchResult* match = nullptr;
  const TaskContext* context = nullptr;
  const ReferenceGraph* ref = nullptr;
  const std::vector<TaskInstance>* exemplars = nullptr;
  const TemplateSet* templates = nullptr;  // null uses the built-ins
};

// Deterministic text assembly for one instance under one strategy.
RenderedPrompt render_prompt(const TaskInstance& instance,
                             const PromptStrategy& strategy,
                             const RenderInputs& inputs = {});

// Merges draft context blocks into one TaskContext. A single draft passes
// through untouched; two or more cost exactly one consolidator call.
TaskContext consolidate_task_context(
    TaskKind task,
    const std::vector<std::pair<std::string, std::string>>& drafts,
    CompletionClient& consolidator, const CompletionRequest& request_defaults);

}  // namespace graphctx
