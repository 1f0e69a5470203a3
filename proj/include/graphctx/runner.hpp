#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "graphctx/context.hpp"
#include "graphctx/report.hpp"

namespace graphctx {

struct MockSpec {
  enum class Kind { none, oracle, adversarial, script };
  Kind kind = Kind::none;
  std::string script_path;
  double error_rate = 0.0;  // oracle mock only
};

struct RunConfig {
  std::vector<TaskKind> tasks;
  PromptStrategy strategy;
  std::string model = "mock";
  std::string provider_url;  // empty selects the mock
  std::string api_key_env;
  MockSpec mock;
  std::string dataset_root;
  std::string ref_graph_path;      // required by name-bearing strategies
  std::string context_drafts_dir;  // optional: <dir>/<task>/*.txt
  std::string templates_dir;       // optional template overrides
  std::uint64_t seed = 0;
  int cap = 25;
  int max_tokens = 512;
  double temperature = 0.001;
  double top_p = 0.95;
  std::string cache_dir;  // empty disables caching
  int jobs = 1;
};

// Builds a mock client for a set of instances: the oracle mock answers from
// each instance's ground truth (optionally flipping a seeded fraction), the
// adversarial mock is wrong everywhere.
std::unique_ptr<CompletionClient> make_mock_client(
    const MockSpec& spec, const std::vector<TaskInstance>& instances,
    std::uint64_t seed);

// One pipeline run: per task, build the task context once, then per instance
// assign a mapping if needed, render, complete (through the cache when
// configured), extract and grade. Exactly one completion call per instance
// on a cold cache, plus at most one consolidation call per task.
RunReport run_benchmark(const RunConfig& config);

// Per-instance seed derivation, stable regardless of processing order.
std::uint64_t derive_seed(std::uint64_t run_seed, const std::string& key);

}  // namespace graphctx
