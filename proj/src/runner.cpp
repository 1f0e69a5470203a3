#include "graphctx/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "graphctx/answers.hpp"
#include "graphctx/cache.hpp"
#include "graphctx/dataset.hpp"
#include "graphctx/detail/seed_mix.hpp"
#include "graphctx/error.hpp"
#include "graphctx/oracles.hpp"

namespace graphctx {

namespace fs = std::filesystem;

namespace {

std::string mock_name(const MockSpec& spec) {
  switch (spec.kind) {
    case MockSpec::Kind::none: return "none";
    case MockSpec::Kind::oracle: return "oracle";
    case MockSpec::Kind::adversarial: return "adversarial";
    case MockSpec::Kind::script: return "script:" + spec.script_path;
  }
  return "none";
}

nlohmann::json config_json(const RunConfig& config) {
  nlohmann::json tasks = nlohmann::json::array();
  for (TaskKind task : config.tasks) tasks.push_back(task_name(task));
  return nlohmann::json{
      {"api_key_env", config.api_key_env},
      {"cache_dir", config.cache_dir},
      {"cap", config.cap},
      {"context_drafts_dir", config.context_drafts_dir},
      {"dataset_root", config.dataset_root},
      {"exemplar_count", config.strategy.exemplar_count},
      {"jobs", config.jobs},
      {"max_tokens", config.max_tokens},
      {"mock", mock_name(config.mock)},
      {"mock_error_rate", config.mock.error_rate},
      {"model", config.model},
      {"provider_url", config.provider_url},
      {"ref_graph", config.ref_graph_path},
      {"seed", config.seed},
      {"strategy", strategy_name(config.strategy.kind)},
      {"tasks", tasks},
      {"temperature", config.temperature},
      {"templates_dir", config.templates_dir},
      {"top_p", config.top_p},
  };
}

void validate_config(const RunConfig& config) {
  if (config.tasks.empty()) {
    fail(Errc::invalid_params, "no tasks selected");
  }
  const bool has_mock = config.mock.kind != MockSpec::Kind::none;
  if (has_mock == !config.provider_url.empty()) {
    fail(Errc::invalid_params,
         "exactly one of a provider URL or a mock must be configured");
  }
  if (strategy_needs_mapping(config.strategy.kind) &&
      config.ref_graph_path.empty()) {
    fail(Errc::invalid_params,
         strategy_name(config.strategy.kind) + " requires --ref-graph");
  }
  if (config.cap < 1) {
    fail(Errc::invalid_params, "cap must be >= 1");
  }
  if (config.jobs < 1) {
    fail(Errc::invalid_params, "jobs must be >= 1");
  }
  if (config.mock.kind == MockSpec::Kind::script && config.jobs > 1) {
    fail(Errc::invalid_params,
         "a scripted mock replays a fixed transcript; run it with --jobs 1");
  }
  if (config.mock.error_rate < 0.0 || config.mock.error_rate > 1.0) {
    fail(Errc::invalid_params, "mock error rate must lie in [0, 1]");
  }
  if (strategy_needs_exemplars(config.strategy.kind) &&
      config.strategy.exemplar_count < 1) {
    fail(Errc::invalid_params,
         strategy_name(config.strategy.kind) + " needs >= 1 exemplar");
  }
}

std::vector<std::pair<std::string, std::string>> load_drafts(
    const std::string& drafts_dir, TaskKind task) {
  std::vector<std::pair<std::string, std::string>> drafts;
  if (drafts_dir.empty()) return drafts;
  fs::path dir = fs::path(drafts_dir) / task_name(task);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return drafts;
  std::vector<std::string> stems;
  std::map<std::string, fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") {
      continue;
    }
    std::string stem = entry.path().stem().string();
    stems.push_back(stem);
    paths[stem] = entry.path();
  }
  std::sort(stems.begin(), stems.end(), natural_less);
  for (const std::string& stem : stems) {
    std::ifstream in(paths[stem]);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
      text.pop_back();
    }
    drafts.emplace_back(stem, std::move(text));
  }
  return drafts;
}

std::vector<TaskInstance> make_exemplars(TaskKind task, int count,
                                         std::uint64_t run_seed) {
  GeneratorParams params;
  params.n = 5;
  params.edge_density = 0.5;
  if (task == TaskKind::shortest_path) {
    params.weight_lo = 1;
    params.weight_hi = 4;
  }
  std::vector<TaskInstance> exemplars;
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = derive_seed(
        run_seed, "exemplar:" + task_name(task) + ":" + std::to_string(i));
    TaskInstance exemplar = generate_instance(task, params, seed);
    exemplar.id = "exemplar-" + std::to_string(i);
    exemplars.push_back(std::move(exemplar));
  }
  return exemplars;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t run_seed, const std::string& key) {
  return detail::splitmix64(detail::splitmix64(run_seed) ^
                            detail::fnv1a(key));
}

std::unique_ptr<CompletionClient> make_mock_client(
    const MockSpec& spec, const std::vector<TaskInstance>& instances,
    std::uint64_t seed) {
  switch (spec.kind) {
    case MockSpec::Kind::script:
      return std::make_unique<ScriptedMockClient>(
          read_script_file(spec.script_path));
    case MockSpec::Kind::oracle: {
      MockClient::Behavior behavior;
      for (const TaskInstance& instance : instances) {
        behavior.replies_by_tag[instance.id] = oracle_answer_text(instance);
        behavior.error_replies_by_tag[instance.id] =
            adversarial_answer_text(instance);
      }
      behavior.fallback_reply =
          "Unified task context: restate the graph precisely, then reason "
          "about the question step by step before answering.";
      behavior.error_rate = spec.error_rate;
      behavior.seed = seed;
      return std::make_unique<MockClient>("mock:oracle", behavior);
    }
    case MockSpec::Kind::adversarial: {
      MockClient::Behavior behavior;
      for (const TaskInstance& instance : instances) {
        behavior.replies_by_tag[instance.id] =
            adversarial_answer_text(instance);
      }
      behavior.fallback_reply =
          "Unified task context: answer from intuition without checking the "
          "edges.";
      return std::make_unique<MockClient>("mock:adversarial", behavior);
    }
    case MockSpec::Kind::none:
      break;
  }
  fail(Errc::invalid_params, "no mock configured");
}

RunReport run_benchmark(const RunConfig& config) {
  validate_config(config);
  const auto start_time = std::chrono::steady_clock::now();

  std::optional<ReferenceGraph> ref;
  if (!config.ref_graph_path.empty()) {
    ref = load_reference_graph(config.ref_graph_path);
  }
  std::optional<TemplateSet> templates;
  if (!config.templates_dir.empty()) {
    templates = TemplateSet::with_overrides(config.templates_dir);
  }

  // Load every task's instances up front: the mock needs the full registry.
  std::map<TaskKind, std::vector<TaskInstance>> instances_by_task;
  std::vector<TaskInstance> all_instances;
  for (TaskKind task : config.tasks) {
    auto instances = load_dataset(config.dataset_root, task);
    all_instances.insert(all_instances.end(), instances.begin(),
                         instances.end());
    instances_by_task.emplace(task, std::move(instances));
  }

  std::unique_ptr<CompletionClient> provider;
  if (!config.provider_url.empty()) {
    HttpClientConfig http;
    http.base_url = config.provider_url;
    http.api_key_env = config.api_key_env;
    provider = std::make_unique<HttpChatClient>(http);
  } else {
    provider = make_mock_client(config.mock, all_instances, config.seed);
  }

  std::optional<ResponseCache> cache;
  std::optional<CachingClient> caching;
  if (!config.cache_dir.empty()) {
    cache.emplace(config.cache_dir);
    caching.emplace(*cache, *provider);
  }
  CompletionClient& client = caching ? static_cast<CompletionClient&>(*caching)
                                     : *provider;

  CompletionRequest request_defaults;
  request_defaults.model = config.model;
  request_defaults.max_tokens = config.max_tokens;
  request_defaults.temperature = config.temperature;
  request_defaults.top_p = config.top_p;

  RunReport report;
  report.config = config_json(config);
  report.config_fingerprint = sha256_hex(report.config.dump());
  long long consolidation_requests = 0;

  for (TaskKind task : config.tasks) {
    const std::vector<TaskInstance>& instances = instances_by_task.at(task);

    // The task context is built once and shared verbatim by every instance.
    std::optional<TaskContext> context;
    if (strategy_uses_task_context(config.strategy.kind)) {
      auto drafts = load_drafts(config.context_drafts_dir, task);
      if (!drafts.empty()) {
        if (drafts.size() >= 2) ++consolidation_requests;
        context = consolidate_task_context(task, drafts, client,
                                           request_defaults);
      }
    }

    std::vector<TaskInstance> exemplars;
    if (strategy_needs_exemplars(config.strategy.kind)) {
      exemplars =
          make_exemplars(task, config.strategy.exemplar_count, config.seed);
    }

    std::vector<GradeResult> slots(instances.size());
    std::atomic<std::size_t> next_index{0};

    auto process_one = [&](std::size_t index) {
      const TaskInstance& instance = instances[index];
      GradeResult result;
      try {
        std::uint64_t instance_seed = derive_seed(config.seed, instance.id);

        std::optional<NodeMapping> mapping;
        std::optional<MatchResult> match;
        if (strategy_needs_mapping(config.strategy.kind)) {
          if (config.strategy.kind == StrategyKind::got_subgraph) {
            auto [assigned, match_result] = assign_matched_mapping(
                instance.graph, *ref, config.cap, instance_seed);
            mapping = std::move(assigned);
            match = std::move(match_result);
          } else {
            mapping =
                assign_random_mapping(instance.graph, *ref, instance_seed);
          }
        }

        RenderInputs inputs;
        inputs.mapping = mapping ? &*mapping : nullptr;
        inputs.match = match ? &*match : nullptr;
        inputs.context = context ? &*context : nullptr;
        inputs.ref = ref ? &*ref : nullptr;
        inputs.exemplars = exemplars.empty() ? nullptr : &exemplars;
        inputs.templates = templates ? &*templates : nullptr;
        RenderedPrompt prompt =
            render_prompt(instance, config.strategy, inputs);

        CompletionRequest request = request_defaults;
        request.prompt = prompt.text;
        request.tag = instance.id;
        CompletionResponse response = client.complete(request);

        std::optional<ReverseNameMap> names;
        if (mapping) names = reverse_name_map(*mapping, *ref);
        ParsedAnswer answer =
            extract_answer(instance.task, response.text,
                           names ? &*names : nullptr);
        result = grade(instance, answer, mapping);
        result.response = response.text;
        result.from_cache = response.from_cache;
      } catch (const std::exception& e) {
        result = GradeResult{};
        result.instance_id = instance.id;
        result.task = instance.task;
        result.error = "instance " + instance.id + ": " + e.what();
      }
      result.strategy = strategy_name(config.strategy.kind);
      result.model = config.model;
      slots[index] = std::move(result);
    };

    if (config.jobs <= 1) {
      for (std::size_t i = 0; i < instances.size(); ++i) process_one(i);
    } else {
      std::vector<std::thread> workers;
      const int worker_count =
          std::min<int>(config.jobs, static_cast<int>(instances.size()));
      for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&]() {
          while (true) {
            std::size_t index = next_index.fetch_add(1);
            if (index >= instances.size()) break;
            process_one(index);
          }
        });
      }
      for (std::thread& worker : workers) worker.join();
    }

    for (GradeResult& slot : slots) {
      report.grades.push_back(std::move(slot));
    }
  }

  report.table = aggregate(report.grades);
  report.provider_calls = provider->call_count();
  report.consolidation_requests = consolidation_requests;
  report.cache_hits = caching ? caching->hit_count() : 0;

  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ",
                std::gmtime(&now));
  report.created_at = stamp;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    start_time)
          .count();
  return report;
}

}  // namespace graphctx
