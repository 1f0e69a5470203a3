#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphctx/answers.hpp"
#include "graphctx/cache.hpp"
#include "graphctx/context.hpp"
#include "graphctx/dataset.hpp"
#include "graphctx/error.hpp"
#include "graphctx/eval.hpp"
#include "graphctx/matcher.hpp"
#include "graphctx/oracles.hpp"
#include "graphctx/report.hpp"
#include "graphctx/runner.hpp"

namespace {

using namespace graphctx;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitHardError = 1;
constexpr int kExitConfigError = 2;

std::vector<TaskKind> parse_task_list(const std::string& value) {
  std::vector<TaskKind> tasks;
  if (value == "all") {
    tasks.assign(std::begin(kAllTasks), std::end(kAllTasks));
    return tasks;
  }
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    auto task = task_from_name(item);
    if (!task) {
      fail(Errc::invalid_params,
           "unknown task '" + item +
               "' (expected connectivity, cycle, toposort, shortest_path "
               "or all)");
    }
    tasks.push_back(*task);
  }
  if (tasks.empty()) fail(Errc::invalid_params, "no tasks given");
  return tasks;
}

MockSpec parse_mock(const std::string& value, double error_rate) {
  MockSpec spec;
  spec.error_rate = error_rate;
  if (value.empty()) {
    spec.kind = MockSpec::Kind::none;
  } else if (value == "oracle") {
    spec.kind = MockSpec::Kind::oracle;
  } else if (value == "adversarial") {
    spec.kind = MockSpec::Kind::adversarial;
  } else if (value.rfind("script:", 0) == 0) {
    spec.kind = MockSpec::Kind::script;
    spec.script_path = value.substr(7);
  } else {
    fail(Errc::invalid_params,
         "unknown mock '" + value +
             "' (expected oracle, adversarial, or script:<file>)");
  }
  return spec;
}

ReportFormat parse_format(const std::string& value) {
  if (value == "json") return ReportFormat::json;
  if (value == "markdown") return ReportFormat::markdown;
  fail(Errc::invalid_params, "unknown format '" + value + "'");
}

int cmd_run(const RunConfig& config, const std::string& out_path,
            const std::string& format) {
  RunReport report = run_benchmark(config);
  ReportFormat fmt = parse_format(format);
  if (out_path.empty() || out_path == "-") {
    if (fmt == ReportFormat::json) {
      std::cout << report_to_json(report).dump(2) << '\n';
    } else {
      std::cout << report_markdown(report);
    }
  } else {
    write_report(report, out_path, fmt);
    std::cout << "report written to " << out_path << '\n';
  }
  std::cerr << "provider calls: " << report.provider_calls
            << ", cache hits: " << report.cache_hits << '\n';
  return kExitOk;
}

int cmd_match(const std::string& graph_text, const std::string& graph_file,
              bool directed, const std::string& ref_path, int cap,
              std::uint64_t seed, bool as_json) {
  std::string text = graph_text;
  if (!graph_file.empty()) {
    std::ifstream in(graph_file);
    if (!in) fail(Errc::io_error, "cannot open " + graph_file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  Graph query = parse_edge_list(text, directed);
  ReferenceGraph ref = load_reference_graph(ref_path);
  MatchResult result = best_subgraph(query, ref, cap, seed);

  if (as_json) {
    nlohmann::json mapping = nlohmann::json::object();
    for (const auto& [node, character] : result.mapping) {
      mapping[std::to_string(node)] = nlohmann::json{
          {"character_id", character},
          {"name", ref.character(character).name}};
    }
    nlohmann::json doc{
        {"best_subgraph", serialize_edge_list(result.best_subgraph)},
        {"mapping", mapping},
        {"ged_score", result.ged_score},
        {"weight_penalty", result.weight_penalty.str()},
        {"combined_score", result.combined_score.str()},
        {"candidates_examined", result.candidates_examined},
        {"ged_exact", result.ged_exact},
    };
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "best subgraph: " << serialize_edge_list(result.best_subgraph)
            << '\n';
  std::cout << "mapping:\n";
  for (const auto& [node, character] : result.mapping) {
    std::cout << "  " << node << " -> " << character << " ("
              << ref.character(character).name << ")\n";
  }
  std::cout << "ged score: " << result.ged_score << '\n'
            << "weight penalty: " << result.weight_penalty.str() << '\n'
            << "combined score: " << result.combined_score.str() << '\n'
            << "candidates examined: " << result.candidates_examined << '\n'
            << "ged exact: " << (result.ged_exact ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_grade(const std::string& report_path, const std::string& dataset_root,
              const std::string& ref_path, const std::string& out_path,
              const std::string& format) {
  RunReport report = load_report(report_path);
  std::optional<ReferenceGraph> ref;
  if (!ref_path.empty()) ref = load_reference_graph(ref_path);

  std::map<std::string, TaskInstance> by_id;
  std::set<TaskKind> tasks;
  for (const GradeResult& grade : report.grades) tasks.insert(grade.task);
  for (TaskKind task : tasks) {
    for (TaskInstance& instance : load_dataset(dataset_root, task)) {
      by_id.emplace(instance.id, std::move(instance));
    }
  }

  std::vector<GradeResult> regraded;
  for (const GradeResult& old : report.grades) {
    auto found = by_id.find(old.instance_id);
    if (found == by_id.end()) {
      fail(Errc::missing_dataset,
           "instance " + old.instance_id + " not present under " +
               dataset_root);
    }
    std::optional<ReverseNameMap> names;
    if (old.mapping && ref) names = reverse_name_map(*old.mapping, *ref);
    ParsedAnswer answer = extract_answer(found->second.task, old.response,
                                         names ? &*names : nullptr);
    GradeResult fresh = grade(found->second, answer, old.mapping);
    fresh.strategy = old.strategy;
    fresh.model = old.model;
    fresh.response = old.response;
    fresh.from_cache = old.from_cache;
    regraded.push_back(std::move(fresh));
  }
  report.grades = std::move(regraded);
  report.table = aggregate(report.grades);

  ReportFormat fmt = parse_format(format);
  if (out_path.empty() || out_path == "-") {
    if (fmt == ReportFormat::json) {
      std::cout << report_to_json(report).dump(2) << '\n';
    } else {
      std::cout << report_markdown(report);
    }
  } else {
    write_report(report, out_path, fmt);
  }
  return kExitOk;
}

int cmd_report(const std::string& in_path, const std::string& out_path,
               const std::string& format) {
  RunReport report = load_report(in_path);
  ReportFormat fmt = parse_format(format);
  if (out_path.empty() || out_path == "-") {
    if (fmt == ReportFormat::json) {
      std::cout << report_to_json(report).dump(2) << '\n';
    } else {
      std::cout << report_markdown(report);
    }
  } else {
    write_report(report, out_path, fmt);
  }
  return kExitOk;
}

int cmd_gen_context(const std::string& task_value,
                    const std::string& drafts_dir, const std::string& mock,
                    const std::string& provider_url,
                    const std::string& api_key_env, const std::string& model,
                    int max_tokens, double temperature, double top_p) {
  auto task = task_from_name(task_value);
  if (!task) fail(Errc::invalid_params, "unknown task '" + task_value + "'");

  std::vector<std::pair<std::string, std::string>> drafts;
  std::vector<std::string> stems;
  std::map<std::string, fs::path> paths;
  for (const auto& entry : fs::directory_iterator(drafts_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") {
      continue;
    }
    stems.push_back(entry.path().stem().string());
    paths[stems.back()] = entry.path();
  }
  std::sort(stems.begin(), stems.end(), natural_less);
  for (const std::string& stem : stems) {
    std::ifstream in(paths[stem]);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    drafts.emplace_back(stem, buffer.str());
  }

  std::unique_ptr<CompletionClient> client;
  if (!provider_url.empty()) {
    HttpClientConfig http;
    http.base_url = provider_url;
    http.api_key_env = api_key_env;
    client = std::make_unique<HttpChatClient>(http);
  } else {
    MockClient::Behavior behavior;
    behavior.fallback_reply =
        "Unified task context: restate the graph precisely, then reason "
        "about the question step by step before answering.";
    client = std::make_unique<MockClient>("mock:" + mock, behavior);
  }

  CompletionRequest defaults;
  defaults.model = model;
  defaults.max_tokens = max_tokens;
  defaults.temperature = temperature;
  defaults.top_p = top_p;

  TaskContext context =
      consolidate_task_context(*task, drafts, *client, defaults);
  std::cout << "task: " << task_name(context.task) << '\n';
  std::cout << "drafts: " << context.provenance.size() << '\n';
  for (const auto& [label, text] : context.provenance) {
    std::cout << "  - " << label << " (" << text.size() << " bytes)\n";
  }
  std::cout << "context:\n" << context.text << '\n';
  return kExitOk;
}

int cmd_gen_dataset(const std::string& task_value, int count, int nodes,
                    double density, long long weight_lo, long long weight_hi,
                    std::uint64_t seed, const std::string& out_root) {
  auto task = task_from_name(task_value);
  if (!task) fail(Errc::invalid_params, "unknown task '" + task_value + "'");
  GeneratorParams params;
  params.n = nodes;
  params.edge_density = density;
  params.weight_lo = weight_lo;
  params.weight_hi = weight_hi;

  fs::path dir = fs::path(out_root) / task_name(*task);
  fs::create_directories(dir);
  for (int i = 0; i < count; ++i) {
    TaskInstance instance =
        generate_instance(*task, params, derive_seed(seed, std::to_string(i)));
    std::ostringstream name;
    name << "g" << std::setw(4) << std::setfill('0') << i << ".txt";
    write_instance_file(instance, (dir / name.str()).string());
  }
  std::cout << count << " instances written under " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "graphctx: graph-reasoning benchmark toolkit with narrative context "
      "injection"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a benchmark");
  std::string run_tasks = "all";
  std::string run_strategy = "zero_shot";
  std::string run_model = "mock";
  std::string run_provider_url, run_api_key_env, run_mock, run_dataset,
      run_ref, run_drafts, run_templates, run_cache, run_out;
  std::string run_format = "json";
  double run_error_rate = 0.0;
  std::uint64_t run_seed = 0;
  int run_cap = 25, run_max_tokens = 512, run_exemplars = 2, run_jobs = 1;
  double run_temperature = 0.001, run_top_p = 0.95;
  run->add_option("--task", run_tasks,
                  "task list: connectivity,cycle,toposort,shortest_path or "
                  "all");
  run->add_option("--strategy", run_strategy, "prompting strategy");
  run->add_option("--model", run_model, "model name sent to the provider");
  run->add_option("--provider-url", run_provider_url,
                  "OpenAI-compatible base URL");
  run->add_option("--api-key-env", run_api_key_env,
                  "environment variable holding the API key");
  run->add_option("--mock", run_mock,
                  "mock provider: oracle, adversarial, or script:<file>");
  run->add_option("--mock-error-rate", run_error_rate,
                  "oracle mock error rate in [0,1]");
  run->add_option("--dataset", run_dataset, "dataset root directory")
      ->required();
  run->add_option("--ref-graph", run_ref, "reference graph JSON file");
  run->add_option("--context-drafts", run_drafts,
                  "context draft root: <dir>/<task>/*.txt");
  run->add_option("--templates", run_templates,
                  "prompt template override directory");
  run->add_option("--seed", run_seed, "run seed");
  run->add_option("--cap", run_cap, "subgraph candidate cap");
  run->add_option("--max-tokens", run_max_tokens, "completion token limit");
  run->add_option("--temperature", run_temperature, "decoding temperature");
  run->add_option("--top-p", run_top_p, "nucleus sampling threshold");
  run->add_option("--exemplars", run_exemplars,
                  "exemplar count for few_shot/cot");
  run->add_option("--cache-dir", run_cache, "response cache directory");
  run->add_option("--jobs", run_jobs, "worker threads per task");
  run->add_option("--out", run_out, "report output path (default stdout)");
  run->add_option("--format", run_format, "report format: json or markdown");

  // match
  auto* match = app.add_subcommand("match", "match one query graph");
  std::string match_graph, match_graph_file, match_ref;
  bool match_directed = false, match_json = false;
  int match_cap = 25;
  std::uint64_t match_seed = 0;
  match->add_option("--graph", match_graph, "edge list text");
  match->add_option("--graph-file", match_graph_file,
                    "file holding the edge list");
  match->add_flag("--directed", match_directed, "treat the query as directed");
  match->add_option("--ref-graph", match_ref, "reference graph JSON file")
      ->required();
  match->add_option("--cap", match_cap, "subgraph candidate cap");
  match->add_option("--seed", match_seed, "enumeration seed");
  match->add_flag("--json", match_json, "print the result as JSON");

  // grade
  auto* grade_cmd = app.add_subcommand("grade", "re-grade stored responses");
  std::string grade_report, grade_dataset, grade_ref, grade_out;
  std::string grade_format = "json";
  grade_cmd->add_option("--report", grade_report, "stored run report (JSON)")
      ->required();
  grade_cmd->add_option("--dataset", grade_dataset, "dataset root directory")
      ->required();
  grade_cmd->add_option("--ref-graph", grade_ref,
                        "reference graph for name reverse-mapping");
  grade_cmd->add_option("--out", grade_out, "output path (default stdout)");
  grade_cmd->add_option("--format", grade_format, "json or markdown");

  // report
  auto* report_cmd = app.add_subcommand("report", "re-render a stored report");
  std::string report_in, report_out;
  std::string report_format = "markdown";
  report_cmd->add_option("--in", report_in, "stored run report (JSON)")
      ->required();
  report_cmd->add_option("--out", report_out, "output path (default stdout)");
  report_cmd->add_option("--format", report_format, "json or markdown");

  // gen-context
  auto* genctx = app.add_subcommand(
      "gen-context", "consolidate context drafts for one task");
  std::string genctx_task, genctx_drafts, genctx_mock = "oracle";
  std::string genctx_provider, genctx_api_key_env, genctx_model = "mock";
  int genctx_max_tokens = 512;
  double genctx_temperature = 0.001, genctx_top_p = 0.95;
  genctx->add_option("--task", genctx_task, "task name")->required();
  genctx->add_option("--drafts", genctx_drafts,
                     "directory of draft .txt files")
      ->required();
  genctx->add_option("--mock", genctx_mock, "mock consolidator name");
  genctx->add_option("--provider-url", genctx_provider,
                     "OpenAI-compatible base URL");
  genctx->add_option("--api-key-env", genctx_api_key_env,
                     "environment variable holding the API key");
  genctx->add_option("--model", genctx_model, "consolidator model name");
  genctx->add_option("--max-tokens", genctx_max_tokens,
                     "completion token limit");
  genctx->add_option("--temperature", genctx_temperature,
                     "decoding temperature");
  genctx->add_option("--top-p", genctx_top_p, "nucleus sampling threshold");

  // gen-dataset
  auto* gendata = app.add_subcommand(
      "gen-dataset", "write seeded random instances to a dataset directory");
  std::string gendata_task, gendata_out;
  int gendata_count = 10, gendata_nodes = 8;
  double gendata_density = 0.4;
  long long gendata_lo = 1, gendata_hi = 1;
  std::uint64_t gendata_seed = 0;
  gendata->add_option("--task", gendata_task, "task name")->required();
  gendata->add_option("--count", gendata_count, "number of instances");
  gendata->add_option("--nodes", gendata_nodes, "nodes per instance");
  gendata->add_option("--density", gendata_density, "edge probability");
  gendata->add_option("--weight-lo", gendata_lo, "minimum edge weight");
  gendata->add_option("--weight-hi", gendata_hi, "maximum edge weight");
  gendata->add_option("--seed", gendata_seed, "generator seed");
  gendata->add_option("--out", gendata_out, "dataset root directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) {
      RunConfig config;
      config.tasks = parse_task_list(run_tasks);
      auto strategy = strategy_from_name(run_strategy);
      if (!strategy) {
        fail(Errc::invalid_params,
             "unknown strategy '" + run_strategy + "'");
      }
      config.strategy.kind = *strategy;
      config.strategy.exemplar_count = run_exemplars;
      config.model = run_model;
      config.provider_url = run_provider_url;
      config.api_key_env = run_api_key_env;
      config.mock = parse_mock(run_mock, run_error_rate);
      config.dataset_root = run_dataset;
      config.ref_graph_path = run_ref;
      config.context_drafts_dir = run_drafts;
      config.templates_dir = run_templates;
      config.seed = run_seed;
      config.cap = run_cap;
      config.max_tokens = run_max_tokens;
      config.temperature = run_temperature;
      config.top_p = run_top_p;
      config.cache_dir = run_cache;
      config.jobs = run_jobs;
      return cmd_run(config, run_out, run_format);
    }
    if (match->parsed()) {
      if (match_graph.empty() == match_graph_file.empty()) {
        fail(Errc::invalid_params,
             "give exactly one of --graph or --graph-file");
      }
      return cmd_match(match_graph, match_graph_file, match_directed,
                       match_ref, match_cap, match_seed, match_json);
    }
    if (grade_cmd->parsed()) {
      return cmd_grade(grade_report, grade_dataset, grade_ref, grade_out,
                       grade_format);
    }
    if (report_cmd->parsed()) {
      return cmd_report(report_in, report_out, report_format);
    }
    if (genctx->parsed()) {
      return cmd_gen_context(genctx_task, genctx_drafts, genctx_mock,
                             genctx_provider, genctx_api_key_env,
                             genctx_model, genctx_max_tokens,
                             genctx_temperature, genctx_top_p);
    }
    if (gendata->parsed()) {
      return cmd_gen_dataset(gendata_task, gendata_count, gendata_nodes,
                             gendata_density, gendata_lo, gendata_hi,
                             gendata_seed, gendata_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::invalid_params ? kExitConfigError
                                            : kExitHardError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitHardError;
  }
  return kExitConfigError;
}
