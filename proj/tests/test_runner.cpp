#include <doctest.h>

#include <filesystem>

#include "graphctx/dataset.hpp"
#include "graphctx/error.hpp"
#include "graphctx/oracles.hpp"
#include "graphctx/report.hpp"
#include "graphctx/runner.hpp"
#include "support/fixtures.hpp"

using namespace graphctx;
namespace ts = graphctx::testsupport;

namespace {

std::string reference_path() {
  return std::string(GRAPHCTX_SOURCE_DIR) + "/data/got_reference.json";
}

void write_dataset(const ts::TempDir& tmp, TaskKind task, int count,
                   std::uint64_t seed0) {
  std::filesystem::create_directories(tmp.path() / task_name(task));
  for (int i = 0; i < count; ++i) {
    GeneratorParams params{6, 0.5, 1,
                           task == TaskKind::shortest_path ? 5 : 1};
    TaskInstance instance = generate_instance(task, params, seed0 + i);
    char name[16];
    std::snprintf(name, sizeof(name), "g%02d.txt", i);
    write_instance_file(instance,
                        (tmp.path() / task_name(task) / name).string());
  }
}

RunConfig oracle_config(const std::string& dataset_root) {
  RunConfig config;
  config.tasks.assign(std::begin(kAllTasks), std::end(kAllTasks));
  config.dataset_root = dataset_root;
  config.mock.kind = MockSpec::Kind::oracle;
  config.seed = 5;
  return config;
}

}  // namespace

TEST_CASE("every strategy runs end to end and grades 100% under the oracle mock") {
  ts::TempDir data;
  int total = 0;
  for (TaskKind task : kAllTasks) {
    write_dataset(data, task, 3, 600 + total);
    total += 3;
  }

  for (StrategyKind kind : kAllStrategies) {
    CAPTURE(strategy_name(kind));
    RunConfig config = oracle_config(data.str());
    config.strategy.kind = kind;
    if (strategy_needs_mapping(kind)) {
      config.ref_graph_path = reference_path();
    }
    RunReport report = run_benchmark(config);

    CHECK(report.provider_calls == total);
    CHECK(report.grades.size() == static_cast<std::size_t>(total));
    int group_total = 0;
    for (const AccuracyGroup& group : report.table.groups) {
      group_total += group.count;
      if (group.task == TaskKind::shortest_path) {
        CHECK(group.both_ok == group.count);
      } else {
        CHECK(group.correct == group.count);
      }
    }
    CHECK(group_total == total);  // no instance dropped or double-counted
    for (const GradeResult& grade : report.grades) {
      CHECK(grade.error.empty());
      CHECK(grade.strategy == strategy_name(kind));
      CHECK(grade.mapping.has_value() == strategy_needs_mapping(kind));
    }
  }
}

TEST_CASE("a worker pool reproduces the sequential report") {
  ts::TempDir data;
  for (TaskKind task : kAllTasks) write_dataset(data, task, 4, 700);

  RunConfig config = oracle_config(data.str());
  config.strategy.kind = StrategyKind::got_subgraph;
  config.ref_graph_path = reference_path();

  RunConfig parallel = config;
  parallel.jobs = 4;

  // jobs is part of the config fingerprint; compare everything else.
  nlohmann::json a = strip_timing_fields(report_to_json(run_benchmark(config)));
  nlohmann::json b =
      strip_timing_fields(report_to_json(run_benchmark(parallel)));
  a.erase("config");
  a.erase("config_fingerprint");
  b.erase("config");
  b.erase("config_fingerprint");
  CHECK(a == b);
}

TEST_CASE("failing instances are recorded, never skipped") {
  ts::TempDir data;
  write_dataset(data, TaskKind::connectivity, 4, 800);
  ts::TempDir scripts;
  auto script = scripts.write_file("two.txt", "yes\n---\nno\n");

  RunConfig config;
  config.tasks = {TaskKind::connectivity};
  config.dataset_root = data.str();
  config.mock.kind = MockSpec::Kind::script;
  config.mock.script_path = script.string();

  RunReport report = run_benchmark(config);
  REQUIRE(report.grades.size() == 4);
  int failures = 0;
  for (const GradeResult& grade : report.grades) {
    if (!grade.error.empty()) {
      ++failures;
      CHECK(!grade.correct);
      CHECK(grade.error.find("script exhausted") != std::string::npos);
      CHECK(grade.error.find(grade.instance_id) != std::string::npos);
    }
  }
  CHECK(failures == 2);  // replies ran out after two instances
  const AccuracyGroup* group = report.table.find(
      TaskKind::connectivity, "zero_shot", "mock");
  REQUIRE(group != nullptr);
  CHECK(group->count == 4);
}

TEST_CASE("config validation rejects inconsistent setups") {
  ts::TempDir data;
  write_dataset(data, TaskKind::connectivity, 1, 900);

  RunConfig config;
  config.dataset_root = data.str();
  CHECK_THROWS_AS(run_benchmark(config), Error);  // no tasks

  config.tasks = {TaskKind::connectivity};
  CHECK_THROWS_AS(run_benchmark(config), Error);  // neither mock nor URL

  config.mock.kind = MockSpec::Kind::oracle;
  config.provider_url = "http://example.invalid/v1";
  CHECK_THROWS_AS(run_benchmark(config), Error);  // both mock and URL

  config.provider_url.clear();
  config.strategy.kind = StrategyKind::got_random;
  CHECK_THROWS_AS(run_benchmark(config), Error);  // mapping without ref graph

  config.strategy.kind = StrategyKind::zero_shot;
  config.mock.kind = MockSpec::Kind::script;
  config.mock.script_path = "/nonexistent";
  config.jobs = 2;
  CHECK_THROWS_AS(run_benchmark(config), Error);  // scripted mock is serial
}

TEST_CASE("derive_seed is stable and key-sensitive") {
  CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
  CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
  CHECK(derive_seed(1, "a") != derive_seed(2, "a"));
}
