#include <doctest.h>

#include "graphctx/answers.hpp"
#include "graphctx/dataset.hpp"
#include "graphctx/error.hpp"
#include "graphctx/eval.hpp"
#include "graphctx/oracles.hpp"
#include "graphctx/report.hpp"
#include "support/fixtures.hpp"

using namespace graphctx;
namespace ts = graphctx::testsupport;

TEST_CASE("canonical mock answers use the expected phrasing") {
  TaskInstance star;
  star.id = "connectivity/star";
  star.task = TaskKind::connectivity;
  star.graph = parse_edge_list(ts::kStarQueryEdgeList);
  star.source = 0;
  star.target = 2;
  star.truth = BoolTruth{true};

  CHECK(oracle_answer_text(star) ==
        "Yes, there is a path between node 0 and node 2.");
  CHECK(adversarial_answer_text(star) ==
        "No, there is no path between node 0 and node 2.");

  // Feeding either text back through extraction grades as intended.
  auto good = extract_answer(star.task, oracle_answer_text(star));
  CHECK(grade(star, good).correct);
  auto bad = extract_answer(star.task, adversarial_answer_text(star));
  CHECK(!grade(star, bad).correct);
}

TEST_CASE("oracle answers grade perfectly on every task") {
  std::mt19937_64 rng(77);
  for (TaskKind task : kAllTasks) {
    for (int i = 0; i < 25; ++i) {
      GeneratorParams params{6, 0.45, 1,
                             task == TaskKind::shortest_path ? 5 : 1};
      TaskInstance instance = generate_instance(task, params, rng());
      ParsedAnswer good =
          extract_answer(task, oracle_answer_text(instance));
      GradeResult graded = grade(instance, good);
      if (task == TaskKind::shortest_path) {
        CHECK(graded.both_ok);
      } else {
        CHECK(graded.correct);
      }

      ParsedAnswer bad =
          extract_answer(task, adversarial_answer_text(instance));
      GradeResult wrong = grade(instance, bad);
      CHECK(!wrong.correct);
      CHECK(!wrong.both_ok);
    }
  }
}

TEST_CASE("boolean extraction takes the last standalone yes or no") {
  auto parsed = extract_answer(
      TaskKind::connectivity, "Yes, there is a path between node 0 and node 2.");
  REQUIRE(std::holds_alternative<BooleanAnswer>(parsed));
  CHECK(std::get<BooleanAnswer>(parsed).yes);

  parsed = extract_answer(TaskKind::connectivity,
                          "Yes... wait, checking again: no.");
  CHECK(!std::get<BooleanAnswer>(parsed).yes);

  // "node" and "Note" must not read as "no".
  parsed = extract_answer(TaskKind::cycle_detection,
                          "Note that node 3 loops back, so yes.");
  CHECK(std::get<BooleanAnswer>(parsed).yes);

  CHECK(std::holds_alternative<UnparsedAnswer>(extract_answer(
      TaskKind::connectivity, "As an AI, I cannot determine this.")));
}

TEST_CASE("path extraction takes the last sequence and the cued weight") {
  auto parsed = extract_answer(
      TaskKind::shortest_path,
      "The shortest path is 0 -> 4 -> 2 with total weight 8.");
  REQUIRE(std::holds_alternative<PathAnswer>(parsed));
  const auto& path = std::get<PathAnswer>(parsed);
  CHECK(path.path == std::vector<NodeId>{0, 4, 2});
  REQUIRE(path.stated_weight);
  CHECK(*path.stated_weight == Rational(8));

  parsed = extract_answer(TaskKind::shortest_path,
                          "Candidates: 0, 1, 3. Final: 0 \xE2\x86\x92 4 "
                          "\xE2\x86\x92 2, cost 8.5");
  const auto& arrow = std::get<PathAnswer>(parsed);
  CHECK(arrow.path == std::vector<NodeId>{0, 4, 2});
  CHECK(*arrow.stated_weight == Rational(17, 2));

  parsed = extract_answer(TaskKind::shortest_path,
                          "No path exists between them.");
  REQUIRE(std::holds_alternative<BooleanAnswer>(parsed));
  CHECK(!std::get<BooleanAnswer>(parsed).yes);
}

TEST_CASE("order extraction reads comma separated ids") {
  auto parsed = extract_answer(TaskKind::topological_sort,
                               "A valid topological ordering is: 0, 2, 1.");
  REQUIRE(std::holds_alternative<OrderAnswer>(parsed));
  CHECK(std::get<OrderAnswer>(parsed).order == std::vector<NodeId>{0, 2, 1});

  CHECK(std::holds_alternative<UnparsedAnswer>(
      extract_answer(TaskKind::topological_sort, "It cannot be ordered.")));
}

TEST_CASE("character names reverse-map to node ids before parsing") {
  const ReferenceGraph ref = ts::seven_character_reference();
  NodeMapping mapping{{0, 0}, {1, 1}, {2, 2}, {4, 4}};
  ReverseNameMap names = reverse_name_map(mapping, ref);

  auto parsed = extract_answer(
      TaskKind::shortest_path,
      "Walk Jon Snow -> Tyrion Lannister -> Sansa Stark, total weight 8.",
      &names);
  REQUIRE(std::holds_alternative<PathAnswer>(parsed));
  CHECK(std::get<PathAnswer>(parsed).path == std::vector<NodeId>{0, 4, 2});

  auto boolean = extract_answer(
      TaskKind::connectivity,
      "Yes, Jon Snow reaches Sansa Stark through Tyrion Lannister.", &names);
  CHECK(std::get<BooleanAnswer>(boolean).yes);
}

TEST_CASE("grading follows the task-specific correctness rules") {
  TaskInstance connectivity;
  connectivity.id = "c0";
  connectivity.task = TaskKind::connectivity;
  connectivity.graph = parse_edge_list(ts::kStarQueryEdgeList);
  connectivity.source = 0;
  connectivity.target = 2;
  connectivity.truth = BoolTruth{true};

  CHECK(grade(connectivity, BooleanAnswer{true}).correct);
  CHECK(!grade(connectivity, BooleanAnswer{false}).correct);
  CHECK(!grade(connectivity, UnparsedAnswer{}).correct);

  TaskInstance toposort;
  toposort.id = "t0";
  toposort.task = TaskKind::topological_sort;
  toposort.graph = parse_edge_list("(0,1) (0,2)", true);
  toposort.truth = OrderTruth{{0, 1, 2}};

  // Any valid order counts, not only the stored witness.
  CHECK(grade(toposort, OrderAnswer{{0, 2, 1}}).correct);
  CHECK(grade(toposort, OrderAnswer{{0, 1, 2}}).correct);
  CHECK(!grade(toposort, OrderAnswer{{1, 0, 2}}).correct);
  CHECK(!grade(toposort, OrderAnswer{{0, 1}}).correct);
}

TEST_CASE("shortest-path grading splits path, weight and both") {
  const ReferenceGraph ref = ts::seven_character_reference();
  TaskInstance instance;
  instance.id = "s0";
  instance.task = TaskKind::shortest_path;
  instance.graph = ref.skeleton;
  instance.source = 0;
  instance.target = 2;
  instance.truth = PathTruth{{0, 4, 2}, Rational(8), true};

  GradeResult full = grade(instance, PathAnswer{{0, 4, 2}, Rational(8)});
  CHECK(full.path_ok);
  CHECK(full.weight_ok);
  CHECK(full.both_ok);

  GradeResult no_weight = grade(instance, PathAnswer{{0, 4, 2}, std::nullopt});
  CHECK(no_weight.path_ok);
  CHECK(!no_weight.weight_ok);
  CHECK(!no_weight.both_ok);

  GradeResult wrong_weight = grade(instance, PathAnswer{{0, 4, 2}, Rational(9)});
  CHECK(wrong_weight.path_ok);
  CHECK(!wrong_weight.weight_ok);

  // A longer route is a real path but not optimal.
  GradeResult detour =
      grade(instance, PathAnswer{{0, 4, 3, 6, 5, 2}, Rational(8)});
  CHECK(!detour.path_ok);
  CHECK(detour.weight_ok);
  CHECK(!detour.both_ok);

  GradeResult broken = grade(instance, PathAnswer{{0, 2}, Rational(8)});
  CHECK(!broken.path_ok);

  GradeResult boolean = grade(instance, BooleanAnswer{true});
  CHECK(!boolean.path_ok);
  CHECK(!boolean.weight_ok);
}

TEST_CASE("an alternative optimal path is accepted") {
  TaskInstance instance;
  instance.id = "s1";
  instance.task = TaskKind::shortest_path;
  // Two optimal routes 0-1-3 and 0-2-3, both weight 2.
  instance.graph = parse_edge_list("(0,1) (1,3) (0,2) (2,3)");
  instance.source = 0;
  instance.target = 3;
  instance.truth = PathTruth{{0, 1, 3}, Rational(2), true};

  CHECK(grade(instance, PathAnswer{{0, 2, 3}, Rational(2)}).both_ok);
  CHECK(grade(instance, PathAnswer{{0, 1, 3}, Rational(2)}).both_ok);
}

TEST_CASE("disconnected queries grade on the unreachability assertion") {
  TaskInstance instance;
  instance.id = "s2";
  instance.task = TaskKind::shortest_path;
  instance.graph = parse_edge_list("(0,1) (2,3)");
  instance.source = 0;
  instance.target = 3;
  instance.truth = PathTruth{{}, Rational(0), false};

  CHECK(grade(instance, BooleanAnswer{false}).both_ok);
  CHECK(!grade(instance, BooleanAnswer{true}).both_ok);
  CHECK(!grade(instance, PathAnswer{{0, 3}, Rational(1)}).both_ok);
}

TEST_CASE("aggregate computes per-group percentages") {
  std::vector<GradeResult> results;
  for (int i = 0; i < 4; ++i) {
    GradeResult r;
    r.instance_id = "c" + std::to_string(i);
    r.task = TaskKind::connectivity;
    r.strategy = "zero_shot";
    r.model = "mock";
    r.correct = i < 3;
    results.push_back(r);
  }
  for (int i = 0; i < 3; ++i) {
    GradeResult r;
    r.instance_id = "s" + std::to_string(i);
    r.task = TaskKind::shortest_path;
    r.strategy = "zero_shot";
    r.model = "mock";
    r.path_ok = i < 2;
    r.weight_ok = i < 1;
    r.both_ok = r.path_ok && r.weight_ok;
    results.push_back(r);
  }

  AccuracyTable table = aggregate(results);
  const AccuracyGroup* conn =
      table.find(TaskKind::connectivity, "zero_shot", "mock");
  REQUIRE(conn != nullptr);
  CHECK(conn->count == 4);
  CHECK(format_percent(conn->correct, conn->count) == "75.00");

  const AccuracyGroup* sp =
      table.find(TaskKind::shortest_path, "zero_shot", "mock");
  REQUIRE(sp != nullptr);
  CHECK(format_percent(sp->path_ok, sp->count) == "66.67");
  CHECK(format_percent(sp->weight_ok, sp->count) == "33.33");
  CHECK(format_percent(sp->both_ok, sp->count) == "33.33");

  CHECK_THROWS_AS(aggregate({}), Error);
}

TEST_CASE("format_percent rounds half-up to two decimals") {
  CHECK(format_percent(3, 4) == "75.00");
  CHECK(format_percent(2, 3) == "66.67");
  CHECK(format_percent(1, 3) == "33.33");
  CHECK(format_percent(1, 1) == "100.00");
  CHECK(format_percent(0, 7) == "0.00");
  CHECK(format_percent(1, 800) == "0.13");  // 0.125 rounds up
}

TEST_CASE("natural_less sorts digit runs numerically") {
  CHECK(natural_less("g2", "g10"));
  CHECK(!natural_less("g10", "g2"));
  CHECK(natural_less("g2", "g2a"));
  CHECK(natural_less("a", "b"));
}

TEST_CASE("load_dataset parses the star query instance") {
  ts::TempDir tmp;
  tmp.write_file("connectivity/g0.txt",
                 "Graph: (0,4) (1,4) (2,4)\n"
                 "Question: Is there a path between node 0 and node 2?\n");
  auto instances = load_dataset(tmp.str(), TaskKind::connectivity);
  REQUIRE(instances.size() == 1);
  const TaskInstance& instance = instances[0];
  CHECK(instance.id == "connectivity/g0");
  CHECK(instance.graph.node_count() == 4);
  CHECK(*instance.source == 0);
  CHECK(*instance.target == 2);
  CHECK(std::get<BoolTruth>(instance.truth).value);
  CHECK(instance.origin.find("n inferred") != std::string::npos);
}

TEST_CASE("load_dataset honors a declared node count") {
  ts::TempDir tmp;
  tmp.write_file("connectivity/g0.txt",
                 "n: 6\n"
                 "Graph: (0,4) (1,4) (2,4)\n"
                 "Question: Is there a path between node 0 and node 5?\n");
  auto instances = load_dataset(tmp.str(), TaskKind::connectivity);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].graph.node_count() == 6);
  CHECK(!std::get<BoolTruth>(instances[0].truth).value);
  CHECK(instances[0].origin.find("n declared") != std::string::npos);
}

TEST_CASE("load_dataset errors: missing data, bad files, stale answers") {
  ts::TempDir tmp;
  CHECK_THROWS_WITH_AS(load_dataset(tmp.str() + "/nowhere",
                                    TaskKind::connectivity),
                       doctest::Contains("MissingDataset"), Error);

  std::filesystem::create_directories(tmp.path() / "connectivity");
  CHECK_THROWS_WITH_AS(load_dataset(tmp.str(), TaskKind::connectivity),
                       doctest::Contains("MissingDataset"), Error);

  tmp.write_file("cycle/bad.txt", "Graph: (0,1\nQuestion: cycle?\n");
  CHECK_THROWS_WITH_AS(load_dataset(tmp.str(), TaskKind::cycle_detection),
                       doctest::Contains("InstanceParseError"), Error);

  ts::TempDir stale;
  stale.write_file("connectivity/g0.txt",
                   "Graph: (0,4) (1,4) (2,4)\n"
                   "Question: Is there a path between node 0 and node 2?\n"
                   "Answer: no\n");
  CHECK_THROWS_WITH_AS(load_dataset(stale.str(), TaskKind::connectivity),
                       doctest::Contains("TruthMismatch"), Error);
}

TEST_CASE("instance files round trip through write and parse") {
  std::mt19937_64 rng(21);
  ts::TempDir tmp;
  std::filesystem::create_directories(tmp.path() / "out");
  for (TaskKind task : kAllTasks) {
    for (int i = 0; i < 5; ++i) {
      GeneratorParams params{5, 0.5, 1,
                             task == TaskKind::shortest_path ? 4 : 1};
      TaskInstance instance = generate_instance(task, params, rng());
      auto path =
          (tmp.path() / "out" / (task_name(task) + std::to_string(i) + ".txt"))
              .string();
      write_instance_file(instance, path);
      TaskInstance back = parse_instance_file(path, task);
      CHECK(back.graph == instance.graph);
      CHECK(back.question == instance.question);
      CHECK(back.source == instance.source);
      CHECK(back.target == instance.target);
    }
  }
}

TEST_CASE("dataset instances come back in natural id order") {
  ts::TempDir tmp;
  const char* content =
      "Graph: (0,1)\nQuestion: Is there a path between node 0 and node 1?\n";
  tmp.write_file("connectivity/g10.txt", content);
  tmp.write_file("connectivity/g2.txt", content);
  tmp.write_file("connectivity/g1.txt", content);
  auto instances = load_dataset(tmp.str(), TaskKind::connectivity);
  REQUIRE(instances.size() == 3);
  CHECK(instances[0].id == "connectivity/g1");
  CHECK(instances[1].id == "connectivity/g2");
  CHECK(instances[2].id == "connectivity/g10");
}

TEST_CASE("reports round trip through JSON byte for byte") {
  RunReport report;
  report.config = {{"seed", 7}, {"strategy", "zero_shot"}};
  report.config_fingerprint = "abc123";
  report.created_at = "2026-01-01T00:00:00Z";
  report.wall_seconds = 1.25;
  report.provider_calls = 2;
  report.cache_hits = 1;

  GradeResult g1;
  g1.instance_id = "connectivity/g0";
  g1.task = TaskKind::connectivity;
  g1.strategy = "zero_shot";
  g1.model = "mock";
  g1.correct = true;
  g1.response = "Yes.";
  report.grades.push_back(g1);

  GradeResult g2;
  g2.instance_id = "shortest_path/g0";
  g2.task = TaskKind::shortest_path;
  g2.strategy = "zero_shot";
  g2.model = "mock";
  g2.path_ok = g2.weight_ok = g2.both_ok = true;
  g2.response = "0 -> 1, weight 3";
  g2.mapping = NodeMapping{{0, 3}, {1, 5}};
  report.grades.push_back(g2);

  report.table = aggregate(report.grades);

  std::string once = report_to_json(report).dump(2);
  RunReport reloaded = report_from_json(nlohmann::json::parse(once));
  std::string twice = report_to_json(reloaded).dump(2);
  CHECK(once == twice);

  ts::TempDir tmp;
  auto path = (tmp.path() / "report.json").string();
  write_report(report, path, ReportFormat::json);
  RunReport from_disk = load_report(path);
  CHECK(report_to_json(from_disk).dump(2) == once);

  nlohmann::json stripped =
      strip_timing_fields(nlohmann::json::parse(once));
  CHECK(!stripped.contains("created_at"));
  CHECK(!stripped.contains("wall_seconds"));
  CHECK(stripped.contains("grades"));

  std::string markdown = report_markdown(report);
  CHECK(markdown.find("| Strategy | Model | Connectivity |") !=
        std::string::npos);
  CHECK(markdown.find("zero_shot") != std::string::npos);
  CHECK(markdown.find("100.00% (1)") != std::string::npos);
}
