#include <doctest.h>

#include <algorithm>
#include <random>

#include "graphctx/error.hpp"
#include "graphctx/oracles.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

using namespace graphctx;
namespace ts = graphctx::testsupport;

TEST_CASE("is_connected on the star query and degenerate cases") {
  Graph star = parse_edge_list(ts::kStarQueryEdgeList);
  CHECK(is_connected(star, 0, 2));
  CHECK(is_connected(star, 2, 0));
  CHECK(is_connected(star, 1, 1));

  Graph isolated(false);
  isolated.add_node(0);
  isolated.add_node(1);
  CHECK(!is_connected(isolated, 0, 1));

  CHECK_THROWS_AS(is_connected(star, 0, 9), Error);
  Graph directed = parse_edge_list("(0,1)", true);
  CHECK_THROWS_AS(is_connected(directed, 0, 1), Error);
}

TEST_CASE("has_cycle distinguishes trees from cyclic graphs") {
  CHECK(has_cycle(parse_edge_list("(0,1) (1,2) (0,2)")));
  CHECK(!has_cycle(parse_edge_list("(0,1) (1,2)")));

  // The seven-character network contains the 2-4-3-6-5-2 cycle; the
  // exhaustive search confirms it independently.
  const ReferenceGraph ref = ts::seven_character_reference();
  CHECK(ts::has_simple_cycle_exhaustive(ref.skeleton));
  CHECK(has_cycle(ref.skeleton));
}

TEST_CASE("solve_toposort is deterministic smallest-id-first") {
  Graph chain = parse_edge_list("(0,1) (1,2)", true);
  CHECK(solve_toposort(chain) == std::vector<NodeId>{0, 1, 2});

  Graph fork = parse_edge_list("(0,1) (0,2)", true);
  CHECK(solve_toposort(fork) == std::vector<NodeId>{0, 1, 2});

  Graph loop = parse_edge_list("(0,1) (1,0)", true);
  CHECK_THROWS_AS(solve_toposort(loop), Error);
}

TEST_CASE("validate_toposort accepts exactly the valid permutations") {
  Graph fork = parse_edge_list("(0,1) (0,2)", true);
  CHECK(validate_toposort(fork, {0, 2, 1}));
  CHECK(validate_toposort(fork, {0, 1, 2}));
  CHECK(!validate_toposort(fork, {1, 0, 2}));

  Graph edge = parse_edge_list("(0,1)", true);
  CHECK(!validate_toposort(edge, {1, 0}));

  Graph chain = parse_edge_list("(0,1) (1,2)", true);
  CHECK(!validate_toposort(chain, {0, 1}));       // missing node
  CHECK(!validate_toposort(chain, {0, 1, 1}));    // repeated node
  CHECK(!validate_toposort(chain, {0, 1, 2, 2})); // wrong length
}

TEST_CASE("solve_toposort output always validates") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    TaskInstance instance = generate_instance(
        TaskKind::topological_sort,
        GeneratorParams{3 + static_cast<int>(rng() % 6), 0.5, 1, 1}, rng());
    CHECK(validate_toposort(instance.graph,
                            std::get<OrderTruth>(instance.truth).witness));
  }
}

TEST_CASE("shortest_path on the weighted reference graph") {
  const ReferenceGraph ref = ts::seven_character_reference();

  // Exhaustive enumeration first: 0-4-2 at weight 8 beats 0-4-3-6-5-2 at 19.
  auto enumerated = ts::shortest_by_enumeration(ref.skeleton, 0, 2);
  REQUIRE(enumerated);
  CHECK(enumerated->weight == Rational(8));
  CHECK(enumerated->path == std::vector<NodeId>{0, 4, 2});

  auto result = shortest_path(ref.skeleton, 0, 2);
  CHECK(result.path == std::vector<NodeId>{0, 4, 2});
  CHECK(result.total_weight == Rational(8));
}

TEST_CASE("shortest_path degenerate cases") {
  Graph star = parse_edge_list(ts::kStarQueryEdgeList);
  auto self = shortest_path(star, 1, 1);
  CHECK(self.path == std::vector<NodeId>{1});
  CHECK(self.total_weight == Rational(0));

  Graph split = parse_edge_list("(0,1) (2,3)");
  CHECK_THROWS_AS(shortest_path(split, 0, 3), Error);
  CHECK_THROWS_AS(shortest_path(split, 0, 9), Error);
}

TEST_CASE("shortest_path witness weight recomputes exactly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = ts::random_test_graph(rng, 7, 0.5, 1, 9);
    NodeId s = static_cast<NodeId>(rng() % 7);
    NodeId t = static_cast<NodeId>(rng() % 7);
    try {
      auto result = shortest_path(g, s, t);
      Rational total(0);
      for (std::size_t i = 0; i + 1 < result.path.size(); ++i) {
        total += *g.edge_weight(result.path[i], result.path[i + 1]);
      }
      CHECK(total == result.total_weight);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unreachable);
    }
  }
}

TEST_CASE("oracles agree with brute force on seeded random graphs") {
  std::mt19937_64 rng(20240812);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Graph g = ts::random_test_graph(rng, n, 0.35, 1, 6);
    NodeId s = static_cast<NodeId>(rng() % n);
    NodeId t = static_cast<NodeId>(rng() % n);

    CHECK(is_connected(g, s, t) == ts::reachable_closure(g, s, t));
    CHECK(is_connected(g, s, t) == is_connected(g, t, s));
    CHECK(has_cycle(g) == ts::has_simple_cycle_exhaustive(g));

    auto enumerated = ts::shortest_by_enumeration(g, s, t);
    if (enumerated) {
      auto result = shortest_path(g, s, t);
      CHECK(result.total_weight == enumerated->weight);
      CHECK(result.path == enumerated->path);  // lexicographic tie-break
    } else {
      CHECK_THROWS_AS(shortest_path(g, s, t), Error);
    }
  }
}

TEST_CASE("generate_instance is deterministic and self-consistent") {
  GeneratorParams params{5, 1.0, 1, 1};
  TaskInstance a = generate_instance(TaskKind::shortest_path, params, 42);
  TaskInstance b = generate_instance(TaskKind::shortest_path, params, 42);
  CHECK(a.graph == b.graph);
  CHECK(a.source == b.source);
  CHECK(a.target == b.target);
  CHECK(std::get<PathTruth>(a.truth).witness ==
        std::get<PathTruth>(b.truth).witness);

  // A complete unit-weight graph: any two distinct nodes are one step apart.
  const auto& truth = std::get<PathTruth>(a.truth);
  if (*a.source != *a.target) {
    CHECK(truth.optimal_weight == Rational(1));
  }

  TaskInstance single =
      generate_instance(TaskKind::connectivity, GeneratorParams{1, 0, 1, 1},
                        7);
  CHECK(*single.source == 0);
  CHECK(*single.target == 0);
  CHECK(std::get<BoolTruth>(single.truth).value);

  CHECK_THROWS_AS(
      generate_instance(TaskKind::connectivity, GeneratorParams{0, 0, 1, 1},
                        1),
      Error);
  CHECK_THROWS_AS(
      generate_instance(TaskKind::connectivity,
                        GeneratorParams{3, 2.0, 1, 1}, 1),
      Error);
}

TEST_CASE("generated DAGs always admit their stored order") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    TaskInstance instance = generate_instance(
        TaskKind::topological_sort, GeneratorParams{6, 0.6, 1, 1}, rng());
    CHECK(instance.graph.directed());
    CHECK(validate_toposort(instance.graph,
                            std::get<OrderTruth>(instance.truth).witness));
  }
}
