#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "graphctx/graph.hpp"
#include "graphctx/reference_graph.hpp"

namespace graphctx::testsupport {

// The three-edge star query from the benchmark's original prompt example.
inline constexpr const char* kStarQueryEdgeList = "(0,4) (1,4) (2,4)";

// The seven-character reference network used throughout the golden tests.
inline ReferenceGraph seven_character_reference() {
  std::vector<Character> characters = {
      {0, "Jon Snow", "Raised at Winterfell; served with the Night's Watch."},
      {1, "Arya Stark", "Youngest Stark daughter, a wandering swordfighter."},
      {2, "Sansa Stark", "Eldest Stark daughter, Lady of Winterfell."},
      {3, "Cersei Lannister", "Queen in King's Landing."},
      {4, "Tyrion Lannister", "The sharp-witted youngest Lannister."},
      {5, "Brienne of Tarth", "A knight sworn to the Stark daughters."},
      {6, "Jaime Lannister", "Kingsguard commander, Cersei's twin."},
  };
  std::vector<Relation> relations = {
      {0, 4, 5, "Jon Snow and Tyrion Lannister trust each other deeply."},
      {1, 4, 2, "Arya Stark and Tyrion Lannister share a wary respect."},
      {2, 4, 3, "Sansa Stark and Tyrion Lannister keep a courteous alliance."},
      {3, 4, 1, "Cersei Lannister and Tyrion Lannister despise one another."},
      {2, 5, 5, "Brienne of Tarth is sworn to Sansa Stark's protection."},
      {5, 6, 4, "Brienne of Tarth and Jaime Lannister share a bond of honor."},
      {3, 6, 4, "Cersei Lannister and Jaime Lannister are devoted twins."},
  };
  return make_reference_graph(std::move(characters), std::move(relations), 5);
}

// Seeded random graph independent of the library's instance generator.
inline Graph random_test_graph(std::mt19937_64& rng, int n, double density,
                               long long weight_lo = 1,
                               long long weight_hi = 1,
                               bool directed = false) {
  Graph g(directed);
  for (NodeId v = 0; v < n; ++v) g.add_node(v);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      double coin = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (coin >= density) continue;
      long long w =
          weight_lo +
          static_cast<long long>(
              rng() % static_cast<std::uint64_t>(weight_hi - weight_lo + 1));
      g.add_edge(u, v, Rational(w));
    }
  }
  return g;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned long long> counter{0};
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("graphctx-test-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

  std::filesystem::path write_file(const std::string& relative,
                                   const std::string& content) const {
    auto full = path_ / relative;
    std::filesystem::create_directories(full.parent_path());
    std::ofstream out(full, std::ios::trunc);
    out << content;
    return full;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace graphctx::testsupport
