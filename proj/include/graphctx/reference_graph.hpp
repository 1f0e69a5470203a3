#pragma once

#include <string>
#include <vector>

#include "graphctx/graph.hpp"

namespace graphctx {

struct Character {
  NodeId id = 0;
  std::string name;
  std::string description;
};

struct Relation {
  NodeId u = 0;
  NodeId v = 0;
  long long weight = 1;
  std::string description;
};

// The curated narrative graph: named characters with pairwise relationship
// strengths on a 1..max_scale scale plus prose descriptions.
struct ReferenceGraph {
  std::vector<Character> characters;
  std::vector<Relation> relations;
  int max_scale = 5;
  Graph skeleton;  // undirected, weights mirror `relations`

  const Character& character(NodeId id) const;
  const Relation* relation(NodeId u, NodeId v) const;
};

// Builds and validates a ReferenceGraph: dense ids 0..m-1, unique non-empty
// names, weights within [1, max_scale], no self or duplicate relations.
ReferenceGraph make_reference_graph(std::vector<Character> characters,
                                    std::vector<Relation> relations,
                                    int max_scale = 5);

// Reads the JSON reference-graph document (fields: max_scale, characters,
// relations) from a file.
ReferenceGraph load_reference_graph(const std::string& path);

// Parses the same document from a string; `origin` names the source in
// error messages.
ReferenceGraph parse_reference_graph(const std::string& json_text,
                                     const std::string& origin = "<memory>");

}  // namespace graphctx
