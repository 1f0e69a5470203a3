#include "graphctx/reference_graph.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graphctx/error.hpp"

namespace graphctx {

const Character& ReferenceGraph::character(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= characters.size()) {
    fail(Errc::unknown_node, "no character with id " + std::to_string(id));
  }
  return characters[id];
}

const Relation* ReferenceGraph::relation(NodeId u, NodeId v) const {
  for (const Relation& r : relations) {
    if ((r.u == u && r.v == v) || (r.u == v && r.v == u)) return &r;
  }
  return nullptr;
}

ReferenceGraph make_reference_graph(std::vector<Character> characters,
                                    std::vector<Relation> relations,
                                    int max_scale) {
  if (max_scale < 1) {
    fail(Errc::scale_violation,
         "max_scale must be >= 1, got " + std::to_string(max_scale));
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < characters.size(); ++i) {
    const Character& c = characters[i];
    if (c.id != static_cast<NodeId>(i)) {
      fail(Errc::parse_error, "character ids must be dense 0..m-1; found id " +
                                  std::to_string(c.id) + " at position " +
                                  std::to_string(i));
    }
    if (c.name.empty()) {
      fail(Errc::parse_error,
           "character " + std::to_string(c.id) + " has an empty name");
    }
    if (!names.insert(c.name).second) {
      fail(Errc::duplicate_name, "character name '" + c.name + "' repeats");
    }
  }
  Graph skeleton(false);
  for (const Character& c : characters) skeleton.add_node(c.id);
  for (const Relation& r : relations) {
    if (r.u < 0 || r.v < 0 ||
        static_cast<std::size_t>(r.u) >= characters.size() ||
        static_cast<std::size_t>(r.v) >= characters.size()) {
      fail(Errc::parse_error, "relation (" + std::to_string(r.u) + "," +
                                  std::to_string(r.v) +
                                  ") references an unknown character");
    }
    if (r.weight < 1 || r.weight > max_scale) {
      fail(Errc::scale_violation,
           "relation (" + std::to_string(r.u) + "," + std::to_string(r.v) +
               ") weight " + std::to_string(r.weight) + " outside [1," +
               std::to_string(max_scale) + "]");
    }
    skeleton.add_edge(r.u, r.v, Rational(r.weight));
  }
  ReferenceGraph ref;
  ref.characters = std::move(characters);
  ref.relations = std::move(relations);
  ref.max_scale = max_scale;
  ref.skeleton = std::move(skeleton);
  return ref;
}

ReferenceGraph parse_reference_graph(const std::string& json_text,
                                     const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, origin + ": " + e.what());
  }
  try {
    int max_scale = doc.value("max_scale", 5);
    std::vector<Character> characters;
    for (const auto& c : doc.at("characters")) {
      characters.push_back(Character{c.at("id").get<NodeId>(),
                                     c.at("name").get<std::string>(),
                                     c.value("description", std::string())});
    }
    std::vector<Relation> relations;
    for (const auto& r : doc.at("relations")) {
      relations.push_back(Relation{r.at("u").get<NodeId>(),
                                   r.at("v").get<NodeId>(),
                                   r.at("weight").get<long long>(),
                                   r.value("description", std::string())});
    }
    return make_reference_graph(std::move(characters), std::move(relations),
                                max_scale);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, origin + ": " + e.what());
  }
}

ReferenceGraph load_reference_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::parse_error, "cannot open reference graph file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_reference_graph(buffer.str(), path);
}

}  // namespace graphctx
