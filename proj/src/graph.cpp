#include "graphctx/graph.hpp"

#include <algorithm>
#include <sstream>

#include "graphctx/error.hpp"

namespace graphctx {

std::pair<NodeId, NodeId> Graph::canonical(NodeId u, NodeId v) const {
  if (!directed_ && u > v) std::swap(u, v);
  return {u, v};
}

void Graph::add_node(NodeId v) {
  if (v < 0) fail(Errc::malformed_token, "negative node id " + std::to_string(v));
  nodes_.insert(v);
}

void Graph::add_edge(NodeId u, NodeId v, Rational weight) {
  if (u == v) {
    fail(Errc::self_loop, "self-loop at node " + std::to_string(u));
  }
  if (!weight.is_positive()) {
    fail(Errc::non_positive_weight,
         "edge (" + std::to_string(u) + "," + std::to_string(v) +
             ") has weight " + weight.str());
  }
  auto key = canonical(u, v);
  if (edges_.count(key) > 0) {
    fail(Errc::duplicate_edge, "edge (" + std::to_string(key.first) + "," +
                                   std::to_string(key.second) +
                                   ") already present");
  }
  add_node(u);
  add_node(v);
  edges_.emplace(key, weight);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  return edges_.count(canonical(u, v)) > 0;
}

std::optional<Rational> Graph::edge_weight(NodeId u, NodeId v) const {
  auto it = edges_.find(canonical(u, v));
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> Graph::neighbors(NodeId v) const {
  std::vector<NodeId> out;
  for (const auto& [key, weight] : edges_) {
    if (key.first == v) out.push_back(key.second);
    if (!directed_ && key.second == v) out.push_back(key.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [key, weight] : edges_) {
    out.push_back(Edge{key.first, key.second, weight});
  }
  return out;
}

namespace {

// Splits "(u,v)" or "(u,v,w)" into fields, rejecting anything else.
Edge parse_token(std::string_view token) {
  auto malformed = [&]() -> void {
    fail(Errc::malformed_token, "bad edge token '" + std::string(token) + "'");
  };
  if (token.size() < 5 || token.front() != '(' || token.back() != ')') {
    malformed();
  }
  std::string_view body = token.substr(1, token.size() - 2);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(body.substr(start));
      break;
    }
    fields.push_back(body.substr(start, comma - start));
    start = comma + 1;
  }
  if (fields.size() != 2 && fields.size() != 3) malformed();

  auto parse_node = [&](std::string_view field) -> NodeId {
    if (field.empty()) malformed();
    long long value = 0;
    for (char c : field) {
      if (c < '0' || c > '9') malformed();
      value = value * 10 + (c - '0');
      if (value > INT32_MAX) malformed();
    }
    return static_cast<NodeId>(value);
  };

  Edge edge{parse_node(fields[0]), parse_node(fields[1]), Rational(1)};
  if (fields.size() == 3) {
    auto weight = Rational::parse(fields[2]);
    if (!weight) malformed();
    if (!weight->is_positive()) {
      fail(Errc::non_positive_weight,
           "edge token '" + std::string(token) + "' has non-positive weight");
    }
    edge.weight = *weight;
  }
  return edge;
}

}  // namespace

Graph parse_edge_list(std::string_view text, const ParseOptions& options) {
  Graph g(options.directed);
  if (options.declared_n) {
    if (*options.declared_n < 0) {
      fail(Errc::malformed_token,
           "declared node count " + std::to_string(*options.declared_n));
    }
    for (NodeId v = 0; v < *options.declared_n; ++v) g.add_node(v);
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    Edge edge = parse_token(text.substr(pos, end - pos));
    pos = end;
    if (g.has_edge(edge.u, edge.v)) {
      if (!options.lenient_duplicates) {
        fail(Errc::duplicate_edge, "duplicate edge (" + std::to_string(edge.u) +
                                       "," + std::to_string(edge.v) + ")");
      }
      if (options.warnings) {
        options.warnings->push_back("dropped duplicate edge (" +
                                    std::to_string(edge.u) + "," +
                                    std::to_string(edge.v) + ")");
      }
      continue;
    }
    g.add_edge(edge.u, edge.v, edge.weight);
  }
  return g;
}

Graph parse_edge_list(std::string_view text, bool directed,
                      std::optional<int> declared_n) {
  ParseOptions options;
  options.directed = directed;
  options.declared_n = declared_n;
  return parse_edge_list(text, options);
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  bool first = true;
  for (const Edge& e : g.edges()) {
    if (!first) out << ' ';
    first = false;
    out << '(' << e.u << ',' << e.v;
    if (e.weight != Rational(1)) out << ',' << e.weight.str();
    out << ')';
  }
  return out.str();
}

Graph induced_subgraph(const Graph& g, const std::set<NodeId>& keep) {
  for (NodeId v : keep) {
    if (!g.has_node(v)) {
      fail(Errc::unknown_node,
           "node " + std::to_string(v) + " not in the graph");
    }
  }
  Graph out(g.directed());
  for (NodeId v : keep) out.add_node(v);
  for (const Edge& e : g.edges()) {
    if (keep.count(e.u) > 0 && keep.count(e.v) > 0) {
      out.add_edge(e.u, e.v, e.weight);
    }
  }
  return out;
}

Graph relabel(const Graph& g, const std::map<NodeId, NodeId>& mapping) {
  std::set<NodeId> images;
  for (NodeId v : g.nodes()) {
    auto it = mapping.find(v);
    if (it == mapping.end()) {
      fail(Errc::missing_mapping,
           "no mapping for node " + std::to_string(v));
    }
    if (!images.insert(it->second).second) {
      fail(Errc::non_injective_mapping,
           "two nodes map to " + std::to_string(it->second));
    }
  }
  Graph out(g.directed());
  for (NodeId v : g.nodes()) out.add_node(mapping.at(v));
  for (const Edge& e : g.edges()) {
    out.add_edge(mapping.at(e.u), mapping.at(e.v), e.weight);
  }
  return out;
}

Graph undirected_skeleton(const Graph& g) {
  if (!g.directed()) return g;
  Graph out(false);
  for (NodeId v : g.nodes()) out.add_node(v);
  for (const Edge& e : g.edges()) {
    if (!out.has_edge(e.u, e.v)) out.add_edge(e.u, e.v, e.weight);
  }
  return out;
}

}  // namespace graphctx
