#include "graphctx/context.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "graphctx/answers.hpp"
#include "graphctx/error.hpp"
#include "graphctx/oracles.hpp"

namespace graphctx {

namespace {
namespace fs = std::filesystem;

std::string replace_all(std::string text, const std::string& needle,
                        const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return text;
}

std::string tidy(std::string text) {
  // Collapse the holes left by empty placeholders.
  std::string out;
  int newlines = 0;
  for (char c : text) {
    if (c == '\n') {
      ++newlines;
      if (newlines <= 2) out.push_back(c);
    } else {
      newlines = 0;
      out.push_back(c);
    }
  }
  std::size_t begin = out.find_first_not_of('\n');
  if (begin == std::string::npos) return "";
  std::size_t end = out.find_last_not_of(" \t\n");
  return out.substr(begin, end - begin + 1) + "\n";
}

const char* task_preamble(TaskKind task) {
  switch (task) {
    case TaskKind::connectivity:
    case TaskKind::cycle_detection:
      return "In an undirected graph, (u,v) means that node u and node v are "
             "connected by an edge.";
    case TaskKind::topological_sort:
      return "In a directed graph, (u,v) means that there is a directed edge "
             "from node u to node v.";
    case TaskKind::shortest_path:
      return "In an undirected weighted graph, (u,v,w) means that node u and "
             "node v are connected by an edge with weight w.";
  }
  return "";
}

const char* answer_hint(TaskKind task) {
  switch (task) {
    case TaskKind::connectivity:
    case TaskKind::cycle_detection:
      return "Answer with yes or no.";
    case TaskKind::topological_sort:
      return "Give the ordering as a comma-separated list of node ids.";
    case TaskKind::shortest_path:
      return "State the path as a sequence of node ids and give its total "
             "weight.";
  }
  return "";
}

const char* algorithm_paragraph(TaskKind task) {
  switch (task) {
    case TaskKind::connectivity:
      return "To decide connectivity, run a breadth-first search: start from "
             "the first query node, repeatedly visit every unvisited "
             "neighbor of the frontier, and report yes exactly when the "
             "second query node is reached.";
    case TaskKind::cycle_detection:
      return "To detect a cycle, run a depth-first search from every "
             "unvisited node, remembering each node's parent; an edge back "
             "to an already-visited node other than the parent closes a "
             "cycle.";
    case TaskKind::topological_sort:
      return "To sort topologically, repeatedly remove a node with no "
             "incoming edges and append it to the ordering; when every node "
             "is removed this way, the ordering is valid.";
    case TaskKind::shortest_path:
      return "To find the shortest path, run Dijkstra's algorithm: grow a "
             "set of settled nodes, always settling the unsettled node with "
             "the smallest known distance and relaxing its edges.";
  }
  return "";
}

const char* instruct_line(TaskKind task) {
  switch (task) {
    case TaskKind::connectivity:
      return "Determine whether the two query nodes belong to the same "
             "connected component, then answer.";
    case TaskKind::cycle_detection:
      return "Determine whether any sequence of distinct edges returns to "
             "its starting node, then answer.";
    case TaskKind::topological_sort:
      return "Produce an ordering in which every edge points from an "
             "earlier node to a later node.";
    case TaskKind::shortest_path:
      return "Find the path with the minimum total edge weight between the "
             "two query nodes and report the path and its weight.";
  }
  return "";
}

std::string named_direction_note(TaskKind task) {
  if (task_is_directed(task)) {
    return " Each edge A -> B is directed from A to B.";
  }
  return "";
}

std::string build_template(TaskKind task, StrategyKind strategy) {
  std::ostringstream out;
  const std::string query_block = std::string("Graph: {{graph}}\n") +
                                  "Question: {{question}}\n" +
                                  answer_hint(task) + "\n";
  switch (strategy) {
    case StrategyKind::zero_shot:
      out << task_preamble(task) << "\n" << query_block;
      break;
    case StrategyKind::few_shot:
    case StrategyKind::cot:
      out << task_preamble(task) << "\n\n{{exemplars}}\n\n" << query_block;
      break;
    case StrategyKind::zero_cot:
      out << task_preamble(task) << "\nGraph: {{graph}}\n"
          << "Question: {{question}}\n"
          << "Let's think step by step.\n"
          << answer_hint(task) << "\n";
      break;
    case StrategyKind::algorithm:
      out << task_preamble(task) << "\n"
          << algorithm_paragraph(task) << "\n"
          << query_block;
      break;
    case StrategyKind::instruct:
      out << "You are an expert graph-reasoning assistant.\n"
          << task_preamble(task) << "\n"
          << "Instructions: " << instruct_line(task) << "\n"
          << query_block;
      break;
    case StrategyKind::noun_based:
      out << "You are given a graph whose nodes have been named after "
             "characters from a well-known story."
          << named_direction_note(task) << "\n"
          << "Node mapping:\n{{mapping}}\n"
          << "Edges:\n{{graph}}\n"
          << "Question: {{question}}\n"
          << answer_hint(task) << "\n";
      break;
    case StrategyKind::got_random:
    case StrategyKind::got_subgraph:
      out << "You are given a weighted subgraph of characters from a "
             "narrative relationship network. Nodes represent characters, "
             "and edges represent their relationships. Weights indicate "
             "relationship strength from 1 (weak) to 5 (strong)."
          << named_direction_note(task) << "\n\n{{context}}\n"
          << "Subgraph extracted from the full character graph:\n"
          << "Node mapping:\n{{mapping}}\n"
          << "Relevant edges:\n{{graph}}\n\n"
          << "Question: {{question}}\n"
          << answer_hint(task) << "\n";
      break;
  }
  return out.str();
}

bool query_is_weighted(const Graph& g) {
  for (const Edge& e : g.edges()) {
    if (e.weight != Rational(1)) return true;
  }
  return false;
}

std::string mapping_block(const Graph& g, const NodeMapping& mapping,
                          const ReferenceGraph& ref) {
  std::ostringstream out;
  bool first = true;
  for (NodeId v : g.nodes()) {
    if (!first) out << '\n';
    first = false;
    out << "- " << v << ": " << ref.character(mapping.at(v)).name;
  }
  return out.str();
}

std::string named_edge_block(const TaskInstance& instance,
                             const NodeMapping& mapping,
                             const ReferenceGraph& ref, bool with_reference) {
  const Graph& g = instance.graph;
  const bool weighted = query_is_weighted(g);
  const char* arrow = g.directed() ? "->" : "--";
  std::ostringstream lines;
  std::vector<std::string> background;
  bool first = true;
  for (const Edge& e : g.edges()) {
    const Character& cu = ref.character(mapping.at(e.u));
    const Character& cv = ref.character(mapping.at(e.v));
    if (!first) lines << '\n';
    first = false;
    lines << "- " << cu.name << " (" << e.u << ") " << arrow << ' ' << cv.name
          << " (" << e.v << ")";
    if (!with_reference) {
      if (weighted) lines << ": weight = " << e.weight.str();
      continue;
    }
    const Relation* rel = ref.relation(mapping.at(e.u), mapping.at(e.v));
    if (weighted) {
      // The instance graph is authoritative for weighted questions; the
      // reference relationship only decorates.
      lines << ": weight = " << e.weight.str();
      if (rel != nullptr) {
        lines << " (relationship strength " << rel->weight << ")";
      } else {
        lines << " (no prior relationship)";
      }
    } else if (rel != nullptr) {
      lines << ": weight = " << rel->weight;
    } else {
      lines << ": connected in this instance's network (weight = "
            << e.weight.str() << ")";
    }
    if (rel != nullptr && !rel->description.empty()) {
      background.push_back(rel->description);
    }
  }
  std::string out = lines.str();
  if (with_reference && !background.empty()) {
    out += "\nContextual background:\n";
    for (std::size_t i = 0; i < background.size(); ++i) {
      if (i > 0) out += ' ';
      out += background[i];
    }
  }
  return out;
}

std::string named_question(const std::string& question,
                           const NodeMapping& mapping,
                           const ReferenceGraph& ref) {
  static const std::regex node_ref("node (\\d+)");
  std::string out;
  auto begin = std::sregex_iterator(question.begin(), question.end(), node_ref);
  auto end = std::sregex_iterator();
  std::size_t last = 0;
  for (auto it = begin; it != end; ++it) {
    const std::smatch& m = *it;
    NodeId id = std::stoi(m[1].str());
    out += question.substr(last, m.position() - last);
    auto mapped = mapping.find(id);
    if (mapped != mapping.end()) {
      out += ref.character(mapped->second).name + " (node " + m[1].str() + ")";
    } else {
      out += m.str();
    }
    last = m.position() + m.length();
  }
  out += question.substr(last);
  return out;
}

std::string exemplar_block(const std::vector<TaskInstance>& exemplars,
                           bool with_reasoning) {
  std::ostringstream out;
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    const TaskInstance& ex = exemplars[i];
    if (i > 0) out << "\n\n";
    out << "Example:\n"
        << "Graph: " << serialize_edge_list(ex.graph) << '\n'
        << "Question: " << ex.question << '\n'
        << "Answer: ";
    if (with_reasoning) out << reasoning_text(ex) << ' ';
    out << oracle_answer_text(ex);
  }
  return out.str();
}

}  // namespace

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::zero_shot: return "zero_shot";
    case StrategyKind::few_shot: return "few_shot";
    case StrategyKind::zero_cot: return "zero_cot";
    case StrategyKind::cot: return "cot";
    case StrategyKind::algorithm: return "algorithm";
    case StrategyKind::instruct: return "instruct";
    case StrategyKind::noun_based: return "noun_based";
    case StrategyKind::got_random: return "got_random";
    case StrategyKind::got_subgraph: return "got_subgraph";
  }
  return "unknown";
}

std::optional<StrategyKind> strategy_from_name(std::string_view name) {
  for (StrategyKind kind : kAllStrategies) {
    if (strategy_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool strategy_needs_mapping(StrategyKind kind) {
  return kind == StrategyKind::noun_based ||
         kind == StrategyKind::got_random ||
         kind == StrategyKind::got_subgraph;
}

bool strategy_needs_exemplars(StrategyKind kind) {
  return kind == StrategyKind::few_shot || kind == StrategyKind::cot;
}

bool strategy_uses_task_context(StrategyKind kind) {
  return kind == StrategyKind::got_random ||
         kind == StrategyKind::got_subgraph;
}

TemplateSet TemplateSet::builtin() {
  TemplateSet set;
  for (TaskKind task : kAllTasks) {
    for (StrategyKind strategy : kAllStrategies) {
      set.templates_[{task, strategy}] = build_template(task, strategy);
    }
  }
  return set;
}

TemplateSet TemplateSet::with_overrides(const std::string& directory) {
  TemplateSet set = builtin();
  for (TaskKind task : kAllTasks) {
    for (StrategyKind strategy : kAllStrategies) {
      fs::path path = fs::path(directory) / task_name(task) /
                      (strategy_name(strategy) + ".txt");
      std::ifstream in(path);
      if (!in) continue;
      std::ostringstream buffer;
      buffer << in.rdbuf();
      set.templates_[{task, strategy}] = buffer.str();
    }
  }
  return set;
}

const std::string& TemplateSet::text(TaskKind task,
                                     StrategyKind strategy) const {
  auto it = templates_.find({task, strategy});
  if (it == templates_.end()) {
    fail(Errc::unknown_strategy,
         "no template for " + task_name(task) + "/" + strategy_name(strategy));
  }
  return it->second;
}

NodeMapping assign_random_mapping(const Graph& gq, const ReferenceGraph& ref,
                                  std::uint64_t seed) {
  const std::size_t m = ref.characters.size();
  if (gq.node_count() > m) {
    fail(Errc::too_few_characters,
         "query has " + std::to_string(gq.node_count()) +
             " nodes but only " + std::to_string(m) +
             " characters are available");
  }
  std::vector<NodeId> pool(m);
  for (std::size_t i = 0; i < m; ++i) pool[i] = static_cast<NodeId>(i);
  std::mt19937_64 rng(seed);
  for (std::size_t i = m; i > 1; --i) {
    std::swap(pool[i - 1], pool[rng() % i]);
  }
  NodeMapping mapping;
  std::size_t next = 0;
  for (NodeId v : gq.nodes()) mapping[v] = pool[next++];
  return mapping;
}

std::pair<NodeMapping, MatchResult> assign_matched_mapping(
    const Graph& gq, const ReferenceGraph& ref, int cap, std::uint64_t seed) {
  MatchResult result = best_subgraph(gq, ref, cap, seed);
  return {result.mapping, result};
}

RenderedPrompt render_prompt(const TaskInstance& instance,
                             const PromptStrategy& strategy,
                             const RenderInputs& inputs) {
  const StrategyKind kind = strategy.kind;
  if (strategy_needs_exemplars(kind) &&
      (inputs.exemplars == nullptr || inputs.exemplars->empty())) {
    fail(Errc::missing_exemplars,
         strategy_name(kind) + " requires at least one exemplar");
  }
  if (strategy_needs_mapping(kind)) {
    if (inputs.mapping == nullptr) {
      fail(Errc::missing_mapping,
           strategy_name(kind) + " requires a node mapping");
    }
    if (inputs.ref == nullptr) {
      fail(Errc::missing_mapping,
           strategy_name(kind) + " requires the reference graph");
    }
    for (NodeId v : instance.graph.nodes()) {
      if (inputs.mapping->count(v) == 0) {
        fail(Errc::missing_mapping,
             "mapping does not cover node " + std::to_string(v));
      }
    }
  }

  static const TemplateSet kBuiltin = TemplateSet::builtin();
  const TemplateSet& templates =
      inputs.templates != nullptr ? *inputs.templates : kBuiltin;
  std::string text = templates.text(instance.task, kind);

  std::string graph_block;
  std::string mapping_text;
  std::string question = instance.question;
  if (strategy_needs_mapping(kind)) {
    graph_block = named_edge_block(instance, *inputs.mapping, *inputs.ref,
                                   strategy_uses_task_context(kind));
    mapping_text = mapping_block(instance.graph, *inputs.mapping, *inputs.ref);
    question = named_question(question, *inputs.mapping, *inputs.ref);
  } else {
    graph_block = serialize_edge_list(instance.graph);
  }

  std::string context_text;
  if (inputs.context != nullptr && !inputs.context->text.empty()) {
    context_text = "Task context:\n" + inputs.context->text;
  }

  std::string exemplars_text;
  if (strategy_needs_exemplars(kind)) {
    exemplars_text =
        exemplar_block(*inputs.exemplars, kind == StrategyKind::cot);
  }

  text = replace_all(std::move(text), "{{graph}}", graph_block);
  text = replace_all(std::move(text), "{{question}}", question);
  text = replace_all(std::move(text), "{{context}}", context_text);
  text = replace_all(std::move(text), "{{mapping}}", mapping_text);
  text = replace_all(std::move(text), "{{exemplars}}", exemplars_text);

  RenderedPrompt prompt;
  prompt.instance_id = instance.id;
  prompt.strategy = strategy;
  prompt.text = tidy(std::move(text));
  if (strategy_needs_mapping(kind)) prompt.mapping = *inputs.mapping;
  if (kind == StrategyKind::got_subgraph && inputs.match != nullptr) {
    prompt.match = *inputs.match;
  }
  return prompt;
}

TaskContext consolidate_task_context(
    TaskKind task,
    const std::vector<std::pair<std::string, std::string>>& drafts,
    CompletionClient& consolidator,
    const CompletionRequest& request_defaults) {
  if (drafts.empty()) {
    fail(Errc::no_drafts, "no context drafts for task " + task_name(task));
  }
  TaskContext context;
  context.task = task;
  context.provenance = drafts;
  if (drafts.size() == 1) {
    context.text = drafts.front().second;
    return context;
  }
  std::ostringstream prompt;
  prompt << "Below are " << drafts.size()
         << " draft context notes for the graph task \"" << task_name(task)
         << "\". Merge them into a single unified context that keeps the "
            "most accurate and useful guidance from every draft. Reply with "
            "the unified context only.\n";
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    prompt << "\nDraft " << (i + 1) << " (" << drafts[i].first << "):\n"
           << drafts[i].second << '\n';
  }
  CompletionRequest request = request_defaults;
  request.prompt = prompt.str();
  request.tag = "context:" + task_name(task);
  context.text = consolidator.complete(request).text;
  return context;
}

}  // namespace graphctx
