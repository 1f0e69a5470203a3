#include "graphctx/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "graphctx/error.hpp"
#include "graphctx/eval.hpp"
#include "graphctx/oracles.hpp"

namespace graphctx {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& message) {
  fail(Errc::instance_parse_error,
       path + ":" + std::to_string(line) + ": " + message);
}

GroundTruth compute_truth(const std::string& path, const TaskInstance& inst) {
  try {
    switch (inst.task) {
      case TaskKind::connectivity:
        return BoolTruth{
            is_connected(inst.graph, *inst.source, *inst.target)};
      case TaskKind::cycle_detection:
        return BoolTruth{has_cycle(inst.graph)};
      case TaskKind::topological_sort:
        return OrderTruth{solve_toposort(inst.graph)};
      case TaskKind::shortest_path: {
        PathTruth truth;
        try {
          auto result = shortest_path(inst.graph, *inst.source, *inst.target);
          truth.witness = result.path;
          truth.optimal_weight = result.total_weight;
        } catch (const Error& e) {
          if (e.code() != Errc::unreachable) throw;
          truth.reachable = false;
        }
        return truth;
      }
    }
  } catch (const Error& e) {
    if (e.code() == Errc::unknown_node || e.code() == Errc::cyclic_graph) {
      fail(Errc::instance_parse_error,
           path + ": instance is unsolvable: " + e.what());
    }
    throw;
  }
  fail(Errc::instance_parse_error, path + ": unknown task");
}

void check_stored_answer(const std::string& path, const TaskInstance& inst,
                         const std::string& stored) {
  ParsedAnswer answer = extract_answer(inst.task, stored);
  if (std::holds_alternative<UnparsedAnswer>(answer)) {
    fail(Errc::instance_parse_error,
         path + ": stored answer '" + stored + "' cannot be parsed");
  }
  GradeResult check = grade(inst, answer);
  bool ok = inst.task == TaskKind::shortest_path ? check.both_ok
                                                 : check.correct;
  if (!ok) {
    fail(Errc::truth_mismatch,
         path + ": stored answer '" + stored +
             "' contradicts the recomputed ground truth");
  }
}

}  // namespace

TaskInstance parse_instance_file(const std::string& path, TaskKind task) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::instance_parse_error, path + ": cannot open file");
  }
  std::optional<int> declared_n;
  std::optional<std::string> graph_text;
  std::optional<std::string> question;
  std::optional<std::string> stored_answer;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    auto colon = text.find(':');
    if (colon == std::string::npos) {
      parse_fail(path, line_no, "expected '<field>: <value>'");
    }
    std::string field = trim(text.substr(0, colon));
    std::string value = trim(text.substr(colon + 1));
    if (field == "n") {
      try {
        declared_n = std::stoi(value);
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad node count '" + value + "'");
      }
    } else if (field == "Graph") {
      graph_text = value;
    } else if (field == "Question") {
      question = value;
    } else if (field == "Answer") {
      stored_answer = value;
    } else {
      parse_fail(path, line_no, "unknown field '" + field + "'");
    }
  }
  if (!graph_text) parse_fail(path, 0, "missing Graph line");
  if (!question) parse_fail(path, 0, "missing Question line");

  TaskInstance instance;
  instance.task = task;
  instance.id = fs::path(path).stem().string();
  instance.question = *question;
  instance.origin =
      path + (declared_n ? " (n declared)" : " (n inferred from edges)");
  try {
    instance.graph =
        parse_edge_list(*graph_text, task_is_directed(task), declared_n);
  } catch (const Error& e) {
    fail(Errc::instance_parse_error, path + ": " + e.what());
  }

  if (task == TaskKind::connectivity || task == TaskKind::shortest_path) {
    static const std::regex node_ref("node (\\d+)");
    auto begin =
        std::sregex_iterator(question->begin(), question->end(), node_ref);
    std::vector<NodeId> ids;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      ids.push_back(std::stoi((*it)[1].str()));
    }
    if (ids.size() < 2) {
      parse_fail(path, 0, "question does not name two query nodes");
    }
    instance.source = ids[0];
    instance.target = ids[1];
  }

  instance.truth = compute_truth(path, instance);
  if (stored_answer) check_stored_answer(path, instance, *stored_answer);
  return instance;
}

void write_instance_file(const TaskInstance& instance,
                         const std::string& path) {
  std::set<NodeId> endpoint_nodes;
  for (const Edge& e : instance.graph.edges()) {
    endpoint_nodes.insert(e.u);
    endpoint_nodes.insert(e.v);
  }
  bool dense = true;
  NodeId expected = 0;
  for (NodeId v : instance.graph.nodes()) {
    if (v != expected++) {
      dense = false;
      break;
    }
  }
  if (!dense && endpoint_nodes != instance.graph.nodes()) {
    fail(Errc::io_error,
         "instance " + instance.id +
             " has isolated nodes with gaps; the text format cannot "
             "represent it");
  }

  std::string answer;
  switch (instance.task) {
    case TaskKind::connectivity:
    case TaskKind::cycle_detection:
      answer = std::get<BoolTruth>(instance.truth).value ? "yes" : "no";
      break;
    case TaskKind::topological_sort: {
      const auto& order = std::get<OrderTruth>(instance.truth).witness;
      std::ostringstream out;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0) out << ", ";
        out << order[i];
      }
      answer = out.str();
      break;
    }
    case TaskKind::shortest_path: {
      const auto& truth = std::get<PathTruth>(instance.truth);
      if (!truth.reachable) {
        answer = "unreachable";
      } else {
        std::ostringstream out;
        for (std::size_t i = 0; i < truth.witness.size(); ++i) {
          if (i > 0) out << " -> ";
          out << truth.witness[i];
        }
        out << " (weight " << truth.optimal_weight.str() << ")";
        answer = out.str();
      }
      break;
    }
  }

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    fail(Errc::io_error, "cannot write instance file " + path);
  }
  out << "# " << task_name(instance.task) << " instance\n";
  if (dense) out << "n: " << instance.graph.node_count() << '\n';
  out << "Graph: " << serialize_edge_list(instance.graph) << '\n';
  out << "Question: " << instance.question << '\n';
  out << "Answer: " << answer << '\n';
}

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ia = i, jb = j;
      while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia])))
        ++ia;
      while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb])))
        ++jb;
      std::string_view na(a.data() + i, ia - i);
      std::string_view nb(b.data() + j, jb - j);
      std::string_view ta = na.substr(na.find_first_not_of('0') ==
                                              std::string_view::npos
                                          ? na.size() - 1
                                          : na.find_first_not_of('0'));
      std::string_view tb = nb.substr(nb.find_first_not_of('0') ==
                                              std::string_view::npos
                                          ? nb.size() - 1
                                          : nb.find_first_not_of('0'));
      if (ta.size() != tb.size()) return ta.size() < tb.size();
      if (ta != tb) return ta < tb;
      i = ia;
      j = jb;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if (i < a.size()) return false;
  if (j < b.size()) return true;
  return a < b;  // zero-padding tie-break, keeps the order total
}

std::vector<TaskInstance> load_dataset(const std::string& root,
                                       TaskKind task) {
  fs::path dir = fs::path(root) / task_name(task);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) dir = root;
  if (!fs::is_directory(dir, ec)) {
    fail(Errc::missing_dataset, "no dataset directory at " + root);
  }
  std::vector<std::string> stems;
  std::map<std::string, std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() != ".txt") continue;
    std::string stem = entry.path().stem().string();
    stems.push_back(stem);
    paths[stem] = entry.path().string();
  }
  if (stems.empty()) {
    fail(Errc::missing_dataset,
         "no instance files for task " + task_name(task) + " under " +
             dir.string());
  }
  std::sort(stems.begin(), stems.end(), natural_less);

  std::vector<TaskInstance> instances;
  instances.reserve(stems.size());
  for (const std::string& stem : stems) {
    TaskInstance instance = parse_instance_file(paths[stem], task);
    instance.id = task_name(task) + "/" + stem;
    instances.push_back(std::move(instance));
  }
  return instances;
}

}  // namespace graphctx
