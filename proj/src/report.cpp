#include "graphctx/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "graphctx/error.hpp"

namespace graphctx {

namespace {

nlohmann::json grade_to_json(const GradeResult& grade) {
  nlohmann::json mapping;
  if (grade.mapping) {
    mapping = nlohmann::json::object();
    for (const auto& [query_node, character_id] : *grade.mapping) {
      mapping[std::to_string(query_node)] = character_id;
    }
  }
  return nlohmann::json{
      {"id", grade.instance_id},
      {"task", task_name(grade.task)},
      {"strategy", grade.strategy},
      {"model", grade.model},
      {"correct", grade.correct},
      {"path_ok", grade.path_ok},
      {"weight_ok", grade.weight_ok},
      {"both_ok", grade.both_ok},
      {"response", grade.response},
      {"from_cache", grade.from_cache},
      {"mapping", mapping},
      {"error", grade.error},
  };
}

GradeResult grade_from_json(const nlohmann::json& doc) {
  GradeResult grade;
  grade.instance_id = doc.at("id").get<std::string>();
  grade.task = *task_from_name(doc.at("task").get<std::string>());
  grade.strategy = doc.at("strategy").get<std::string>();
  grade.model = doc.at("model").get<std::string>();
  grade.correct = doc.at("correct").get<bool>();
  grade.path_ok = doc.at("path_ok").get<bool>();
  grade.weight_ok = doc.at("weight_ok").get<bool>();
  grade.both_ok = doc.at("both_ok").get<bool>();
  grade.response = doc.at("response").get<std::string>();
  grade.from_cache = doc.at("from_cache").get<bool>();
  grade.error = doc.at("error").get<std::string>();
  if (!doc.at("mapping").is_null()) {
    NodeMapping mapping;
    for (const auto& [key, value] : doc.at("mapping").items()) {
      mapping[std::stoi(key)] = value.get<NodeId>();
    }
    grade.mapping = mapping;
  }
  return grade;
}

nlohmann::json group_to_json(const AccuracyGroup& group) {
  nlohmann::json doc{
      {"task", task_name(group.task)}, {"strategy", group.strategy},
      {"model", group.model},          {"count", group.count},
  };
  if (group.task == TaskKind::shortest_path) {
    doc["path_ok"] = group.path_ok;
    doc["weight_ok"] = group.weight_ok;
    doc["both_ok"] = group.both_ok;
    doc["path_percent"] = format_percent(group.path_ok, group.count);
    doc["weight_percent"] = format_percent(group.weight_ok, group.count);
    doc["both_percent"] = format_percent(group.both_ok, group.count);
  } else {
    doc["correct"] = group.correct;
    doc["accuracy_percent"] = format_percent(group.correct, group.count);
  }
  return doc;
}

AccuracyGroup group_from_json(const nlohmann::json& doc) {
  AccuracyGroup group;
  group.task = *task_from_name(doc.at("task").get<std::string>());
  group.strategy = doc.at("strategy").get<std::string>();
  group.model = doc.at("model").get<std::string>();
  group.count = doc.at("count").get<int>();
  if (group.task == TaskKind::shortest_path) {
    group.path_ok = doc.at("path_ok").get<int>();
    group.weight_ok = doc.at("weight_ok").get<int>();
    group.both_ok = doc.at("both_ok").get<int>();
  } else {
    group.correct = doc.at("correct").get<int>();
  }
  return group;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json grades = nlohmann::json::array();
  for (const GradeResult& grade : report.grades) {
    grades.push_back(grade_to_json(grade));
  }
  nlohmann::json accuracy = nlohmann::json::array();
  for (const AccuracyGroup& group : report.table.groups) {
    accuracy.push_back(group_to_json(group));
  }
  return nlohmann::json{
      {"accuracy", accuracy},
      {"calls",
       {{"provider", report.provider_calls},
        {"consolidation_requests", report.consolidation_requests},
        {"cache_hits", report.cache_hits}}},
      {"config", report.config},
      {"config_fingerprint", report.config_fingerprint},
      {"created_at", report.created_at},
      {"grades", grades},
      {"wall_seconds", report.wall_seconds},
  };
}

RunReport report_from_json(const nlohmann::json& doc) {
  RunReport report;
  report.config = doc.at("config");
  report.config_fingerprint = doc.at("config_fingerprint").get<std::string>();
  report.created_at = doc.at("created_at").get<std::string>();
  report.wall_seconds = doc.at("wall_seconds").get<double>();
  report.provider_calls = doc.at("calls").at("provider").get<long long>();
  report.consolidation_requests =
      doc.at("calls").at("consolidation_requests").get<long long>();
  report.cache_hits = doc.at("calls").at("cache_hits").get<long long>();
  for (const auto& grade : doc.at("grades")) {
    report.grades.push_back(grade_from_json(grade));
  }
  for (const auto& group : doc.at("accuracy")) {
    report.table.groups.push_back(group_from_json(group));
  }
  return report;
}

std::string report_markdown(const RunReport& report) {
  // Collect the distinct (strategy, model) rows in table order.
  std::vector<std::pair<std::string, std::string>> rows;
  for (const AccuracyGroup& group : report.table.groups) {
    std::pair<std::string, std::string> key{group.strategy, group.model};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) {
      rows.push_back(key);
    }
  }

  std::ostringstream out;
  out << "# Benchmark report\n\n";
  out << "- config fingerprint: `" << report.config_fingerprint << "`\n";
  out << "- provider calls: " << report.provider_calls
      << " (cache hits: " << report.cache_hits
      << ", consolidation requests: " << report.consolidation_requests
      << ")\n\n";
  out << "| Strategy | Model | Connectivity | Cycle Detection | Topological "
         "Sort | Shortest Path: Path | Shortest Path: Weight | Shortest "
         "Path: Both |\n";
  out << "|---|---|---|---|---|---|---|---|\n";

  auto cell = [&](const AccuracyGroup* group, int numerator) {
    if (group == nullptr) return std::string("-");
    return format_percent(numerator, group->count) + "% (" +
           std::to_string(group->count) + ")";
  };

  for (const auto& [strategy, model] : rows) {
    out << "| " << strategy << " | " << model << " |";
    for (TaskKind task :
         {TaskKind::connectivity, TaskKind::cycle_detection,
          TaskKind::topological_sort}) {
      const AccuracyGroup* group = report.table.find(task, strategy, model);
      out << ' ' << cell(group, group != nullptr ? group->correct : 0)
          << " |";
    }
    const AccuracyGroup* sp =
        report.table.find(TaskKind::shortest_path, strategy, model);
    out << ' ' << cell(sp, sp != nullptr ? sp->path_ok : 0) << " |";
    out << ' ' << cell(sp, sp != nullptr ? sp->weight_ok : 0) << " |";
    out << ' ' << cell(sp, sp != nullptr ? sp->both_ok : 0) << " |\n";
  }
  return out.str();
}

void write_report(const RunReport& report, const std::string& path,
                  ReportFormat format) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    fail(Errc::io_error, "cannot write report to " + path);
  }
  if (format == ReportFormat::json) {
    out << report_to_json(report).dump(2) << '\n';
  } else {
    out << report_markdown(report);
  }
  if (!out) {
    fail(Errc::io_error, "short write to " + path);
  }
}

RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::io_error, "cannot open report " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
    return report_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, path + ": " + e.what());
  }
}

nlohmann::json strip_timing_fields(nlohmann::json doc) {
  doc.erase("created_at");
  doc.erase("wall_seconds");
  return doc;
}

}  // namespace graphctx
