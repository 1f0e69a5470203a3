#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphctx/eval.hpp"

namespace graphctx {

struct RunReport {
  nlohmann::json config;           // the full run configuration
  std::string config_fingerprint;  // digest of the canonical config dump
  std::string created_at;          // wall-clock stamp; stripped for diffing
  double wall_seconds = 0.0;
  long long provider_calls = 0;
  long long consolidation_requests = 0;
  long long cache_hits = 0;
  std::vector<GradeResult> grades;  // ordered by (task, instance id)
  AccuracyTable table;
};

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);

// Table-1 style layout: strategy rows, task column groups, shortest path
// split into Path / Weight / Both.
std::string report_markdown(const RunReport& report);

enum class ReportFormat { json, markdown };

void write_report(const RunReport& report, const std::string& path,
                  ReportFormat format);
RunReport load_report(const std::string& path);

// Removes the timing fields (created_at, wall_seconds, per-grade latency) so
// reports from identical runs can be compared byte for byte.
nlohmann::json strip_timing_fields(nlohmann::json doc);

}  // namespace graphctx
