#include "graphctx/eval.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "graphctx/error.hpp"
#include "graphctx/oracles.hpp"

namespace graphctx {

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool word_at(const std::string& lower_text, std::size_t pos,
             std::string_view word) {
  if (lower_text.compare(pos, word.size(), word) != 0) return false;
  auto alnum = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  };
  if (pos > 0 && alnum(lower_text[pos - 1])) return false;
  std::size_t end = pos + word.size();
  if (end < lower_text.size() && alnum(lower_text[end])) return false;
  return true;
}

// Replaces every (case-insensitive) character-name occurrence with its query
// node id, longest names first so "Jon Snow" wins over a hypothetical "Jon".
std::string substitute_names(const std::string& text,
                             const ReverseNameMap& names) {
  std::vector<std::pair<std::string, NodeId>> ordered(names.begin(),
                                                      names.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
  std::string out = text;
  std::string shadow = lowered(out);
  for (const auto& [name, id] : ordered) {
    if (name.empty()) continue;
    const std::string needle = lowered(name);
    const std::string value = std::to_string(id);
    std::size_t pos = 0;
    while ((pos = shadow.find(needle, pos)) != std::string::npos) {
      out.replace(pos, needle.size(), value);
      shadow.replace(pos, needle.size(), value);
      pos += value.size();
    }
  }
  return out;
}

struct NumberToken {
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last digit
  bool is_integer = true;
  std::string text;
};

std::vector<NumberToken> scan_numbers(const std::string& text) {
  std::vector<NumberToken> tokens;
  std::size_t i = 0;
  auto digit = [&](std::size_t p) {
    return p < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[p])) != 0;
  };
  while (i < text.size()) {
    if (!digit(i)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (digit(i)) ++i;
    bool is_integer = true;
    if (i < text.size() && text[i] == '.' && digit(i + 1)) {
      is_integer = false;
      ++i;
      while (digit(i)) ++i;
    }
    tokens.push_back(
        NumberToken{start, i, is_integer, text.substr(start, i - start)});
  }
  return tokens;
}

// A gap joins two numbers of one sequence when, whitespace removed, it is
// empty or a single list delimiter.
bool joining_gap(std::string_view gap) {
  std::string stripped;
  for (char c : gap) {
    if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
  }
  return stripped.empty() || stripped == "," || stripped == "->" ||
         stripped == "\xE2\x86\x92";  // the arrow character
}

constexpr std::string_view kWeightCues[] = {"weight", "cost", "length",
                                            "distance"};

// Index of the number token claimed by the last weight cue, if any.
std::optional<std::size_t> stated_weight_token(
    const std::string& text, const std::vector<NumberToken>& tokens) {
  const std::string lower = lowered(text);
  std::optional<std::size_t> claimed;
  for (std::size_t pos = 0; pos < lower.size(); ++pos) {
    for (std::string_view cue : kWeightCues) {
      if (!word_at(lower, pos, cue)) continue;
      std::size_t cue_end = pos + cue.size();
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        if (tokens[t].begin >= cue_end &&
            tokens[t].begin <= cue_end + 24) {
          claimed = t;
          break;
        }
      }
    }
  }
  return claimed;
}

std::vector<std::vector<NodeId>> integer_sequences(
    const std::string& text, const std::vector<NumberToken>& tokens,
    std::optional<std::size_t> masked) {
  std::vector<std::vector<NodeId>> sequences;
  std::vector<NodeId> current;
  std::size_t previous_end = 0;
  bool have_previous = false;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (masked && *masked == t) continue;
    const NumberToken& token = tokens[t];
    if (!token.is_integer || token.text.size() > 9) {
      // Not a plausible node id; also breaks any running sequence.
      if (!current.empty()) sequences.push_back(std::move(current));
      current.clear();
      have_previous = false;
      continue;
    }
    NodeId value = std::stoi(token.text);
    if (have_previous &&
        joining_gap(std::string_view(text).substr(
            previous_end, token.begin - previous_end))) {
      current.push_back(value);
    } else {
      if (!current.empty()) sequences.push_back(std::move(current));
      current = {value};
    }
    previous_end = token.end;
    have_previous = true;
  }
  if (!current.empty()) sequences.push_back(std::move(current));
  return sequences;
}

std::optional<bool> last_yes_no(const std::string& text) {
  const std::string lower = lowered(text);
  std::optional<bool> verdict;
  for (std::size_t pos = 0; pos < lower.size(); ++pos) {
    if (word_at(lower, pos, "yes")) verdict = true;
    if (word_at(lower, pos, "no")) verdict = false;
  }
  return verdict;
}

bool asserts_unreachable(const std::string& text) {
  static const char* cues[] = {"no path",      "no such path", "unreachable",
                               "not reachable", "cannot reach", "no route",
                               "not connected"};
  const std::string lower = lowered(text);
  for (const char* cue : cues) {
    if (lower.find(cue) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

ReverseNameMap reverse_name_map(const NodeMapping& mapping,
                                const ReferenceGraph& ref) {
  ReverseNameMap names;
  for (const auto& [query_node, character_id] : mapping) {
    names[ref.character(character_id).name] = query_node;
  }
  return names;
}

ParsedAnswer extract_answer(TaskKind task, const std::string& text,
                            const ReverseNameMap* names) {
  const std::string working =
      names != nullptr ? substitute_names(text, *names) : text;

  switch (task) {
    case TaskKind::connectivity:
    case TaskKind::cycle_detection: {
      if (auto verdict = last_yes_no(working)) {
        return BooleanAnswer{*verdict};
      }
      return UnparsedAnswer{};
    }
    case TaskKind::topological_sort: {
      auto tokens = scan_numbers(working);
      auto sequences = integer_sequences(working, tokens, std::nullopt);
      if (sequences.empty()) return UnparsedAnswer{};
      return OrderAnswer{sequences.back()};
    }
    case TaskKind::shortest_path: {
      if (asserts_unreachable(working)) {
        return BooleanAnswer{false};
      }
      auto tokens = scan_numbers(working);
      auto weight_token = stated_weight_token(working, tokens);
      auto sequences = integer_sequences(working, tokens, weight_token);
      if (!sequences.empty()) {
        PathAnswer answer{sequences.back(), std::nullopt};
        if (weight_token) {
          answer.stated_weight = Rational::parse(tokens[*weight_token].text);
        }
        return answer;
      }
      if (auto verdict = last_yes_no(working)) {
        return BooleanAnswer{*verdict};
      }
      return UnparsedAnswer{};
    }
  }
  return UnparsedAnswer{};
}

namespace {

bool path_is_optimal(const TaskInstance& instance,
                     const std::vector<NodeId>& path) {
  const auto& truth = std::get<PathTruth>(instance.truth);
  if (path.empty()) return false;
  if (path.front() != *instance.source || path.back() != *instance.target) {
    return false;
  }
  Rational total(0);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto weight = instance.graph.edge_weight(path[i], path[i + 1]);
    if (!weight) return false;
    total += *weight;
  }
  return total == truth.optimal_weight;
}

}  // namespace

GradeResult grade(const TaskInstance& instance, const ParsedAnswer& answer,
                  const std::optional<NodeMapping>& mapping) {
  GradeResult result;
  result.instance_id = instance.id;
  result.task = instance.task;
  result.mapping = mapping;

  switch (instance.task) {
    case TaskKind::connectivity:
    case TaskKind::cycle_detection: {
      const auto* boolean = std::get_if<BooleanAnswer>(&answer);
      result.correct =
          boolean != nullptr &&
          boolean->yes == std::get<BoolTruth>(instance.truth).value;
      break;
    }
    case TaskKind::topological_sort: {
      const auto* order = std::get_if<OrderAnswer>(&answer);
      result.correct =
          order != nullptr && validate_toposort(instance.graph, order->order);
      break;
    }
    case TaskKind::shortest_path: {
      const auto& truth = std::get<PathTruth>(instance.truth);
      if (!truth.reachable) {
        const auto* boolean = std::get_if<BooleanAnswer>(&answer);
        bool asserted = boolean != nullptr && !boolean->yes;
        result.path_ok = result.weight_ok = result.both_ok = asserted;
        break;
      }
      const auto* path = std::get_if<PathAnswer>(&answer);
      if (path != nullptr) {
        result.path_ok = path_is_optimal(instance, path->path);
        result.weight_ok = path->stated_weight.has_value() &&
                           *path->stated_weight == truth.optimal_weight;
      }
      result.both_ok = result.path_ok && result.weight_ok;
      break;
    }
  }
  return result;
}

const AccuracyGroup* AccuracyTable::find(TaskKind task,
                                         const std::string& strategy,
                                         const std::string& model) const {
  for (const AccuracyGroup& group : groups) {
    if (group.task == task && group.strategy == strategy &&
        group.model == model) {
      return &group;
    }
  }
  return nullptr;
}

AccuracyTable aggregate(const std::vector<GradeResult>& results) {
  if (results.empty()) {
    fail(Errc::empty_results, "nothing to aggregate");
  }
  std::map<std::tuple<int, std::string, std::string>, AccuracyGroup> groups;
  for (const GradeResult& result : results) {
    auto key = std::make_tuple(static_cast<int>(result.task), result.strategy,
                               result.model);
    AccuracyGroup& group = groups[key];
    group.task = result.task;
    group.strategy = result.strategy;
    group.model = result.model;
    group.count += 1;
    group.correct += result.correct ? 1 : 0;
    group.path_ok += result.path_ok ? 1 : 0;
    group.weight_ok += result.weight_ok ? 1 : 0;
    group.both_ok += result.both_ok ? 1 : 0;
  }
  AccuracyTable table;
  for (auto& [key, group] : groups) {
    table.groups.push_back(std::move(group));
  }
  return table;
}

std::string format_percent(int numerator, int denominator) {
  if (denominator <= 0) return "0.00";
  // Round half-up in integer arithmetic: hundredths of a percent.
  long long hundredths =
      (20000LL * numerator + denominator) / (2LL * denominator);
  std::string whole = std::to_string(hundredths / 100);
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac = "0" + frac;
  return whole + "." + frac;
}

}  // namespace graphctx
