#include "graphctx/gateway.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "graphctx/detail/seed_mix.hpp"
#include "graphctx/error.hpp"

namespace graphctx {

void validate_request(const CompletionRequest& request) {
  if (request.max_tokens < 1) {
    fail(Errc::invalid_params, "max_tokens must be >= 1");
  }
  if (request.temperature < 0.0) {
    fail(Errc::invalid_params, "temperature must be >= 0");
  }
  if (!(request.top_p > 0.0) || request.top_p > 1.0) {
    fail(Errc::invalid_params, "top_p must be in (0, 1]");
  }
}

MockClient::MockClient(std::string name, Behavior behavior)
    : name_(std::move(name)), behavior_(std::move(behavior)) {}

CompletionResponse MockClient::complete(const CompletionRequest& request) {
  validate_request(request);
  count_call();
  bool errored = false;
  if (behavior_.error_rate > 0.0) {
    double u = detail::unit_from_bits(
        detail::splitmix64(behavior_.seed ^ detail::fnv1a(request.tag)));
    errored = u < behavior_.error_rate;
  }
  const auto& table =
      errored ? behavior_.error_replies_by_tag : behavior_.replies_by_tag;
  auto it = table.find(request.tag);
  std::string text;
  if (it != table.end()) {
    text = it->second;
  } else if (errored) {
    text = "";
  } else {
    text = behavior_.fallback_reply;
  }
  return CompletionResponse{text, name_, std::chrono::milliseconds(0), false};
}

ScriptedMockClient::ScriptedMockClient(std::vector<std::string> script)
    : script_(std::move(script)) {}

std::vector<std::string> read_script_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::io_error, "cannot open script file " + path);
  }
  std::vector<std::string> script;
  std::string block;
  std::string line;
  auto flush = [&]() {
    while (!block.empty() && block.back() == '\n') block.pop_back();
    script.push_back(block);
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line == "---") {
      flush();
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return script;
}

CompletionResponse ScriptedMockClient::complete(
    const CompletionRequest& request) {
  validate_request(request);
  count_call();
  std::lock_guard<std::mutex> lock(mutex_);
  if (next_ >= script_.size()) {
    fail(Errc::malformed_provider_reply,
         "script exhausted after " + std::to_string(script_.size()) +
             " replies (tag " + request.tag + ")");
  }
  return CompletionResponse{script_[next_++], name(),
                            std::chrono::milliseconds(0), false};
}

HttpChatClient::HttpChatClient(HttpClientConfig config)
    : config_(std::move(config)) {}

std::string HttpChatClient::name() const { return config_.base_url; }

CompletionResponse HttpChatClient::complete(const CompletionRequest& request) {
  validate_request(request);

  // Split "scheme://host[:port]/prefix" into the client origin and the path.
  std::string origin = config_.base_url;
  std::string prefix;
  auto scheme_end = origin.find("://");
  auto path_start = origin.find('/', scheme_end == std::string::npos
                                        ? 0
                                        : scheme_end + 3);
  if (path_start != std::string::npos) {
    prefix = origin.substr(path_start);
    origin = origin.substr(0, path_start);
  }
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  const std::string path = prefix + "/chat/completions";

  nlohmann::json body = {
      {"model", request.model},
      {"messages",
       nlohmann::json::array(
           {{{"role", "user"}, {"content", request.prompt}}})},
      {"max_tokens", request.max_tokens},
      {"temperature", request.temperature},
      {"top_p", request.top_p},
  };

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      fail(Errc::auth_error, "environment variable " + config_.api_key_env +
                                 " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  httplib::Client http(origin);
  http.set_connection_timeout(config_.timeout_seconds, 0);
  http.set_read_timeout(config_.timeout_seconds, 0);
  http.set_write_timeout(config_.timeout_seconds, 0);

  const std::string payload = body.dump();
  std::string last_failure = "no attempt made";

  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0 && config_.retry_backoff_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(
          config_.retry_backoff_ms << (attempt - 1)));
    }
    auto start = std::chrono::steady_clock::now();
    count_call();
    httplib::Result result =
        http.Post(path, headers, payload, "application/json");
    auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);

    if (!result) {
      last_failure = "connection failure: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status == 401 || result->status == 403) {
      fail(Errc::auth_error, "provider returned HTTP " +
                                 std::to_string(result->status) + ": " +
                                 result->body);
    }
    if (result->status == 429) {
      last_failure = "HTTP 429: " + result->body;
      continue;
    }
    if (result->status >= 500) {
      last_failure =
          "HTTP " + std::to_string(result->status) + ": " + result->body;
      continue;
    }
    if (result->status != 200) {
      fail(Errc::malformed_provider_reply,
           "unexpected HTTP " + std::to_string(result->status) + ": " +
               result->body);
    }
    try {
      nlohmann::json reply = nlohmann::json::parse(result->body);
      std::string text =
          reply.at("choices").at(0).at("message").at("content")
              .get<std::string>();
      return CompletionResponse{std::move(text), name(), latency, false};
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::malformed_provider_reply,
           std::string("cannot parse provider reply: ") + e.what());
    }
  }

  if (last_failure.rfind("HTTP 429", 0) == 0) {
    fail(Errc::rate_limited, "retries exhausted; last failure: " + last_failure);
  }
  fail(Errc::timeout, "retries exhausted; last failure: " + last_failure);
}

}  // namespace graphctx
