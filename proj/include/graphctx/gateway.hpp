#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace graphctx {

struct CompletionRequest {
  std::string model;
  std::string prompt;
  int max_tokens = 512;
  double temperature = 0.001;
  double top_p = 0.95;
  // Routing hint for mock clients (instance id or "context:<task>"). Not part
  // of the request identity: the cache key ignores it.
  std::string tag;
};

struct CompletionResponse {
  std::string text;
  std::string provider;
  std::chrono::milliseconds latency{0};
  bool from_cache = false;
};

// Single-shot completion backend. The call counter counts provider
// round-trips, so a retried request counts once per attempt and a cache hit
// counts zero times.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual CompletionResponse complete(const CompletionRequest& request) = 0;
  virtual std::string name() const = 0;

  long long call_count() const { return calls_.load(); }

 protected:
  void count_call() { calls_.fetch_add(1); }

 private:
  std::atomic<long long> calls_{0};
};

void validate_request(const CompletionRequest& request);

// Replies from a fixed tag -> answer table. With a non-zero error rate, a
// per-tag seeded coin swaps in the error reply, so the behavior does not
// depend on call order.
class MockClient : public CompletionClient {
 public:
  struct Behavior {
    std::map<std::string, std::string> replies_by_tag;
    std::map<std::string, std::string> error_replies_by_tag;
    std::string fallback_reply = "I do not know.";
    double error_rate = 0.0;
    std::uint64_t seed = 0;
  };

  MockClient(std::string name, Behavior behavior);

  CompletionResponse complete(const CompletionRequest& request) override;
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Behavior behavior_;
};

// Transcript file parser: one reply per "---" separated block.
std::vector<std::string> read_script_file(const std::string& path);

// Returns a fixed transcript in order; a request past the end reports a
// scripted provider failure.
class ScriptedMockClient : public CompletionClient {
 public:
  explicit ScriptedMockClient(std::vector<std::string> script);

  CompletionResponse complete(const CompletionRequest& request) override;
  std::string name() const override { return "mock:script"; }

 private:
  std::vector<std::string> script_;
  std::size_t next_ = 0;
  std::mutex mutex_;
};

struct HttpClientConfig {
  std::string base_url;     // e.g. "https://api.example.com/v1"
  std::string api_key_env;  // environment variable holding the bearer token
  int timeout_seconds = 120;
  int max_retries = 3;
  int retry_backoff_ms = 250;  // doubles per retry; 0 disables sleeping
};

// OpenAI-compatible chat-completions client. Retries transient failures
// (HTTP 429/5xx, connection errors) with exponential backoff; auth failures
// and malformed replies surface immediately.
class HttpChatClient : public CompletionClient {
 public:
  explicit HttpChatClient(HttpClientConfig config);

  CompletionResponse complete(const CompletionRequest& request) override;
  std::string name() const override;

 private:
  HttpClientConfig config_;
};

}  // namespace graphctx
