#pragma once

#include <atomic>
#include <optional>
#include <string>

#include "graphctx/gateway.hpp"

namespace graphctx {

std::string sha256_hex(std::string_view data);

// On-disk response cache: one file per key, filename = hex digest of the
// request identity (model, decoding parameters, prompt). Entries carry the
// request fingerprint and are verified on read. Writes go through a
// temporary file and an atomic rename.
class ResponseCache {
 public:
  explicit ResponseCache(std::string directory);

  const std::string& directory() const { return directory_; }
  std::string key_for(const CompletionRequest& request) const;

  std::optional<CompletionResponse> lookup(
      const CompletionRequest& request) const;
  void store(const CompletionRequest& request,
             const CompletionResponse& response) const;

 private:
  std::string path_for(const std::string& key) const;

  std::string directory_;
};

// Serves a hit with from_cache=true and zero provider calls; on a miss,
// delegates to the client and stores the result.
CompletionResponse cached_complete(const ResponseCache& cache,
                                   CompletionClient& client,
                                   const CompletionRequest& request);

// CompletionClient facade over cached_complete, so callers that only know
// the client interface get caching transparently.
class CachingClient : public CompletionClient {
 public:
  CachingClient(const ResponseCache& cache, CompletionClient& inner)
      : cache_(cache), inner_(inner) {}

  CompletionResponse complete(const CompletionRequest& request) override;
  std::string name() const override { return inner_.name(); }

  long long hit_count() const { return hits_.load(); }

 private:
  const ResponseCache& cache_;
  CompletionClient& inner_;
  std::atomic<long long> hits_{0};
};

}  // namespace graphctx
