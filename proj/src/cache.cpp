#include "graphctx/cache.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "graphctx/error.hpp"

namespace graphctx {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    fail(Errc::cache_io_error, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

std::string canonical_double(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

std::string fingerprint(const CompletionRequest& request) {
  std::ostringstream out;
  out << request.model << '\n'
      << request.max_tokens << '\n'
      << canonical_double(request.temperature) << '\n'
      << canonical_double(request.top_p) << '\n'
      << request.prompt;
  return out.str();
}

}  // namespace

ResponseCache::ResponseCache(std::string directory)
    : directory_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec) {
    fail(Errc::cache_io_error,
         "cannot create cache directory " + directory_ + ": " + ec.message());
  }
}

std::string ResponseCache::key_for(const CompletionRequest& request) const {
  return sha256_hex(fingerprint(request));
}

std::string ResponseCache::path_for(const std::string& key) const {
  return (fs::path(directory_) / (key + ".json")).string();
}

std::optional<CompletionResponse> ResponseCache::lookup(
    const CompletionRequest& request) const {
  const std::string key = key_for(request);
  const std::string path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json doc;
  try {
    in >> doc;
    CompletionResponse response;
    if (doc.at("fingerprint_sha256").get<std::string>() !=
        sha256_hex(fingerprint(request))) {
      fail(Errc::cache_io_error, "fingerprint mismatch in entry " + key);
    }
    response.text = doc.at("response").get<std::string>();
    response.provider = doc.at("provider").get<std::string>();
    response.latency = std::chrono::milliseconds(0);
    response.from_cache = true;
    return response;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::cache_io_error,
         "corrupt cache entry " + key + ": " + e.what());
  }
}

void ResponseCache::store(const CompletionRequest& request,
                          const CompletionResponse& response) const {
  const std::string key = key_for(request);
  nlohmann::json doc = {
      {"fingerprint_sha256", sha256_hex(fingerprint(request))},
      {"model", request.model},
      {"max_tokens", request.max_tokens},
      {"temperature", request.temperature},
      {"top_p", request.top_p},
      {"prompt", request.prompt},
      {"response", response.text},
      {"provider", response.provider},
  };
  const std::string path = path_for(key);
  // Unique staging name so concurrent writers of one key cannot collide.
  static std::atomic<unsigned long long> counter{0};
  const std::string tmp =
      path + ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      fail(Errc::cache_io_error, "cannot write cache entry " + key);
    }
    out << doc.dump(2) << '\n';
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fail(Errc::cache_io_error,
         "cannot finalize cache entry " + key + ": " + ec.message());
  }
}

CompletionResponse cached_complete(const ResponseCache& cache,
                                   CompletionClient& client,
                                   const CompletionRequest& request) {
  if (auto hit = cache.lookup(request)) {
    return *hit;
  }
  CompletionResponse response = client.complete(request);
  cache.store(request, response);
  return response;
}

CompletionResponse CachingClient::complete(const CompletionRequest& request) {
  if (auto hit = cache_.lookup(request)) {
    hits_.fetch_add(1);
    return *hit;
  }
  CompletionResponse response = inner_.complete(request);
  cache_.store(request, response);
  return response;
}

}  // namespace graphctx
