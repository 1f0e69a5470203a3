#pragma once

#include <stdexcept>
#include <string>

namespace graphctx {

// Every failure the toolkit can raise, one code per contract violation.
enum class Errc {
  // graph core
  malformed_token,
  self_loop,
  duplicate_edge,
  non_positive_weight,
  unknown_node,
  missing_mapping,
  non_injective_mapping,
  // oracles
  directed_graph_rejected,
  undirected_graph_rejected,
  cyclic_graph,
  unreachable,
  invalid_params,
  // matcher
  k_too_large,
  no_connected_subgraph,
  size_mismatch,
  unmapped_node,
  query_too_large,
  // context
  parse_error,
  scale_violation,
  duplicate_name,
  too_few_characters,
  missing_exemplars,
  unknown_strategy,
  no_drafts,
  // gateway
  auth_error,
  timeout,
  rate_limited,
  malformed_provider_reply,
  cache_io_error,
  // eval
  missing_dataset,
  instance_parse_error,
  truth_mismatch,
  empty_results,
  io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace graphctx
