#include "graphctx/error.hpp"

namespace graphctx {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_token: return "MalformedToken";
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::non_positive_weight: return "NonPositiveWeight";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::missing_mapping: return "MissingMapping";
    case Errc::non_injective_mapping: return "NonInjectiveMapping";
    case Errc::directed_graph_rejected: return "DirectedGraphRejected";
    case Errc::undirected_graph_rejected: return "UndirectedGraphRejected";
    case Errc::cyclic_graph: return "CyclicGraph";
    case Errc::unreachable: return "Unreachable";
    case Errc::invalid_params: return "InvalidParams";
    case Errc::k_too_large: return "KTooLarge";
    case Errc::no_connected_subgraph: return "NoConnectedSubgraph";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::unmapped_node: return "UnmappedNode";
    case Errc::query_too_large: return "QueryTooLarge";
    case Errc::parse_error: return "ParseError";
    case Errc::scale_violation: return "ScaleViolation";
    case Errc::duplicate_name: return "DuplicateName";
    case Errc::too_few_characters: return "TooFewCharacters";
    case Errc::missing_exemplars: return "MissingExemplars";
    case Errc::unknown_strategy: return "UnknownStrategy";
    case Errc::no_drafts: return "NoDrafts";
    case Errc::auth_error: return "AuthError";
    case Errc::timeout: return "Timeout";
    case Errc::rate_limited: return "RateLimited";
    case Errc::malformed_provider_reply: return "MalformedProviderReply";
    case Errc::cache_io_error: return "CacheIoError";
    case Errc::missing_dataset: return "MissingDataset";
    case Errc::instance_parse_error: return "InstanceParseError";
    case Errc::truth_mismatch: return "TruthMismatch";
    case Errc::empty_results: return "EmptyResults";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace graphctx
