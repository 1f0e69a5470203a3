#include "graphctx/matcher.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "graphctx/error.hpp"

namespace graphctx {

namespace {

// Wernicke-style enumeration of connected induced k-node subgraphs. Each set
// is emitted exactly once; the seeded rank permutation scrambles the order
// without losing completeness, so the first `cap` sets are a deterministic
// sample and cover everything when the total count is within the cap.
class SubgraphEnumerator {
 public:
  SubgraphEnumerator(const Graph& g, int k, int cap, std::uint64_t seed)
      : graph_(g), k_(k), cap_(cap) {
    for (NodeId v : g.nodes()) order_.push_back(v);
    std::mt19937_64 rng(seed);
    for (std::size_t i = order_.size(); i > 1; --i) {
      std::swap(order_[i - 1], order_[rng() % i]);
    }
    for (std::size_t i = 0; i < order_.size(); ++i) {
      rank_[order_[i]] = static_cast<int>(i);
    }
  }

  std::vector<std::set<NodeId>> run() {
    for (NodeId root : order_) {
      if (static_cast<int>(found_.size()) >= cap_) break;
      std::vector<NodeId> chosen{root};
      std::vector<NodeId> frontier;
      for (NodeId u : ranked_neighbors(root)) {
        if (rank_[u] > rank_[root]) frontier.push_back(u);
      }
      extend(chosen, frontier, root);
    }
    return std::move(found_);
  }

 private:
  std::vector<NodeId> ranked_neighbors(NodeId v) const {
    std::vector<NodeId> out = graph_.neighbors(v);
    std::sort(out.begin(), out.end(), [this](NodeId a, NodeId b) {
      return rank_.at(a) < rank_.at(b);
    });
    return out;
  }

  void extend(std::vector<NodeId>& chosen, std::vector<NodeId> frontier,
              NodeId root) {
    if (static_cast<int>(found_.size()) >= cap_) return;
    if (static_cast<int>(chosen.size()) == k_) {
      found_.emplace_back(chosen.begin(), chosen.end());
      return;
    }
    while (!frontier.empty() && static_cast<int>(found_.size()) < cap_) {
      NodeId next = frontier.front();
      frontier.erase(frontier.begin());
      std::vector<NodeId> grown = frontier;
      for (NodeId u : ranked_neighbors(next)) {
        if (rank_.at(u) <= rank_.at(root)) continue;
        if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) {
          continue;
        }
        // Only nodes outside the neighborhood of the current set may enter
        // the extension, otherwise sets would be produced more than once.
        bool neighbor_of_chosen = false;
        for (NodeId c : chosen) {
          if (graph_.has_edge(c, u)) {
            neighbor_of_chosen = true;
            break;
          }
        }
        if (neighbor_of_chosen) continue;
        if (std::find(grown.begin(), grown.end(), u) == grown.end()) {
          grown.push_back(u);
        }
      }
      chosen.push_back(next);
      extend(chosen, grown, root);
      chosen.pop_back();
    }
  }

  const Graph& graph_;
  int k_;
  int cap_;
  std::vector<NodeId> order_;
  std::map<NodeId, int> rank_;
  std::vector<std::set<NodeId>> found_;
};

int count_mismatches(const Graph& gq, const Graph& gsub,
                     const std::vector<NodeId>& qnodes,
                     const std::vector<NodeId>& assigned) {
  std::map<NodeId, NodeId> forward;
  for (std::size_t i = 0; i < qnodes.size(); ++i) {
    forward[qnodes[i]] = assigned[i];
  }
  int mismatches = 0;
  int shared = 0;
  for (const Edge& e : gq.edges()) {
    if (gsub.has_edge(forward.at(e.u), forward.at(e.v))) {
      ++shared;
    } else {
      ++mismatches;
    }
  }
  mismatches += static_cast<int>(gsub.edge_count()) - shared;
  return mismatches;
}

// Depth-first search over assignments in lexicographic order. Partial cost
// only counts edges with both endpoints placed, so it never decreases and
// branches at or above the best score can be cut without affecting which
// optimum is found first.
struct ExactGedSearch {
  ExactGedSearch(const Graph& query, const Graph& candidate,
                 const std::vector<NodeId>& query_nodes,
                 const std::vector<NodeId>& candidate_nodes)
      : gq(query),
        gsub(candidate),
        qnodes(query_nodes),
        snodes(candidate_nodes) {}

  const Graph& gq;
  const Graph& gsub;
  const std::vector<NodeId>& qnodes;
  const std::vector<NodeId>& snodes;
  std::vector<NodeId> assigned;
  std::vector<bool> used;
  int best = INT32_MAX;
  std::vector<NodeId> best_assigned;

  void run() {
    assigned.clear();
    used.assign(snodes.size(), false);
    descend(0, 0);
  }

  void descend(std::size_t depth, int partial) {
    if (partial >= best) return;
    if (depth == qnodes.size()) {
      best = partial;
      best_assigned = assigned;
      return;
    }
    NodeId q = qnodes[depth];
    for (std::size_t i = 0; i < snodes.size(); ++i) {
      if (used[i]) continue;
      NodeId s = snodes[i];
      int added = 0;
      for (std::size_t j = 0; j < depth; ++j) {
        bool in_q = gq.has_edge(q, qnodes[j]);
        bool in_s = gsub.has_edge(s, assigned[j]);
        if (in_q != in_s) ++added;
      }
      used[i] = true;
      assigned.push_back(s);
      descend(depth + 1, partial + added);
      assigned.pop_back();
      used[i] = false;
    }
  }
};

// One bijection scored under the full matching objective: edge mismatches
// plus the edge-weight penalty.
struct ScoredAssignment {
  int mismatches = 0;
  Rational penalty;
  Rational combined;
  NodeMapping mapping;
  bool exact = true;
};

// Contribution of a single placed pair against every earlier placed pair.
// Query edges missing from the candidate charge one mismatch plus the max
// weight; candidate edges missing from the query charge one mismatch only.
struct JointSearch {
  JointSearch(const Graph& query, const Graph& candidate,
              const std::vector<NodeId>& query_nodes,
              const std::vector<NodeId>& candidate_nodes, Rational max_weight)
      : gq(query),
        gsub(candidate),
        qnodes(query_nodes),
        snodes(candidate_nodes),
        max_edge_weight(max_weight) {}

  const Graph& gq;
  const Graph& gsub;
  const std::vector<NodeId>& qnodes;
  const std::vector<NodeId>& snodes;
  Rational max_edge_weight;
  std::vector<NodeId> assigned;
  std::vector<bool> used;
  int partial_mismatches = 0;
  Rational partial_penalty;
  Rational best_combined;
  bool have_best = false;
  int best_mismatches = 0;
  Rational best_penalty;
  std::vector<NodeId> best_assigned;

  void run() {
    assigned.clear();
    used.assign(snodes.size(), false);
    descend(0);
  }

  void pair_cost(NodeId q, NodeId s, std::size_t depth, int& mismatches,
                 Rational& penalty) const {
    for (std::size_t j = 0; j < depth; ++j) {
      auto qw = gq.edge_weight(q, qnodes[j]);
      auto sw = gsub.edge_weight(s, assigned[j]);
      if (qw && sw) {
        penalty += (*qw - *sw).abs();
      } else if (qw) {
        mismatches += 1;
        penalty += max_edge_weight;
      } else if (sw) {
        mismatches += 1;
      }
    }
  }

  void descend(std::size_t depth) {
    Rational partial = Rational(partial_mismatches) + partial_penalty;
    if (have_best && !(partial < best_combined)) return;
    if (depth == qnodes.size()) {
      best_combined = partial;
      best_mismatches = partial_mismatches;
      best_penalty = partial_penalty;
      best_assigned = assigned;
      have_best = true;
      return;
    }
    NodeId q = qnodes[depth];
    for (std::size_t i = 0; i < snodes.size(); ++i) {
      if (used[i]) continue;
      int added_mismatches = 0;
      Rational added_penalty;
      pair_cost(q, snodes[i], depth, added_mismatches, added_penalty);
      used[i] = true;
      assigned.push_back(snodes[i]);
      partial_mismatches += added_mismatches;
      partial_penalty += added_penalty;
      descend(depth + 1);
      partial_penalty -= added_penalty;
      partial_mismatches -= added_mismatches;
      assigned.pop_back();
      used[i] = false;
    }
  }
};

ScoredAssignment score_assignment(const Graph& gq, const Graph& gsub,
                                  const std::vector<NodeId>& qnodes,
                                  const std::vector<NodeId>& assigned,
                                  Rational max_edge_weight) {
  ScoredAssignment out;
  std::map<NodeId, NodeId> forward;
  for (std::size_t i = 0; i < qnodes.size(); ++i) {
    forward[qnodes[i]] = assigned[i];
  }
  int shared = 0;
  for (const Edge& e : gq.edges()) {
    auto sw = gsub.edge_weight(forward.at(e.u), forward.at(e.v));
    if (sw) {
      ++shared;
      out.penalty += (e.weight - *sw).abs();
    } else {
      out.mismatches += 1;
      out.penalty += max_edge_weight;
    }
  }
  out.mismatches += static_cast<int>(gsub.edge_count()) - shared;
  out.combined = Rational(out.mismatches) + out.penalty;
  for (std::size_t i = 0; i < qnodes.size(); ++i) {
    out.mapping[qnodes[i]] = assigned[i];
  }
  return out;
}

// Joint objective over all bijections: exhaustive up to the same node limit
// as the plain GED search, greedy-plus-swaps beyond it.
ScoredAssignment best_assignment(const Graph& gq, const Graph& gsub,
                                 Rational max_edge_weight,
                                 std::size_t exhaustive_limit) {
  std::vector<NodeId> qnodes(gq.nodes().begin(), gq.nodes().end());
  std::vector<NodeId> snodes(gsub.nodes().begin(), gsub.nodes().end());
  if (qnodes.empty()) return {};

  if (qnodes == snodes && gq == gsub) {
    // The identity is a zero-cost optimum and also the lexicographically
    // smallest assignment, matching the exhaustive tie-break.
    ScoredAssignment out;
    for (NodeId v : qnodes) out.mapping[v] = v;
    return out;
  }

  if (qnodes.size() <= exhaustive_limit) {
    JointSearch search{gq, gsub, qnodes, snodes, max_edge_weight};
    search.run();
    ScoredAssignment out;
    out.mismatches = search.best_mismatches;
    out.penalty = search.best_penalty;
    out.combined = search.best_combined;
    for (std::size_t i = 0; i < qnodes.size(); ++i) {
      out.mapping[qnodes[i]] = search.best_assigned[i];
    }
    return out;
  }

  // Degree-guided seed, then pairwise swaps until the combined score stops
  // improving.
  std::vector<NodeId> by_degree = qnodes;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](NodeId a, NodeId b) {
                     return gq.neighbors(a).size() > gq.neighbors(b).size();
                   });
  std::map<NodeId, NodeId> forward;
  std::vector<bool> used(snodes.size(), false);
  for (NodeId q : by_degree) {
    std::size_t pick = snodes.size();
    long long pick_gap = 0;
    for (std::size_t i = 0; i < snodes.size(); ++i) {
      if (used[i]) continue;
      long long gap = std::llabs(
          static_cast<long long>(gq.neighbors(q).size()) -
          static_cast<long long>(gsub.neighbors(snodes[i]).size()));
      if (pick == snodes.size() || gap < pick_gap) {
        pick = i;
        pick_gap = gap;
      }
    }
    used[pick] = true;
    forward[q] = snodes[pick];
  }
  std::vector<NodeId> assigned;
  assigned.reserve(qnodes.size());
  for (NodeId q : qnodes) assigned.push_back(forward.at(q));

  ScoredAssignment best =
      score_assignment(gq, gsub, qnodes, assigned, max_edge_weight);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < assigned.size(); ++i) {
      for (std::size_t j = i + 1; j < assigned.size(); ++j) {
        std::swap(assigned[i], assigned[j]);
        ScoredAssignment candidate =
            score_assignment(gq, gsub, qnodes, assigned, max_edge_weight);
        if (candidate.combined < best.combined) {
          best = candidate;
          improved = true;
        } else {
          std::swap(assigned[i], assigned[j]);
        }
      }
    }
  }
  best.exact = false;
  return best;
}

GedResult greedy_ged(const Graph& gq, const Graph& gsub,
                     const std::vector<NodeId>& qnodes,
                     const std::vector<NodeId>& snodes) {
  // Seed the assignment by degree: highest-degree query nodes claim the
  // targets with the closest degree, then pairwise swaps run to a fixpoint.
  std::vector<NodeId> by_degree = qnodes;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](NodeId a, NodeId b) {
                     return gq.neighbors(a).size() > gq.neighbors(b).size();
                   });
  std::map<NodeId, NodeId> forward;
  std::vector<bool> used(snodes.size(), false);
  for (NodeId q : by_degree) {
    std::size_t pick = snodes.size();
    long long pick_gap = 0;
    for (std::size_t i = 0; i < snodes.size(); ++i) {
      if (used[i]) continue;
      long long gap = std::llabs(
          static_cast<long long>(gq.neighbors(q).size()) -
          static_cast<long long>(gsub.neighbors(snodes[i]).size()));
      if (pick == snodes.size() || gap < pick_gap) {
        pick = i;
        pick_gap = gap;
      }
    }
    used[pick] = true;
    forward[q] = snodes[pick];
  }

  std::vector<NodeId> assigned;
  assigned.reserve(qnodes.size());
  for (NodeId q : qnodes) assigned.push_back(forward.at(q));
  int cost = count_mismatches(gq, gsub, qnodes, assigned);

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < assigned.size(); ++i) {
      for (std::size_t j = i + 1; j < assigned.size(); ++j) {
        std::swap(assigned[i], assigned[j]);
        int swapped = count_mismatches(gq, gsub, qnodes, assigned);
        if (swapped < cost) {
          cost = swapped;
          improved = true;
        } else {
          std::swap(assigned[i], assigned[j]);
        }
      }
    }
  }

  GedResult result;
  result.distance = cost;
  result.exact = false;
  for (std::size_t i = 0; i < qnodes.size(); ++i) {
    result.mapping[qnodes[i]] = assigned[i];
  }
  return result;
}

constexpr std::size_t kExhaustiveGedLimit = 8;

}  // namespace

std::vector<Graph> generate_subgraphs(const Graph& ref_skeleton, int k,
                                      int cap, std::uint64_t seed) {
  const int n = static_cast<int>(ref_skeleton.node_count());
  if (k < 1 || cap < 1) {
    fail(Errc::invalid_params, "k and cap must be positive");
  }
  if (k > n) {
    fail(Errc::k_too_large, "k=" + std::to_string(k) + " exceeds the " +
                                std::to_string(n) + "-node reference");
  }
  SubgraphEnumerator enumerator(ref_skeleton, k, cap, seed);
  std::vector<std::set<NodeId>> sets = enumerator.run();
  if (sets.empty()) {
    fail(Errc::no_connected_subgraph,
         "no connected induced subgraph with " + std::to_string(k) + " nodes");
  }
  std::vector<Graph> out;
  out.reserve(sets.size());
  for (const auto& keep : sets) {
    out.push_back(induced_subgraph(ref_skeleton, keep));
  }
  return out;
}

GedResult graph_edit_distance(const Graph& gq, const Graph& gsub) {
  if (gq.node_count() != gsub.node_count()) {
    fail(Errc::size_mismatch, "query has " + std::to_string(gq.node_count()) +
                                  " nodes, candidate has " +
                                  std::to_string(gsub.node_count()));
  }
  std::vector<NodeId> qnodes(gq.nodes().begin(), gq.nodes().end());
  std::vector<NodeId> snodes(gsub.nodes().begin(), gsub.nodes().end());
  if (qnodes.empty()) return {};

  if (qnodes == snodes && gq == gsub) {
    GedResult identity;
    for (NodeId v : qnodes) identity.mapping[v] = v;
    return identity;
  }

  if (qnodes.size() <= kExhaustiveGedLimit) {
    ExactGedSearch search{gq, gsub, qnodes, snodes};
    search.run();
    GedResult result;
    result.distance = search.best;
    for (std::size_t i = 0; i < qnodes.size(); ++i) {
      result.mapping[qnodes[i]] = search.best_assigned[i];
    }
    return result;
  }
  return greedy_ged(gq, gsub, qnodes, snodes);
}

Rational edge_weight_penalty(const Graph& gq, const Graph& gsub,
                             const NodeMapping& mapping,
                             Rational max_edge_weight) {
  for (NodeId v : gq.nodes()) {
    if (mapping.count(v) == 0) {
      fail(Errc::unmapped_node,
           "query node " + std::to_string(v) + " has no mapping");
    }
  }
  Rational penalty(0);
  for (const Edge& e : gq.edges()) {
    NodeId mu = mapping.at(e.u);
    NodeId mv = mapping.at(e.v);
    if (auto ref_weight = gsub.edge_weight(mu, mv)) {
      penalty += (e.weight - *ref_weight).abs();
    } else {
      penalty += max_edge_weight;
    }
  }
  return penalty;
}

MatchResult best_subgraph(const Graph& gq, const ReferenceGraph& ref, int cap,
                          std::uint64_t seed) {
  const std::size_t k = gq.node_count();
  if (k == 0) {
    fail(Errc::invalid_params, "query graph has no nodes");
  }
  if (k > ref.skeleton.node_count()) {
    fail(Errc::query_too_large,
         "query has " + std::to_string(k) + " nodes but the reference has " +
             std::to_string(ref.skeleton.node_count()));
  }
  // The reference relationship graph is undirected, so directed queries are
  // matched through their undirected skeleton.
  const Graph query = undirected_skeleton(gq);
  const Rational max_edge_weight(ref.max_scale);

  std::vector<Graph> candidates =
      generate_subgraphs(ref.skeleton, static_cast<int>(k), cap, seed);

  MatchResult best;
  bool have_best = false;
  for (const Graph& candidate : candidates) {
    // The node correspondence minimizes the full combined objective, so the
    // winning score matches an exhaustive subgraph-and-bijection search.
    ScoredAssignment scored = best_assignment(query, candidate,
                                              max_edge_weight,
                                              kExhaustiveGedLimit);
    if (!have_best || scored.combined < best.combined_score) {
      have_best = true;
      best.best_subgraph = candidate;
      best.mapping = scored.mapping;
      best.ged_score = scored.mismatches;
      best.weight_penalty = scored.penalty;
      best.combined_score = scored.combined;
      best.ged_exact = scored.exact;
    }
  }
  best.candidates_examined = static_cast<int>(candidates.size());
  return best;
}

}  // namespace graphctx
