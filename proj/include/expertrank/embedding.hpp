#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "expertrank/phrases.hpp"
#include "expertrank/types.hpp"

namespace expertrank {

struct EmbeddingTable {
  Eigen::Index dim = 0;
  std::unordered_map<std::string, Eigen::VectorXd> vectors;

  bool has(const std::string& term) const { return vectors.count(term) > 0; }
};

// Whitespace-separated "term v1 ... vk" lines; every row must agree on k.
EmbeddingTable load_embeddings(const std::string& path);

// Mean of the constituent-term vectors that exist in the table; nullopt when
// none do.
std::optional<Eigen::VectorXd> phrase_vector(const std::vector<std::string>& terms,
                                             const EmbeddingTable& table);

// Exact key match wins with similarity 1. Otherwise cosine similarity of mean
// vectors; ties broken by lexicographically smaller key. Topics with no
// embedded terms are skipped. Throws UnknownTermError when no query term is
// embedded (and no exact match exists).
std::pair<TopicId, double> match_topic(const std::vector<std::string>& query_terms,
                                       const TopicSet& topics,
                                       const EmbeddingTable& table);

}  // namespace expertrank
