#include "expertrank/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "expertrank/io.hpp"

namespace expertrank {

EmbeddingTable load_embeddings(const std::string& path) {
  EmbeddingTable table;
  int line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream in(line);
    std::string term;
    in >> term;
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (term.empty() || values.empty())
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected term followed by vector components");
    if (table.dim == 0) table.dim = static_cast<Eigen::Index>(values.size());
    if (static_cast<Eigen::Index>(values.size()) != table.dim)
      throw ParseError("line " + std::to_string(line_no) + ": dimension " +
                       std::to_string(values.size()) + " != " +
                       std::to_string(table.dim));
    Eigen::VectorXd vec =
        Eigen::Map<const Eigen::VectorXd>(values.data(), table.dim);
    if (!table.vectors.emplace(term, std::move(vec)).second)
      throw IntegrityError("line " + std::to_string(line_no) +
                           ": duplicate term " + term);
  }
  return table;
}

std::optional<Eigen::VectorXd> phrase_vector(const std::vector<std::string>& terms,
                                             const EmbeddingTable& table) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.dim);
  int known = 0;
  for (const auto& term : terms) {
    auto it = table.vectors.find(term);
    if (it == table.vectors.end()) continue;
    sum += it->second;
    ++known;
  }
  if (known == 0) return std::nullopt;
  return sum / known;
}

std::pair<TopicId, double> match_topic(const std::vector<std::string>& query_terms,
                                       const TopicSet& topics,
                                       const EmbeddingTable& table) {
  if (query_terms.empty()) throw UnknownTermError("empty query");
  std::string key;
  for (std::size_t i = 0; i < query_terms.size(); ++i) {
    if (i) key.push_back(' ');
    key += query_terms[i];
  }
  auto exact = topics.key_to_pos.find(key);
  if (exact != topics.key_to_pos.end())
    return {topics.ids[exact->second], 1.0};

  auto query_vec = phrase_vector(query_terms, table);
  if (!query_vec)
    throw UnknownTermError("no query term has an embedding: " + key);
  double query_norm = query_vec->norm();

  // phrase keys visited in ascending order so the first best wins ties
  std::vector<std::size_t> order(topics.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return topics.phrases[a].key < topics.phrases[b].key;
  });

  double best = -2.0;
  std::size_t best_pos = topics.size();
  for (std::size_t pos : order) {
    auto cand = phrase_vector(topics.phrases[pos].terms, table);
    if (!cand) continue;
    double denom = query_norm * cand->norm();
    double sim = denom > 0 ? query_vec->dot(*cand) / denom : 0.0;
    if (sim > best) {
      best = sim;
      best_pos = pos;
    }
  }
  if (best_pos == topics.size())
    throw UnknownTermError("no topic has embedded terms");
  return {topics.ids[best_pos], best};
}

}  // namespace expertrank
