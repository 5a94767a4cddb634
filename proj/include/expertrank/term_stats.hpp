#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/phrases.hpp"

namespace expertrank {

// Frequency tables over the retained-lemma vocabulary plus per-topic document
// frequencies. Built once per (corpus, topic set) pair; scorers only read.
struct TermStats {
  std::vector<std::string> terms;  // term id -> lemma
  std::unordered_map<std::string, int> term_index;

  std::vector<std::unordered_map<int, int>> doc_tf;  // doc pos -> {term id: count}
  std::vector<int> doc_len;                          // |d|
  std::vector<int> term_df;
  std::vector<std::int64_t> term_cf;
  std::vector<std::vector<std::size_t>> postings;  // term id -> sorted doc positions

  // Parallel to the topic set: documents containing the phrase verbatim
  // (contiguous, within one sentence) and documents containing every
  // constituent term anywhere. topic_pos mirrors the topic set's key index so
  // scorers can resolve a phrase on their own.
  std::vector<int> phrase_df;
  std::vector<int> joint_df;
  std::unordered_map<std::string, std::size_t> topic_pos;

  std::int64_t collection_len = 0;
  int total_docs = 0;

  int term_id(const std::string& term) const {
    auto it = term_index.find(term);
    return it == term_index.end() ? -1 : it->second;
  }
  int tf(int term, std::size_t doc) const {
    if (term < 0) return 0;
    const auto& m = doc_tf[doc];
    auto it = m.find(term);
    return it == m.end() ? 0 : it->second;
  }
  int df(int term) const { return term < 0 ? 0 : term_df[term]; }
  std::int64_t cf(int term) const { return term < 0 ? 0 : term_cf[term]; }

  int phrase_df_of(const std::string& key) const {
    auto it = topic_pos.find(key);
    return it == topic_pos.end() ? 0 : phrase_df[it->second];
  }
  int joint_df_of(const std::string& key) const {
    auto it = topic_pos.find(key);
    return it == topic_pos.end() ? 0 : joint_df[it->second];
  }
};

TermStats build_term_stats(const Corpus& corpus, const TopicSet& topics, int jobs = 1);

// Sorted union of the constituent terms' postings lists: every document that
// could score nonzero for the phrase under the tf-based scorers.
std::vector<std::size_t> candidate_docs(const Phrase& phrase, const TermStats& stats);

}  // namespace expertrank
