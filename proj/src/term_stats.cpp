#include "expertrank/term_stats.hpp"

#include <algorithm>

#include "expertrank/parallel.hpp"

namespace expertrank {

TermStats build_term_stats(const Corpus& corpus, const TopicSet& topics, int jobs) {
  if (!corpus.preprocessed)
    throw Error("build_term_stats requires a preprocessed corpus");

  TermStats stats;
  stats.total_docs = static_cast<int>(corpus.documents.size());
  stats.doc_tf.resize(corpus.documents.size());
  stats.doc_len.resize(corpus.documents.size());

  // vocabulary in first-appearance order; determinism only needs stability
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    stats.doc_len[d] = static_cast<int>(doc.tokens.size());
    stats.collection_len += static_cast<std::int64_t>(doc.tokens.size());
    auto& tf = stats.doc_tf[d];
    for (const auto& lemma : doc.tokens) {
      auto [it, inserted] =
          stats.term_index.emplace(lemma, static_cast<int>(stats.terms.size()));
      if (inserted) stats.terms.push_back(lemma);
      ++tf[it->second];
    }
  }

  stats.term_df.assign(stats.terms.size(), 0);
  stats.term_cf.assign(stats.terms.size(), 0);
  stats.postings.assign(stats.terms.size(), {});
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    for (const auto& [term, count] : stats.doc_tf[d]) {
      ++stats.term_df[term];
      stats.term_cf[term] += count;
      stats.postings[term].push_back(d);
    }
  }
  for (auto& p : stats.postings) std::sort(p.begin(), p.end());

  // phrase_df: verbatim contiguous occurrence inside one retained sentence
  std::size_t max_len = 1;
  for (const auto& p : topics.phrases) max_len = std::max(max_len, p.size());

  std::vector<std::vector<std::size_t>> doc_hits(corpus.documents.size());
  parallel_for(corpus.documents.size(), jobs, [&](std::size_t d) {
    std::vector<char> seen(topics.size(), 0);
    std::string key;
    for (const auto& sentence : corpus.documents[d].sentences) {
      for (std::size_t start = 0; start < sentence.size(); ++start) {
        key.clear();
        for (std::size_t len = 1; len <= max_len && start + len <= sentence.size();
             ++len) {
          if (len > 1) key.push_back(' ');
          key += sentence[start + len - 1];
          auto it = topics.key_to_pos.find(key);
          if (it != topics.key_to_pos.end() && !seen[it->second]) {
            seen[it->second] = 1;
            doc_hits[d].push_back(it->second);
          }
        }
      }
    }
  });

  stats.phrase_df.assign(topics.size(), 0);
  for (const auto& hits : doc_hits)
    for (std::size_t t : hits) ++stats.phrase_df[t];

  // joint_df: postings intersection over distinct constituent terms
  stats.joint_df.assign(topics.size(), 0);
  parallel_for(topics.size(), jobs, [&](std::size_t t) {
    const auto& phrase = topics.phrases[t];
    std::vector<int> ids;
    for (const auto& term : phrase.terms) {
      int id = stats.term_id(term);
      if (id < 0) return;  // unseen term: joint_df stays 0
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      return stats.postings[a].size() < stats.postings[b].size();
    });
    std::vector<std::size_t> acc = stats.postings[ids[0]];
    for (std::size_t i = 1; i < ids.size() && !acc.empty(); ++i) {
      std::vector<std::size_t> next;
      std::set_intersection(acc.begin(), acc.end(), stats.postings[ids[i]].begin(),
                            stats.postings[ids[i]].end(), std::back_inserter(next));
      acc = std::move(next);
    }
    stats.joint_df[t] = static_cast<int>(acc.size());
  });

  stats.topic_pos = topics.key_to_pos;
  return stats;
}

std::vector<std::size_t> candidate_docs(const Phrase& phrase, const TermStats& stats) {
  std::vector<std::size_t> out;
  for (const auto& term : phrase.terms) {
    int id = stats.term_id(term);
    if (id < 0) continue;
    const auto& p = stats.postings[id];
    if (out.empty()) {
      out = p;
    } else {
      std::vector<std::size_t> merged;
      merged.reserve(out.size() + p.size());
      std::set_union(out.begin(), out.end(), p.begin(), p.end(),
                     std::back_inserter(merged));
      out = std::move(merged);
    }
  }
  return out;
}

}  // namespace expertrank
