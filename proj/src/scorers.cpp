#include "expertrank/scorers.hpp"

#include <algorithm>
#include <cmath>

namespace expertrank {

double ntf(const Phrase& t, std::size_t doc, const TermStats& stats) {
  double len = stats.doc_len[doc];
  if (len == 0) return 0.0;
  double sum = 0.0;
  for (const auto& term : t.terms)
    sum += stats.tf(stats.term_id(term), doc) / len;
  return sum / static_cast<double>(t.terms.size());
}

double nidf(const Phrase& t, const TermStats& stats, const ModelConfig& cfg) {
  int pdf = stats.phrase_df_of(t.key);
  int jdf = stats.joint_df_of(t.key);
  if (pdf == 0 || jdf == 0)
    throw UndefinedIdfError("idf undefined for phrase: " + t.key);
  double value = std::log(static_cast<double>(stats.total_docs) * pdf /
                          (static_cast<double>(jdf) * jdf));
  if (cfg.clamp_nidf) value = std::max(0.0, value);
  return value;
}

double ntfidf(const Phrase& t, std::size_t doc, const TermStats& stats,
              const ModelConfig& cfg) {
  return ntf(t, doc, stats) * nidf(t, stats, cfg);
}

double tfidf(const Phrase& t, std::size_t doc, const TermStats& stats) {
  double len = stats.doc_len[doc];
  if (len == 0) return 0.0;
  double sum = 0.0;
  for (const auto& term : t.terms) {
    int id = stats.term_id(term);
    int df = stats.df(id);
    if (df == 0) continue;
    sum += (stats.tf(id, doc) / len) *
           std::log(static_cast<double>(stats.total_docs) / df);
  }
  return sum;
}

double dlm_score(const Phrase& t, std::size_t doc, const TermStats& stats,
                 const ModelConfig& cfg) {
  double len = stats.doc_len[doc];
  double collection = cfg.collection_lm_by_docs
                          ? static_cast<double>(stats.total_docs)
                          : static_cast<double>(stats.collection_len);
  double product = 1.0;
  for (const auto& term : t.terms) {
    int id = stats.term_id(term);
    double p_doc = len > 0 ? stats.tf(id, doc) / len : 0.0;
    double p_coll = collection > 0 ? stats.cf(id) / collection : 0.0;
    product *= (1.0 - cfg.dlm_lambda) * p_doc + cfg.dlm_lambda * p_coll;
  }
  return product;
}

double bm25_score(const Phrase& t, std::size_t doc, const TermStats& stats,
                  const ModelConfig& cfg) {
  double avgdl = stats.total_docs > 0
                     ? static_cast<double>(stats.collection_len) / stats.total_docs
                     : 0.0;
  double len = stats.doc_len[doc];
  double score = 0.0;
  for (const auto& term : t.terms) {
    int id = stats.term_id(term);
    int df = stats.df(id);
    double idf = std::log((stats.total_docs - df + 0.5) / (df + 0.5) + 1.0);
    idf = std::max(0.0, idf);
    double tf = stats.tf(id, doc);
    double denom =
        tf + cfg.bm25_k1 * (1.0 - cfg.bm25_b +
                            cfg.bm25_b * (avgdl > 0 ? len / avgdl : 0.0));
    if (denom > 0) score += idf * tf * (cfg.bm25_k1 + 1.0) / denom;
  }
  return score;
}

std::vector<std::size_t> bm25_ranking(const Phrase& t, const Corpus& corpus,
                                      const TermStats& stats,
                                      const ModelConfig& cfg) {
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(corpus.documents.size());
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    scored.emplace_back(bm25_score(t, d, stats, cfg), d);
  std::sort(scored.begin(), scored.end(),
            [&](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return corpus.documents[a.second].id < corpus.documents[b.second].id;
            });
  std::vector<std::size_t> order;
  order.reserve(scored.size());
  for (const auto& [score, d] : scored) order.push_back(d);
  return order;
}

double wiser_score(std::size_t expert_pos, const Phrase& t, const Corpus& corpus,
                   const TermStats& stats,
                   const std::vector<std::size_t>& ranking) {
  // rank of every document, 1-based in the full bm25 ordering
  // (callers looping over experts should hoist this; kept local for the
  // single-expert entry point)
  std::vector<std::size_t> rank(corpus.documents.size());
  for (std::size_t i = 0; i < ranking.size(); ++i) rank[ranking[i]] = i + 1;

  double score = 0.0;
  for (std::size_t d : corpus.expert_docs[expert_pos]) {
    bool has_term = false;
    for (const auto& term : t.terms) {
      if (stats.tf(stats.term_id(term), d) > 0) {
        has_term = true;
        break;
      }
    }
    if (has_term) score += 1.0 / static_cast<double>(rank[d]);
  }
  return score;
}

}  // namespace expertrank
