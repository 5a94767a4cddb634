#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/term_stats.hpp"

namespace expertrank {

// Hooks and knobs shared by the matrix builders and scorers. The default
// priors are uniform: p(d) = 1 and p(x|d) = 1.
struct ModelConfig {
  std::function<double(std::size_t doc_pos)> doc_prior;
  std::function<double(const Document& doc, std::size_t author_pos)> author_weight;

  double dlm_lambda = 0.5;
  double bm25_k1 = 1.2;
  double bm25_b = 0.75;

  bool clamp_nidf = true;           // floor nidf at 0
  bool collection_lm_by_docs = false;  // p(w|D) divided by |D| instead of collection length

  double p_d(std::size_t doc_pos) const {
    return doc_prior ? doc_prior(doc_pos) : 1.0;
  }
  double p_x_given_d(const Document& doc, std::size_t author_pos) const {
    return author_weight ? author_weight(doc, author_pos) : 1.0;
  }
};

// ntf(t,d): per-term length-normalized counts averaged over the phrase.
double ntf(const Phrase& t, std::size_t doc, const TermStats& stats);

// nidf(t) = ln(|D| * df(t) / joint_df(t)^2), floored at 0 unless disabled.
// Undefined (throws) when the phrase or the co-occurrence was never seen.
double nidf(const Phrase& t, const TermStats& stats, const ModelConfig& cfg = {});

double ntfidf(const Phrase& t, std::size_t doc, const TermStats& stats,
              const ModelConfig& cfg = {});

// Sum over constituent terms of (tf/|d|) * ln(|D|/df); unseen terms add 0.
double tfidf(const Phrase& t, std::size_t doc, const TermStats& stats);

// Query-likelihood with Jelinek-Mercer smoothing, product over terms.
double dlm_score(const Phrase& t, std::size_t doc, const TermStats& stats,
                 const ModelConfig& cfg = {});

double bm25_score(const Phrase& t, std::size_t doc, const TermStats& stats,
                  const ModelConfig& cfg = {});

// Every document ordered by descending bm25_score, ties by DocId.
std::vector<std::size_t> bm25_ranking(const Phrase& t, const Corpus& corpus,
                                      const TermStats& stats,
                                      const ModelConfig& cfg = {});

// Reciprocal-rank evidence over the expert's documents that contain any
// constituent term. ranking must come from bm25_ranking on the same phrase.
double wiser_score(std::size_t expert_pos, const Phrase& t, const Corpus& corpus,
                   const TermStats& stats,
                   const std::vector<std::size_t>& ranking);

}  // namespace expertrank
