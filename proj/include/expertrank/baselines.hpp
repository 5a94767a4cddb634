#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/ecg.hpp"
#include "expertrank/matrices.hpp"
#include "expertrank/propagate.hpp"
#include "expertrank/term_stats.hpp"

namespace expertrank {

struct AdtOptions {
  int max_path_len = 1;  // edges per doc->topic path in the association graph
};

// Author-document-topic association: sum over the expert's documents of the
// authorship weight times the path weight to the topic. Path weight with
// max_path_len 1 is the TD entry itself; longer budgets sum weight products
// over simple alternating document-topic paths.
double adt_score(std::size_t expert_pos, std::size_t topic_pos,
                 const Corpus& corpus, const WeightMatrix& td,
                 const WeightMatrix& dx, const AdtOptions& opts = {});

// All experts at once; shares the path enumeration across experts.
Eigen::VectorXd adt_scores(std::size_t topic_pos, const Corpus& corpus,
                           const WeightMatrix& td, const WeightMatrix& dx,
                           const AdtOptions& opts = {});

struct RepModelOptions {
  double lambda = 0.85;
  int iterations = 5;
  NormPolicy norm = NormPolicy::L2;
};

// Per constituent term: seed hubs with tf(w,d)/|d|, authorities with the
// min-max scaled count of the expert's documents containing w, run the fixed-
// personalization propagation, then average the per-term authority vectors.
Eigen::VectorXd repmodel_scores(const Phrase& topic, const Corpus& corpus,
                                const TermStats& stats, const Ecg& ecg,
                                const RepModelOptions& opts = {});

}  // namespace expertrank
