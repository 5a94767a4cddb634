#include "expertrank/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace expertrank {

namespace {

// Sum over simple alternating doc-topic paths from `doc` to `target_topic`
// with at most `budget` edges, of the product of TD weights along the path.
// td_rows / td_cols are the adjacency of the association graph.
double path_weight(std::size_t doc, std::size_t target_topic, int budget,
                   const Eigen::SparseMatrix<double, Eigen::RowMajor>& topic_docs,
                   const Eigen::SparseMatrix<double, Eigen::RowMajor>& doc_topics,
                   std::vector<char>& seen_docs, std::vector<char>& seen_topics) {
  if (budget < 1) return 0.0;
  double total = 0.0;
  seen_docs[doc] = 1;
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
           doc_topics, static_cast<Eigen::Index>(doc));
       it; ++it) {
    std::size_t topic = static_cast<std::size_t>(it.col());
    if (seen_topics[topic]) continue;
    if (topic == target_topic) {
      total += it.value();
      continue;
    }
    if (budget < 3) continue;
    seen_topics[topic] = 1;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator dit(
             topic_docs, static_cast<Eigen::Index>(topic));
         dit; ++dit) {
      std::size_t next_doc = static_cast<std::size_t>(dit.col());
      if (seen_docs[next_doc]) continue;
      double tail = path_weight(next_doc, target_topic, budget - 2, topic_docs,
                                doc_topics, seen_docs, seen_topics);
      total += it.value() * dit.value() * tail;
    }
    seen_topics[topic] = 0;
  }
  seen_docs[doc] = 0;
  return total;
}

}  // namespace

Eigen::VectorXd adt_scores(std::size_t topic_pos, const Corpus& corpus,
                           const WeightMatrix& td, const WeightMatrix& dx,
                           const AdtOptions& opts) {
  const std::size_t n_docs = corpus.documents.size();
  Eigen::VectorXd pweight = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_docs));

  if (opts.max_path_len <= 1) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             td.values, static_cast<Eigen::Index>(topic_pos));
         it; ++it)
      pweight[it.col()] = it.value();
  } else {
    Eigen::SparseMatrix<double, Eigen::RowMajor> doc_topics = td.values.transpose();
    std::vector<char> seen_docs(n_docs, 0);
    std::vector<char> seen_topics(static_cast<std::size_t>(td.values.rows()), 0);
    for (std::size_t d = 0; d < n_docs; ++d)
      pweight[static_cast<Eigen::Index>(d)] =
          path_weight(d, topic_pos, opts.max_path_len, td.values, doc_topics,
                      seen_docs, seen_topics);
  }

  // s(x, t) = sum over the expert's documents of w_xd * pweight(d, t)
  return dx.values.transpose() * pweight;
}

double adt_score(std::size_t expert_pos, std::size_t topic_pos,
                 const Corpus& corpus, const WeightMatrix& td,
                 const WeightMatrix& dx, const AdtOptions& opts) {
  return adt_scores(topic_pos, corpus, td, dx, opts)[
      static_cast<Eigen::Index>(expert_pos)];
}

Eigen::VectorXd repmodel_scores(const Phrase& topic, const Corpus& corpus,
                                const TermStats& stats, const Ecg& ecg,
                                const RepModelOptions& opts) {
  const auto n_experts = static_cast<Eigen::Index>(corpus.experts.size());
  const auto n_docs = static_cast<Eigen::Index>(corpus.documents.size());

  PropagationConfig cfg;
  cfg.variant = PropagationVariant::CoHits;
  cfg.lambda_x = opts.lambda;
  cfg.lambda_d = opts.lambda;
  cfg.iterations = opts.iterations;
  cfg.norm = opts.norm;

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n_experts);
  for (const auto& term : topic.terms) {
    int id = stats.term_id(term);

    Eigen::VectorXd alpha_d = Eigen::VectorXd::Zero(n_docs);
    for (Eigen::Index d = 0; d < n_docs; ++d)
      if (stats.doc_len[d] > 0)
        alpha_d[d] = static_cast<double>(stats.tf(id, d)) / stats.doc_len[d];

    // per-expert support: how many of their documents mention the term,
    // min-max scaled across experts
    Eigen::VectorXd support = Eigen::VectorXd::Zero(n_experts);
    for (Eigen::Index x = 0; x < n_experts; ++x) {
      int count = 0;
      for (std::size_t d : corpus.expert_docs[static_cast<std::size_t>(x)])
        if (stats.tf(id, d) > 0) ++count;
      support[x] = count;
    }
    double lo = support.minCoeff(), hi = support.maxCoeff();
    Eigen::VectorXd alpha_x(n_experts);
    for (Eigen::Index x = 0; x < n_experts; ++x) {
      if (hi > lo)
        alpha_x[x] = 1.0 - (hi - support[x]) / (hi - lo);
      else
        alpha_x[x] = support[x] > 0 ? 1.0 : 0.0;
    }

    ScoreState st = propagate_state(ecg, alpha_x, alpha_d, alpha_x, alpha_d, cfg);
    sum += st.authority;
  }
  return sum / static_cast<double>(topic.terms.size());
}

}  // namespace expertrank
