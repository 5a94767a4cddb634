#include "expertrank/propagate.hpp"

#include <algorithm>

namespace expertrank {

void normalize_scores(Eigen::VectorXd& v, NormPolicy norm) {
  if (norm == NormPolicy::L2) {
    double n = v.norm();
    if (n > 0) v /= n;
  } else {
    // scale so sqrt(sum of entries) is 1, the literal reading
    double s = v.sum();
    if (s > 0) v /= s;
  }
}

namespace {

// Σ over incident edges divided by the incident weight sum; 0 where the sum
// is 0 by definition of the averaged update.
Eigen::VectorXd weighted_average(const Eigen::VectorXd& sums,
                                 const Eigen::VectorXd& weights) {
  Eigen::VectorXd out(sums.size());
  for (Eigen::Index i = 0; i < sums.size(); ++i)
    out[i] = weights[i] > 0 ? sums[i] / weights[i] : 0.0;
  return out;
}

}  // namespace

ScoreState propagate_state(const Ecg& ecg, Eigen::VectorXd a0, Eigen::VectorXd h0,
                           const Eigen::VectorXd& alpha_x,
                           const Eigen::VectorXd& alpha_d,
                           const PropagationConfig& cfg,
                           const IterationObserver& observer) {
  if (a0.size() != static_cast<Eigen::Index>(ecg.experts.size()) ||
      h0.size() != static_cast<Eigen::Index>(ecg.documents.size()))
    throw IntegrityError("propagation seed sizes do not match the graph");

  const bool averaged = cfg.variant == PropagationVariant::MuCoHits;
  ScoreState st;
  st.authority = std::move(a0);
  st.hub = std::move(h0);
  normalize_scores(st.authority, cfg.norm);
  normalize_scores(st.hub, cfg.norm);

  Eigen::VectorXd ax = alpha_x;
  Eigen::VectorXd ad = alpha_d;
  normalize_scores(ax, cfg.norm);
  normalize_scores(ad, cfg.norm);

  for (int k = 1; k <= cfg.iterations; ++k) {
    // all authorities first, from the previous hubs
    Eigen::VectorXd in = ecg.adjacency.transpose() * st.hub;
    if (averaged) in = weighted_average(in, ecg.expert_weight_sum);
    st.authority = (1.0 - cfg.lambda_x) * (averaged ? st.authority : ax) +
                   cfg.lambda_x * in;
    normalize_scores(st.authority, cfg.norm);

    // then all hubs, from the freshly normalized authorities
    Eigen::VectorXd hin = ecg.adjacency * st.authority;
    if (averaged) hin = weighted_average(hin, ecg.doc_weight_sum);
    st.hub = (1.0 - cfg.lambda_d) * (averaged ? st.hub : ad) + cfg.lambda_d * hin;
    normalize_scores(st.hub, cfg.norm);

    st.iteration = k;
    if (observer) observer(st);
  }
  return st;
}

namespace {

Eigen::VectorXd dense_row(const WeightMatrix& m, std::size_t row) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m.values.cols());
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
           m.values, static_cast<Eigen::Index>(row));
       it; ++it)
    v[it.col()] = it.value();
  return v;
}

std::size_t row_of(const WeightMatrix& m, const TopicId& topic) {
  for (std::size_t i = 0; i < m.row_labels.size(); ++i)
    if (m.row_labels[i] == topic) return i;
  throw UnknownTopicError("topic " + topic + " not present in matrix rows");
}

}  // namespace

ScoreState propagate(const Ecg& ecg, const TopicId& topic, const WeightMatrix& tx,
                     const WeightMatrix& td, const PropagationConfig& cfg,
                     const IterationObserver& observer) {
  Eigen::VectorXd a0 = dense_row(tx, row_of(tx, topic));
  Eigen::VectorXd h0 = dense_row(td, row_of(td, topic));
  return propagate_state(ecg, a0, h0, a0, h0, cfg, observer);
}

std::vector<std::pair<ExpertId, double>> rank_experts(
    const ScoreState& state, const std::vector<ExpertId>& experts,
    std::size_t limit) {
  if (state.authority.size() != static_cast<Eigen::Index>(experts.size()))
    throw IntegrityError("authority size does not match the expert list");
  std::vector<std::pair<ExpertId, double>> out;
  out.reserve(experts.size());
  for (std::size_t x = 0; x < experts.size(); ++x)
    out.emplace_back(experts[x], state.authority[static_cast<Eigen::Index>(x)]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (limit > 0 && out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace expertrank
