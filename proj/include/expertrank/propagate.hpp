#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "expertrank/ecg.hpp"
#include "expertrank/matrices.hpp"

namespace expertrank {

enum class PropagationVariant { CoHits, MuCoHits };
enum class NormPolicy { L2, SumSqrt };  // SumSqrt: scale so sqrt(sum) == 1

struct PropagationConfig {
  PropagationVariant variant = PropagationVariant::MuCoHits;
  double lambda_x = 1.0;
  double lambda_d = 0.7;
  int iterations = 5;
  NormPolicy norm = NormPolicy::L2;
};

struct ScoreState {
  Eigen::VectorXd authority;  // experts
  Eigen::VectorXd hub;        // documents
  int iteration = 0;
};

using IterationObserver = std::function<void(const ScoreState&)>;

// Normalizes in place per `norm`; zero vectors are left alone.
void normalize_scores(Eigen::VectorXd& v, NormPolicy norm = NormPolicy::L2);

// One full run of the update schedule: per iteration, every authority first
// (from the previous hubs), normalize, then every hub (from the fresh
// authorities), normalize. alpha_x/alpha_d are the fixed personalization
// vectors of the base variant; the averaged variant re-personalizes from the
// previous iteration's scores and ignores them. a0/h0 seed the state.
// The observer fires after each completed iteration.
ScoreState propagate_state(const Ecg& ecg, Eigen::VectorXd a0, Eigen::VectorXd h0,
                           const Eigen::VectorXd& alpha_x,
                           const Eigen::VectorXd& alpha_d,
                           const PropagationConfig& cfg,
                           const IterationObserver& observer = nullptr);

// Spec-level entry: seeds and personalizations are the topic's TX and TD rows,
// normalized. Throws UnknownTopicError when the id is missing from tx/td rows.
ScoreState propagate(const Ecg& ecg, const TopicId& topic, const WeightMatrix& tx,
                     const WeightMatrix& td, const PropagationConfig& cfg,
                     const IterationObserver& observer = nullptr);

// Authority scores sorted descending, ties by ExpertId; limit 0 = everyone.
std::vector<std::pair<ExpertId, double>> rank_experts(
    const ScoreState& state, const std::vector<ExpertId>& experts,
    std::size_t limit = 0);

}  // namespace expertrank
