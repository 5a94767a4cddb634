#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/ecg.hpp"
#include "expertrank/matrices.hpp"
#include "expertrank/metrics.hpp"
#include "expertrank/propagate.hpp"

namespace expertrank {

// A dataset prepared for grid search: matrices and graph are built once, only
// (lambda_x, lambda_d) vary across cells.
struct SweepDataset {
  std::string name;
  GroundTruth truth;
  // truth topic -> row label in tx/td; topics with no resolved phrase are
  // absent and contribute empty rankings.
  std::map<TopicId, std::string> topic_rows;
  WeightMatrix tx;
  WeightMatrix td;
  Ecg ecg;
};

struct SweepConfig {
  std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  PropagationVariant variant = PropagationVariant::MuCoHits;
  int iterations = 5;
  NormPolicy norm = NormPolicy::L2;
  EvalConfig eval;
  std::size_t limit = 0;  // ranking depth; 0 = all experts
  int jobs = 1;
};

struct SweepResult {
  std::vector<double> grid;
  // (lambda_x, lambda_d) -> dataset name -> MAP
  std::map<std::pair<double, double>, std::map<std::string, double>> map_grid;
  std::map<double, double> avg_rank_x;  // lambda_x -> mean rank of Avg(a)
  std::map<double, double> avg_rank_d;  // lambda_d -> mean rank at fixed best_x
  std::pair<double, double> best{1.0, 1.0};
};

// Rank aggregation alone, testable on injected grids. values[i] is one
// dataset's score per grid point; higher scores get higher ranks, ties share
// the mean of their positions. Returns per-point mean rank across datasets.
std::vector<double> mean_fractional_ranks(const std::vector<std::vector<double>>& values);

// Fills avg_rank_x / avg_rank_d / best from an already-populated map_grid.
void aggregate_sweep(SweepResult& result);

SweepResult sweep_lambdas(const std::vector<SweepDataset>& datasets,
                          const SweepConfig& cfg);

// lambda_x,lambda_d,dataset,map rows, then a mean-rank summary block.
void write_sweep_csv(const SweepResult& result, const std::string& path);

}  // namespace expertrank
