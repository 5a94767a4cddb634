#include "expertrank/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "expertrank/io.hpp"
#include "expertrank/parallel.hpp"

namespace expertrank {

std::vector<double> mean_fractional_ranks(
    const std::vector<std::vector<double>>& values) {
  if (values.empty()) return {};
  const std::size_t n = values[0].size();
  std::vector<double> mean(n, 0.0);
  for (const auto& row : values) {
    if (row.size() != n) throw Error("ragged rank input");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    // ascending positions; tied values share the mean of their positions
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && row[order[j + 1]] == row[order[i]]) ++j;
      double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
      for (std::size_t k = i; k <= j; ++k) rank[order[k]] = shared;
      i = j + 1;
    }
    for (std::size_t k = 0; k < n; ++k) mean[k] += rank[k];
  }
  for (auto& m : mean) m /= static_cast<double>(values.size());
  return mean;
}

void aggregate_sweep(SweepResult& result) {
  const auto& grid = result.grid;
  std::vector<std::string> datasets;
  for (const auto& [cell, per_dataset] : result.map_grid) {
    for (const auto& [name, value] : per_dataset)
      if (std::find(datasets.begin(), datasets.end(), name) == datasets.end())
        datasets.push_back(name);
    (void)cell;
  }
  if (datasets.empty() || grid.empty()) return;

  auto map_of = [&](double a, double b, const std::string& ds) {
    return result.map_grid.at({a, b}).at(ds);
  };

  // phase 1: Avg(a) = mean over b, ranked per dataset, ranks averaged
  std::vector<std::vector<double>> avg_a(datasets.size(),
                                         std::vector<double>(grid.size()));
  for (std::size_t ds = 0; ds < datasets.size(); ++ds)
    for (std::size_t ai = 0; ai < grid.size(); ++ai) {
      double total = 0.0;
      for (double b : grid) total += map_of(grid[ai], b, datasets[ds]);
      avg_a[ds][ai] = total / static_cast<double>(grid.size());
    }
  auto rank_a = mean_fractional_ranks(avg_a);
  std::size_t best_a = 0;
  for (std::size_t ai = 0; ai < grid.size(); ++ai) {
    result.avg_rank_x[grid[ai]] = rank_a[ai];
    if (rank_a[ai] >= rank_a[best_a]) best_a = ai;  // ties take the larger lambda
  }

  // phase 2: fix the winner, rank MAP(a*, b) directly
  std::vector<std::vector<double>> avg_b(datasets.size(),
                                         std::vector<double>(grid.size()));
  for (std::size_t ds = 0; ds < datasets.size(); ++ds)
    for (std::size_t bi = 0; bi < grid.size(); ++bi)
      avg_b[ds][bi] = map_of(grid[best_a], grid[bi], datasets[ds]);
  auto rank_b = mean_fractional_ranks(avg_b);
  std::size_t best_b = 0;
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    result.avg_rank_d[grid[bi]] = rank_b[bi];
    if (rank_b[bi] >= rank_b[best_b]) best_b = bi;
  }

  result.best = {grid[best_a], grid[best_b]};
}

SweepResult sweep_lambdas(const std::vector<SweepDataset>& datasets,
                          const SweepConfig& cfg) {
  SweepResult result;
  result.grid = cfg.grid;

  struct Cell {
    double a, b;
  };
  std::vector<Cell> cells;
  for (double a : cfg.grid)
    for (double b : cfg.grid) cells.push_back({a, b});

  for (const auto& ds : datasets) {
    // seed vectors per truth topic are lambda-independent: hoist them
    std::unordered_map<std::string, std::size_t> tx_rows, td_rows;
    for (std::size_t i = 0; i < ds.tx.row_labels.size(); ++i)
      tx_rows[ds.tx.row_labels[i]] = i;
    for (std::size_t i = 0; i < ds.td.row_labels.size(); ++i)
      td_rows[ds.td.row_labels[i]] = i;

    struct Seed {
      TopicId topic;
      Eigen::VectorXd a0, h0;
    };
    std::vector<Seed> seeds;
    for (const auto& topic : ds.truth.topic_ids) {
      auto row = ds.topic_rows.find(topic);
      if (row == ds.topic_rows.end()) continue;
      auto tx_it = tx_rows.find(row->second);
      auto td_it = td_rows.find(row->second);
      if (tx_it == tx_rows.end() || td_it == td_rows.end())
        throw UnknownTopicError("topic row " + row->second +
                                " missing from sweep matrices");
      Seed s;
      s.topic = topic;
      s.a0 = Eigen::VectorXd::Zero(ds.tx.values.cols());
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
               ds.tx.values, static_cast<Eigen::Index>(tx_it->second));
           it; ++it)
        s.a0[it.col()] = it.value();
      s.h0 = Eigen::VectorXd::Zero(ds.td.values.cols());
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
               ds.td.values, static_cast<Eigen::Index>(td_it->second));
           it; ++it)
        s.h0[it.col()] = it.value();
      seeds.push_back(std::move(s));
    }

    std::vector<double> cell_map(cells.size(), 0.0);
    parallel_for(cells.size(), cfg.jobs, [&](std::size_t c) {
      PropagationConfig pc;
      pc.variant = cfg.variant;
      pc.lambda_x = cells[c].a;
      pc.lambda_d = cells[c].b;
      pc.iterations = cfg.iterations;
      pc.norm = cfg.norm;
      std::map<TopicId, std::vector<ExpertId>> rankings;
      for (const auto& seed : seeds) {
        ScoreState st =
            propagate_state(ds.ecg, seed.a0, seed.h0, seed.a0, seed.h0, pc);
        auto ranked = rank_experts(st, ds.ecg.experts, cfg.limit);
        auto& list = rankings[seed.topic];
        list.reserve(ranked.size());
        for (auto& [id, score] : ranked) list.push_back(id);
      }
      cell_map[c] = evaluate(rankings, ds.truth, cfg.eval).map;
    });

    for (std::size_t c = 0; c < cells.size(); ++c)
      result.map_grid[{cells[c].a, cells[c].b}][ds.name] = cell_map[c];
  }

  aggregate_sweep(result);
  return result;
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ostringstream out;
  out << "lambda_x,lambda_d,dataset,map\n";
  for (const auto& [cell, per_dataset] : result.map_grid)
    for (const auto& [name, value] : per_dataset)
      out << format_weight(cell.first) << ',' << format_weight(cell.second) << ','
          << csv_field(name) << ',' << format_weight(value) << "\n";
  out << "# mean ranks over lambda_x (phase 1)\n";
  for (const auto& [lambda, rank] : result.avg_rank_x)
    out << "# lambda_x," << format_weight(lambda) << ',' << format_weight(rank)
        << "\n";
  out << "# mean ranks over lambda_d at lambda_x=" << format_weight(result.best.first)
      << " (phase 2)\n";
  for (const auto& [lambda, rank] : result.avg_rank_d)
    out << "# lambda_d," << format_weight(lambda) << ',' << format_weight(rank)
        << "\n";
  out << "# best," << format_weight(result.best.first) << ','
      << format_weight(result.best.second) << "\n";
  write_file(path, out.str());
}

}  // namespace expertrank
