#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "expertrank/io.hpp"
#include "expertrank/matrices.hpp"
#include "expertrank/sweep.hpp"
#include "helpers.hpp"

using namespace expertrank;

TEST_CASE("fractional ranks share tied positions") {
  auto ranks = mean_fractional_ranks({{0.1, 0.4, 0.4, 0.9}});
  REQUIRE(ranks.size() == 4);
  CHECK(ranks[0] == doctest::Approx(1.0));
  CHECK(ranks[1] == doctest::Approx(2.5));
  CHECK(ranks[2] == doctest::Approx(2.5));
  CHECK(ranks[3] == doctest::Approx(4.0));
}

TEST_CASE("fractional ranks average across datasets") {
  // dataset one prefers the last point, dataset two the first
  auto ranks = mean_fractional_ranks({{0.1, 0.2, 0.3}, {0.3, 0.2, 0.1}});
  CHECK(ranks[0] == doctest::Approx(2.0));
  CHECK(ranks[1] == doctest::Approx(2.0));
  CHECK(ranks[2] == doctest::Approx(2.0));

  auto skewed = mean_fractional_ranks({{0.1, 0.9}, {0.2, 0.3}});
  CHECK(skewed[0] == doctest::Approx(1.0));
  CHECK(skewed[1] == doctest::Approx(2.0));
}

TEST_CASE("all-equal values rank at the midpoint") {
  auto ranks = mean_fractional_ranks({{0.5, 0.5, 0.5}});
  for (double r : ranks) CHECK(r == doctest::Approx(2.0));
}

namespace {

SweepResult make_result(const std::vector<double>& grid,
                        const std::map<std::pair<double, double>,
                                       std::map<std::string, double>>& map_grid) {
  SweepResult r;
  r.grid = grid;
  r.map_grid = map_grid;
  return r;
}

}  // namespace

TEST_CASE("aggregation picks the best authority weight then the document weight") {
  std::vector<double> grid{0.0, 0.5, 1.0};
  std::map<std::pair<double, double>, std::map<std::string, double>> cells;
  for (double a : grid)
    for (double b : grid) {
      // increases with a; at fixed a the midpoint of b wins
      double v = a + (b == 0.5 ? 0.05 : 0.0);
      cells[{a, b}] = {{"main", v}};
    }
  auto result = make_result(grid, cells);
  aggregate_sweep(result);
  CHECK(result.best.first == doctest::Approx(1.0));
  CHECK(result.best.second == doctest::Approx(0.5));
  // phase one averages over b: ranks must be strictly increasing in a
  CHECK(result.avg_rank_x.at(0.0) < result.avg_rank_x.at(0.5));
  CHECK(result.avg_rank_x.at(0.5) < result.avg_rank_x.at(1.0));
}

TEST_CASE("aggregation breaks full ties toward the larger weight") {
  std::vector<double> grid{0.0, 0.5, 1.0};
  std::map<std::pair<double, double>, std::map<std::string, double>> cells;
  for (double a : grid)
    for (double b : grid) cells[{a, b}] = {{"main", 0.25}};
  auto result = make_result(grid, cells);
  aggregate_sweep(result);
  CHECK(result.best.first == doctest::Approx(1.0));
  CHECK(result.best.second == doctest::Approx(1.0));
}

TEST_CASE("aggregation combines disagreeing datasets by mean rank") {
  std::vector<double> grid{0.0, 1.0};
  std::map<std::pair<double, double>, std::map<std::string, double>> cells;
  // dataset one strongly prefers a = 0, dataset two mildly prefers a = 1;
  // ranks are what matters, so the preferences cancel and the tie goes up
  for (double b : grid) {
    cells[{0.0, b}] = {{"one", 0.9}, {"two", 0.4}};
    cells[{1.0, b}] = {{"one", 0.1}, {"two", 0.5}};
  }
  auto result = make_result(grid, cells);
  aggregate_sweep(result);
  CHECK(result.avg_rank_x.at(0.0) == doctest::Approx(1.5));
  CHECK(result.avg_rank_x.at(1.0) == doctest::Approx(1.5));
  CHECK(result.best.first == doctest::Approx(1.0));
}

namespace {

SweepDataset toy_dataset() {
  SweepDataset ds;
  ds.name = "toy";
  auto corpus = testutil::load_fixture_corpus("toy_corpus.jsonl");
  auto topics = build_topic_set(corpus);
  auto stats = build_term_stats(corpus, topics);
  ds.truth = load_ground_truth(testutil::fixture_path("toy_truth.csv"), &corpus);
  for (const auto& topic : ds.truth.topic_ids) {
    auto pos = topics.key_to_pos.at(ds.truth.labels.at(topic));
    ds.topic_rows[topic] = topics.ids[pos];
  }
  ds.tx = build_tx(corpus, topics, stats, ScorerKind::Ntfidf);
  ds.td = build_td(corpus, topics, stats, ScorerKind::Ntfidf);
  ds.ecg = build_ecg(corpus, build_dx(corpus));
  return ds;
}

}  // namespace

TEST_CASE("grid search runs end to end on the toy dataset") {
  SweepConfig cfg;
  cfg.grid = {0.0, 0.5, 1.0};
  cfg.iterations = 2;

  std::vector<SweepDataset> datasets;
  datasets.push_back(toy_dataset());
  auto result = sweep_lambdas(datasets, cfg);

  CHECK(result.grid == cfg.grid);
  REQUIRE(result.map_grid.size() == 9);
  for (const auto& [cell, per_dataset] : result.map_grid) {
    REQUIRE(per_dataset.size() == 1);
    double v = per_dataset.at("toy");
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  bool best_on_grid_x = false, best_on_grid_d = false;
  for (double g : cfg.grid) {
    if (g == result.best.first) best_on_grid_x = true;
    if (g == result.best.second) best_on_grid_d = true;
  }
  CHECK(best_on_grid_x);
  CHECK(best_on_grid_d);

  SUBCASE("the authority seed pins rankings when lambda_x is zero") {
    // with the averaged variant, lambda_x = 0 freezes authorities at the seed,
    // so MAP cannot depend on lambda_d
    double first = result.map_grid.at({0.0, cfg.grid[0]}).at("toy");
    for (double b : cfg.grid)
      CHECK(result.map_grid.at({0.0, b}).at("toy") == doctest::Approx(first));
  }
  SUBCASE("parallel grid evaluation matches serial") {
    SweepConfig par = cfg;
    par.jobs = 4;
    auto again = sweep_lambdas(datasets, par);
    for (const auto& [cell, per_dataset] : result.map_grid)
      CHECK(again.map_grid.at(cell).at("toy") == per_dataset.at("toy"));
  }
}

TEST_CASE("sweep csv lists cells and the rank summary") {
  SweepConfig cfg;
  cfg.grid = {0.0, 1.0};
  cfg.iterations = 1;
  std::vector<SweepDataset> datasets;
  datasets.push_back(toy_dataset());
  auto result = sweep_lambdas(datasets, cfg);

  testutil::TempDir tmp;
  auto path = tmp.file("sweep.csv");
  write_sweep_csv(result, path);
  auto lines = expertrank::read_lines(path);
  REQUIRE(!lines.empty());
  CHECK(lines[0] == "lambda_x,lambda_d,dataset,map");
  int cells = 0, summaries = 0;
  bool best_line = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    if (lines[i][0] == '#') {
      ++summaries;
      if (lines[i].rfind("# best,", 0) == 0) best_line = true;
    } else {
      ++cells;
    }
  }
  CHECK(cells == 4);
  CHECK(best_line);
  CHECK(summaries >= 5);  // per-value rank lines plus headers plus best
}
