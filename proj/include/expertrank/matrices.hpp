#pragma once

#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/phrases.hpp"
#include "expertrank/scorers.hpp"
#include "expertrank/term_stats.hpp"

namespace expertrank {

enum class MatrixKind { TX, TD, DX };
enum class ScorerKind { Ntfidf, Tfidf, Dlm, Wiser };

std::string matrix_kind_name(MatrixKind k);
std::string scorer_kind_name(ScorerKind k);
ScorerKind scorer_kind_from_name(const std::string& name);

// Labeled sparse matrix. TX: topics x experts. TD: topics x documents.
// DX: documents x experts.
struct WeightMatrix {
  MatrixKind kind = MatrixKind::TX;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Eigen::SparseMatrix<double, Eigen::RowMajor> values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// rows: topic positions to fill (empty = all). Rows whose nidf is undefined
// stay zero. Wiser builds expert-level evidence directly; the others
// aggregate score(t,d) * p(d) * p(x|d) over each expert's documents.
WeightMatrix build_tx(const Corpus& corpus, const TopicSet& topics,
                      const TermStats& stats, ScorerKind scorer,
                      const ModelConfig& cfg = {},
                      const std::vector<std::size_t>& rows = {}, int jobs = 1);

WeightMatrix build_td(const Corpus& corpus, const TopicSet& topics,
                      const TermStats& stats, ScorerKind scorer,
                      const ModelConfig& cfg = {},
                      const std::vector<std::size_t>& rows = {}, int jobs = 1);

WeightMatrix build_dx(const Corpus& corpus, const ModelConfig& cfg = {});

// row_label,col_label,weight triplets with a header naming the kind; weights
// carry 12 significant digits. hexfloat switches to %a for lossless caching.
void write_matrix_csv(const WeightMatrix& m, const std::string& path,
                      bool hexfloat = false);
WeightMatrix read_matrix_csv(const std::string& path);

}  // namespace expertrank
