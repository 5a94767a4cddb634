#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/matrices.hpp"

namespace expertrank {

// Expert-collaboration graph: directed weighted bipartite, documents pointing
// at their authors. Node orders are the corpus orders.
struct Ecg {
  std::vector<DocId> documents;
  std::vector<ExpertId> experts;

  // adjacency = docs x experts; entry (d, x) is the edge weight.
  Eigen::SparseMatrix<double, Eigen::RowMajor> adjacency;

  // Incident-edge weight sums, used by the weighted-average propagation.
  Eigen::VectorXd doc_weight_sum;     // over each document's authors
  Eigen::VectorXd expert_weight_sum;  // over each expert's documents

  Eigen::Index edge_count() const { return adjacency.nonZeros(); }
};

// dx must be a DX matrix over exactly the corpus's documents and experts.
// Every document keeps at least one author edge (IntegrityError otherwise).
Ecg build_ecg(const Corpus& corpus, const WeightMatrix& dx);

}  // namespace expertrank
