#include "expertrank/ecg.hpp"

namespace expertrank {

Ecg build_ecg(const Corpus& corpus, const WeightMatrix& dx) {
  if (dx.kind != MatrixKind::DX)
    throw IntegrityError("build_ecg expects a DX matrix");
  if (dx.row_labels.size() != corpus.documents.size() ||
      dx.col_labels.size() != corpus.experts.size())
    throw IntegrityError("DX shape does not match the corpus");
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    if (dx.row_labels[d] != corpus.documents[d].id)
      throw IntegrityError("DX row order does not match the corpus: " +
                           dx.row_labels[d]);
  for (std::size_t x = 0; x < corpus.experts.size(); ++x)
    if (dx.col_labels[x] != corpus.experts[x])
      throw IntegrityError("DX column order does not match the corpus: " +
                           dx.col_labels[x]);

  Ecg ecg;
  for (const auto& doc : corpus.documents) ecg.documents.push_back(doc.id);
  ecg.experts = corpus.experts;
  ecg.adjacency = dx.values;

  for (Eigen::Index d = 0; d < ecg.adjacency.outerSize(); ++d) {
    Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(ecg.adjacency, d);
    if (!it)
      throw IntegrityError("document " + ecg.documents[d] + " has no author edges");
  }

  ecg.doc_weight_sum =
      ecg.adjacency * Eigen::VectorXd::Ones(ecg.adjacency.cols());
  ecg.expert_weight_sum =
      ecg.adjacency.transpose() * Eigen::VectorXd::Ones(ecg.adjacency.rows());
  return ecg;
}

}  // namespace expertrank
