#include "expertrank/matrices.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "expertrank/io.hpp"
#include "expertrank/parallel.hpp"

namespace expertrank {

std::string matrix_kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::TX: return "TX";
    case MatrixKind::TD: return "TD";
    case MatrixKind::DX: return "DX";
  }
  return "TX";
}

std::string scorer_kind_name(ScorerKind k) {
  switch (k) {
    case ScorerKind::Ntfidf: return "ntfidf";
    case ScorerKind::Tfidf: return "tfidf";
    case ScorerKind::Dlm: return "dlm";
    case ScorerKind::Wiser: return "wiser";
  }
  return "ntfidf";
}

ScorerKind scorer_kind_from_name(const std::string& name) {
  if (name == "ntfidf") return ScorerKind::Ntfidf;
  if (name == "tfidf") return ScorerKind::Tfidf;
  if (name == "dlm") return ScorerKind::Dlm;
  if (name == "wiser") return ScorerKind::Wiser;
  throw UnknownModelError("unknown scorer: " + name);
}

namespace {

// score(t, d) over the documents that can contribute, sorted by position.
// ntfidf rows with undefined idf come back empty instead of throwing: the
// matrix contract is "row stays zero".
std::vector<std::pair<std::size_t, double>> row_scores(
    const Corpus& corpus, const TopicSet& topics, const TermStats& stats,
    std::size_t topic, ScorerKind scorer, const ModelConfig& cfg) {
  const Phrase& phrase = topics.phrases[topic];
  std::vector<std::pair<std::size_t, double>> out;
  switch (scorer) {
    case ScorerKind::Ntfidf: {
      double idf;
      try {
        idf = nidf(phrase, stats, cfg);
      } catch (const UndefinedIdfError&) {
        return out;
      }
      for (std::size_t d : candidate_docs(phrase, stats)) {
        double s = ntf(phrase, d, stats) * idf;
        if (s != 0.0) out.emplace_back(d, s);
      }
      return out;
    }
    case ScorerKind::Tfidf: {
      for (std::size_t d : candidate_docs(phrase, stats)) {
        double s = tfidf(phrase, d, stats);
        if (s != 0.0) out.emplace_back(d, s);
      }
      return out;
    }
    case ScorerKind::Dlm: {
      // smoothing makes every document score nonzero (unless a term is
      // missing from the whole collection), so the row is dense
      for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        double s = dlm_score(phrase, d, stats, cfg);
        if (s != 0.0) out.emplace_back(d, s);
      }
      return out;
    }
    case ScorerKind::Wiser: {
      auto ranking = bm25_ranking(phrase, corpus, stats, cfg);
      std::vector<std::size_t> rank(corpus.documents.size());
      for (std::size_t i = 0; i < ranking.size(); ++i) rank[ranking[i]] = i + 1;
      for (std::size_t d : candidate_docs(phrase, stats))
        out.emplace_back(d, 1.0 / static_cast<double>(rank[d]));
      return out;
    }
  }
  return out;
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

}  // namespace

WeightMatrix build_td(const Corpus& corpus, const TopicSet& topics,
                      const TermStats& stats, ScorerKind scorer,
                      const ModelConfig& cfg, const std::vector<std::size_t>& rows,
                      int jobs) {
  WeightMatrix m;
  m.kind = MatrixKind::TD;
  m.row_labels = topics.ids;
  for (const auto& doc : corpus.documents) m.col_labels.push_back(doc.id);

  std::vector<std::size_t> wanted = rows.empty() ? all_rows(topics.size()) : rows;
  std::vector<std::vector<std::pair<std::size_t, double>>> row_data(wanted.size());
  parallel_for(wanted.size(), jobs, [&](std::size_t i) {
    row_data[i] = row_scores(corpus, topics, stats, wanted[i], scorer, cfg);
  });

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < wanted.size(); ++i)
    for (const auto& [d, s] : row_data[i]) {
      double w = s * cfg.p_d(d);
      if (w != 0.0)
        triplets.emplace_back(static_cast<int>(wanted[i]), static_cast<int>(d), w);
    }
  m.values.resize(static_cast<Eigen::Index>(topics.size()),
                  static_cast<Eigen::Index>(corpus.documents.size()));
  m.values.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

WeightMatrix build_tx(const Corpus& corpus, const TopicSet& topics,
                      const TermStats& stats, ScorerKind scorer,
                      const ModelConfig& cfg, const std::vector<std::size_t>& rows,
                      int jobs) {
  WeightMatrix m;
  m.kind = MatrixKind::TX;
  m.row_labels = topics.ids;
  m.col_labels = corpus.experts;

  std::vector<std::size_t> wanted = rows.empty() ? all_rows(topics.size()) : rows;
  std::vector<std::vector<std::pair<std::size_t, double>>> row_data(wanted.size());
  parallel_for(wanted.size(), jobs, [&](std::size_t i) {
    auto scores = row_scores(corpus, topics, stats, wanted[i], scorer, cfg);
    std::vector<double> by_expert(corpus.experts.size(), 0.0);
    for (const auto& [d, s] : scores) {
      const auto& doc = corpus.documents[d];
      double base = s * cfg.p_d(d);
      for (std::size_t a = 0; a < doc.authors.size(); ++a) {
        std::size_t x = corpus.expert_pos(doc.authors[a]);
        by_expert[x] += base * cfg.p_x_given_d(doc, a);
      }
    }
    auto& row = row_data[i];
    for (std::size_t x = 0; x < by_expert.size(); ++x)
      if (by_expert[x] != 0.0) row.emplace_back(x, by_expert[x]);
  });

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < wanted.size(); ++i)
    for (const auto& [x, w] : row_data[i])
      triplets.emplace_back(static_cast<int>(wanted[i]), static_cast<int>(x), w);
  m.values.resize(static_cast<Eigen::Index>(topics.size()),
                  static_cast<Eigen::Index>(corpus.experts.size()));
  m.values.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

WeightMatrix build_dx(const Corpus& corpus, const ModelConfig& cfg) {
  WeightMatrix m;
  m.kind = MatrixKind::DX;
  for (const auto& doc : corpus.documents) m.row_labels.push_back(doc.id);
  m.col_labels = corpus.experts;

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    for (std::size_t a = 0; a < doc.authors.size(); ++a) {
      std::size_t x = corpus.expert_pos(doc.authors[a]);
      triplets.emplace_back(static_cast<int>(d), static_cast<int>(x),
                            cfg.p_x_given_d(doc, a));
    }
  }
  m.values.resize(static_cast<Eigen::Index>(corpus.documents.size()),
                  static_cast<Eigen::Index>(corpus.experts.size()));
  m.values.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

namespace {

const char* header_for(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::TX: return "topic_id,expert_id,weight";
    case MatrixKind::TD: return "topic_id,doc_id,weight";
    case MatrixKind::DX: return "doc_id,expert_id,weight";
  }
  return "topic_id,expert_id,weight";
}

}  // namespace

void write_matrix_csv(const WeightMatrix& m, const std::string& path, bool hexfloat) {
  std::string out = header_for(m.kind);
  out.push_back('\n');
  for (Eigen::Index r = 0; r < m.values.outerSize(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m.values, r);
         it; ++it) {
      out += csv_field(m.row_labels[r]);
      out.push_back(',');
      out += csv_field(m.col_labels[it.col()]);
      out.push_back(',');
      out += hexfloat ? format_hexfloat(it.value()) : format_weight(it.value());
      out.push_back('\n');
    }
  }
  write_file(path, out);
}

WeightMatrix read_matrix_csv(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty()) throw ParseError("empty matrix file: " + path);

  WeightMatrix m;
  if (lines[0] == "topic_id,expert_id,weight") m.kind = MatrixKind::TX;
  else if (lines[0] == "topic_id,doc_id,weight") m.kind = MatrixKind::TD;
  else if (lines[0] == "doc_id,expert_id,weight") m.kind = MatrixKind::DX;
  else throw ParseError("unrecognized matrix header: " + lines[0]);

  std::unordered_map<std::string, int> row_index, col_index;
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_csv_row(lines[i]);
    if (fields.size() != 3)
      throw ParseError("line " + std::to_string(i + 1) + ": expected 3 fields");
    auto [rit, rnew] =
        row_index.emplace(fields[0], static_cast<int>(m.row_labels.size()));
    if (rnew) m.row_labels.push_back(fields[0]);
    auto [cit, cnew] =
        col_index.emplace(fields[1], static_cast<int>(m.col_labels.size()));
    if (cnew) m.col_labels.push_back(fields[1]);
    char* end = nullptr;
    double w = std::strtod(fields[2].c_str(), &end);
    if (end == fields[2].c_str())
      throw ParseError("line " + std::to_string(i + 1) + ": bad weight " + fields[2]);
    triplets.emplace_back(rit->second, cit->second, w);
  }
  m.values.resize(static_cast<Eigen::Index>(m.row_labels.size()),
                  static_cast<Eigen::Index>(m.col_labels.size()));
  m.values.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace expertrank
