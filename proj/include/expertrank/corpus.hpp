#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "expertrank/text.hpp"
#include "expertrank/types.hpp"

namespace expertrank {

struct Document {
  DocId id;
  std::string title;
  std::string abstract;
  std::vector<ExpertId> authors;

  // Populated by Corpus::preprocess: retained (non-stopword) lemmas, flat and
  // grouped by sentence. |d| == tokens.size(). tagged keeps the full streams
  // (stopwords included) because phrase matches must not jump over them.
  std::vector<std::string> tokens;
  std::vector<std::vector<std::string>> sentences;
  std::vector<TaggedSentence> tagged;

  std::string text() const { return title + " . " + abstract; }
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<ExpertId> experts;  // order of first appearance; defines columns

  std::unordered_map<DocId, std::size_t> doc_index;
  std::unordered_map<ExpertId, std::size_t> expert_index;
  std::vector<std::vector<std::size_t>> expert_docs;  // expert -> doc positions

  bool preprocessed = false;

  void preprocess(const Tagger& tagger);
  void rebuild_indexes();  // also rebuilds expert_docs; throws IntegrityError

  const Document& doc(const DocId& id) const;
  std::size_t doc_pos(const DocId& id) const;
  std::size_t expert_pos(const ExpertId& id) const;
};

enum class CorpusFormat { Jsonl, Csv };

// experts_path: optional sidecar declaring the full expert set, one id per
// line. Authors missing from it raise IntegrityError; sidecar entries with no
// documents are dropped.
Corpus load_corpus(const std::string& path, CorpusFormat format,
                   const std::string& experts_path = "");

void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format);

// Drops documents with fewer than min_tokens retained tokens, then drops
// experts left with no documents. Requires preprocess() to have run.
Corpus filter_documents(const Corpus& corpus, std::size_t min_tokens = 5);

struct GroundTruth {
  // Insertion-ordered topics; label is the raw phrase string from the file.
  std::vector<TopicId> topic_ids;
  std::map<TopicId, std::string> labels;
  std::map<TopicId, std::set<ExpertId>> relevant;
};

// CSV with header topic_id,topic_label,expert_id. When a corpus is given,
// every expert must exist in it. Later topics duplicating an earlier label
// (case/whitespace-insensitive) are dropped wholesale.
GroundTruth load_ground_truth(const std::string& path, const Corpus* corpus = nullptr);

}  // namespace expertrank
