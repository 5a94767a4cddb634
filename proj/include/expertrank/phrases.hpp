#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/text.hpp"
#include "expertrank/types.hpp"

namespace expertrank {

struct Phrase {
  std::vector<std::string> terms;
  std::string key;  // terms joined by single spaces

  static Phrase from_terms(std::vector<std::string> terms);
  static Phrase from_key(const std::string& key);
  std::size_t size() const { return terms.size(); }
};

enum class SubspanPolicy { All, MaximalOnly };

struct ExtractOptions {
  std::size_t max_len = 3;
  bool mixed_modifiers = false;  // allow JJ/VBN/VBG to interleave in the modifier run
  SubspanPolicy subspans = SubspanPolicy::All;
};

// Matches (JJ)*|(VBN)*|(VBG)* followed by (N)+, greedy leftmost-longest,
// non-overlapping. Emits lemma phrases; with SubspanPolicy::All every
// contiguous sub-span of a match that still ends inside the noun run is
// emitted too, truncated to max_len.
std::vector<Phrase> extract_phrases(const TaggedSentence& sentence,
                                    const ExtractOptions& opts = {});

struct TopicSet {
  std::vector<Phrase> phrases;  // key-sorted when built from a corpus
  std::vector<TopicId> ids;     // parallel to phrases
  std::unordered_map<std::string, std::size_t> key_to_pos;
  std::unordered_map<TopicId, std::size_t> id_to_pos;

  // per topic: (doc position, occurrence count), doc-ordered. Sets loaded
  // from a file carry empty per-topic lists.
  std::vector<std::vector<std::pair<std::size_t, int>>> doc_occurrences;

  std::size_t size() const { return phrases.size(); }
  std::size_t pos_of_id(const TopicId& id) const;   // throws UnknownTopicError
  const Phrase& phrase_of(const TopicId& id) const;

  void index();  // rebuilds both maps; throws IntegrityError on duplicates
};

// Runs extraction over every document sentence and aggregates occurrence
// counts. Topic ids are "t<N>" in lexicographic key order. jobs > 1 splits
// the corpus; the merge is order-independent.
TopicSet build_topic_set(const Corpus& corpus, const ExtractOptions& opts = {},
                         int jobs = 1);

// topic_id<TAB>phrase, one per line.
void save_topics(const TopicSet& topics, const std::string& path);
TopicSet load_topics(const std::string& path);

}  // namespace expertrank
