#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "expertrank/types.hpp"

namespace expertrank {

enum class Tag { JJ, VBN, VBG, N, OTHER, STOP };

std::string_view tag_name(Tag t);
Tag tag_from_name(std::string_view name);  // throws ParseError on unknown names

struct TaggedToken {
  std::string surface;
  std::string lemma;
  Tag tag = Tag::N;
};

using TaggedSentence = std::vector<TaggedToken>;

// Turns raw document text into tagged, lemmatized sentences. Implementations
// own tokenization because the pre-tagged format has its own.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<TaggedSentence> run(std::string_view text) const = 0;
};

// Word-list driven tagger: stopword list, adjective list, a noun-exception
// list that shields words like "string" from the -ing rule, and the -ing/-ed
// suffix heuristics. Everything else is a noun.
class LexiconTagger final : public Tagger {
 public:
  LexiconTagger();

  // Replaces the bundled stopword list (one word per line already split).
  void set_stopwords(const std::vector<std::string>& words);

  std::vector<TaggedSentence> run(std::string_view text) const override;

  Tag classify(const std::string& lower) const;
  bool is_stopword(const std::string& lower) const {
    return stopwords_.count(lower) > 0;
  }

 private:
  std::unordered_set<std::string> stopwords_;
  std::unordered_set<std::string> adjectives_;
  std::unordered_set<std::string> noun_exceptions_;
};

// Reads "surface/TAG" tokens, one sentence per line. Tags beyond the internal
// set are folded: NN* -> N, JJ* -> JJ, anything unrecognized -> OTHER.
// Stopword filtering still applies so document lengths stay comparable with
// the lexicon path.
class PretaggedReader final : public Tagger {
 public:
  PretaggedReader();
  void set_stopwords(const std::vector<std::string>& words);

  std::vector<TaggedSentence> run(std::string_view text) const override;

 private:
  std::unordered_set<std::string> stopwords_;
};

std::vector<TaggedSentence> preprocess(std::string_view text, const Tagger& tagger);

// Tag-directed lemmatizer: plural stripping for nouns, -ing/-ed stripping
// with doubled-consonant repair for verb forms, irregular nouns from a small
// table. Input must already be lowercase.
std::string lemmatize(const std::string& lower, Tag tag);

std::string to_lower(std::string_view s);

// Sentence split on ./!/? followed by whitespace; tokens are runs of
// alphanumerics plus '-' and '\''.
std::vector<std::vector<std::string>> split_sentences(std::string_view text);

const std::vector<std::string>& bundled_stopwords();

std::vector<std::string> load_word_list(const std::string& path);  // one word per line

}  // namespace expertrank
