#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/phrases.hpp"
#include "expertrank/term_stats.hpp"
#include "expertrank/text.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(EXPERTRANK_FIXTURES) + "/" + name;
}

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    std::mt19937_64 rng(std::random_device{}());
    path = base / ("expertrank_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline expertrank::Document make_doc(std::string id, std::string title,
                                     std::string abstract,
                                     std::vector<std::string> authors) {
  expertrank::Document d;
  d.id = std::move(id);
  d.title = std::move(title);
  d.abstract = std::move(abstract);
  d.authors = std::move(authors);
  return d;
}

inline expertrank::Corpus make_corpus(std::vector<expertrank::Document> docs) {
  expertrank::Corpus c;
  c.documents = std::move(docs);
  for (const auto& doc : c.documents)
    for (const auto& a : doc.authors)
      if (std::find(c.experts.begin(), c.experts.end(), a) == c.experts.end())
        c.experts.push_back(a);
  c.rebuild_indexes();
  return c;
}

inline expertrank::Corpus prepared_corpus(std::vector<expertrank::Document> docs) {
  auto c = make_corpus(std::move(docs));
  expertrank::LexiconTagger tagger;
  c.preprocess(tagger);
  return c;
}

inline expertrank::Corpus load_fixture_corpus(const std::string& name) {
  auto c = expertrank::load_corpus(fixture_path(name), expertrank::CorpusFormat::Jsonl);
  expertrank::LexiconTagger tagger;
  c.preprocess(tagger);
  return c;
}

// Synthetic word that the lexicon tagger can only treat as a plain noun:
// lowercase letters, ends in 'k' so no suffix rule fires and lemma == surface.
inline std::string synth_word(std::mt19937& rng, int len = 5) {
  static const char kLetters[] = "abcdefghijlmoqruvwxyz";
  std::string w;
  std::uniform_int_distribution<int> pick(0, sizeof(kLetters) - 2);
  for (int i = 0; i < len - 1; ++i) w.push_back(kLetters[pick(rng)]);
  w.push_back('k');
  return w;
}

}  // namespace testutil
