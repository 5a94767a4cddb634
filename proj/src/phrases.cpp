#include "expertrank/phrases.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "expertrank/io.hpp"
#include "expertrank/parallel.hpp"

namespace expertrank {

Phrase Phrase::from_terms(std::vector<std::string> terms) {
  Phrase p;
  p.terms = std::move(terms);
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    if (i) p.key.push_back(' ');
    p.key += p.terms[i];
  }
  return p;
}

Phrase Phrase::from_key(const std::string& key) {
  std::vector<std::string> terms;
  std::stringstream in(key);
  std::string term;
  while (in >> term) terms.push_back(term);
  if (terms.empty()) throw ParseError("empty phrase key");
  return from_terms(std::move(terms));
}

namespace {

bool is_modifier(Tag t) { return t == Tag::JJ || t == Tag::VBN || t == Tag::VBG; }

}  // namespace

std::vector<Phrase> extract_phrases(const TaggedSentence& sentence,
                                    const ExtractOptions& opts) {
  std::vector<Phrase> out;
  const std::size_t n = sentence.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t m = i;
    if (is_modifier(sentence[m].tag)) {
      Tag run = sentence[m].tag;
      ++m;
      while (m < n && (opts.mixed_modifiers ? is_modifier(sentence[m].tag)
                                            : sentence[m].tag == run))
        ++m;
    }
    std::size_t noun_start = m;
    while (m < n && sentence[m].tag == Tag::N) ++m;
    if (m == noun_start) {
      ++i;  // modifiers with no noun head match nothing
      continue;
    }
    // match spans [i, m); every emitted span must end inside the noun run
    if (opts.subspans == SubspanPolicy::MaximalOnly) {
      if (m - i <= opts.max_len) {
        std::vector<std::string> terms;
        for (std::size_t k = i; k < m; ++k) terms.push_back(sentence[k].lemma);
        out.push_back(Phrase::from_terms(std::move(terms)));
      }
    } else {
      for (std::size_t a = i; a < m; ++a) {
        for (std::size_t b = std::max(a, noun_start); b < m; ++b) {
          if (b - a + 1 > opts.max_len) break;
          std::vector<std::string> terms;
          for (std::size_t k = a; k <= b; ++k) terms.push_back(sentence[k].lemma);
          out.push_back(Phrase::from_terms(std::move(terms)));
        }
      }
    }
    i = m;
  }
  return out;
}

std::size_t TopicSet::pos_of_id(const TopicId& id) const {
  auto it = id_to_pos.find(id);
  if (it == id_to_pos.end()) throw UnknownTopicError("unknown topic id: " + id);
  return it->second;
}

const Phrase& TopicSet::phrase_of(const TopicId& id) const {
  return phrases[pos_of_id(id)];
}

void TopicSet::index() {
  key_to_pos.clear();
  id_to_pos.clear();
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    if (!key_to_pos.emplace(phrases[i].key, i).second)
      throw IntegrityError("duplicate phrase key: " + phrases[i].key);
    if (!id_to_pos.emplace(ids[i], i).second)
      throw IntegrityError("duplicate topic id: " + ids[i]);
  }
}

TopicSet build_topic_set(const Corpus& corpus, const ExtractOptions& opts, int jobs) {
  if (!corpus.preprocessed)
    throw Error("build_topic_set requires a preprocessed corpus");

  const std::size_t n = corpus.documents.size();
  std::vector<std::map<std::string, int>> per_doc(n);
  parallel_for(n, jobs, [&](std::size_t d) {
    auto& counts = per_doc[d];
    for (const auto& sentence : corpus.documents[d].tagged)
      for (auto& phrase : extract_phrases(sentence, opts)) ++counts[phrase.key];
  });

  // document order is fixed, so occurrence lists come out doc-sorted
  std::map<std::string, std::vector<std::pair<std::size_t, int>>> merged;
  for (std::size_t d = 0; d < n; ++d)
    for (const auto& [key, count] : per_doc[d]) merged[key].emplace_back(d, count);

  TopicSet topics;
  topics.phrases.reserve(merged.size());
  topics.ids.reserve(merged.size());
  topics.doc_occurrences.reserve(merged.size());
  std::size_t next_id = 1;
  for (auto& [key, occurrences] : merged) {
    topics.phrases.push_back(Phrase::from_key(key));
    topics.ids.push_back("t" + std::to_string(next_id++));
    topics.doc_occurrences.push_back(std::move(occurrences));
  }
  topics.index();
  return topics;
}

void save_topics(const TopicSet& topics, const std::string& path) {
  std::string out;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    out += topics.ids[i];
    out.push_back('\t');
    out += topics.phrases[i].key;
    out.push_back('\n');
  }
  write_file(path, out);
}

TopicSet load_topics(const std::string& path) {
  TopicSet topics;
  int line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected topic_id<TAB>phrase");
    topics.ids.push_back(line.substr(0, tab));
    topics.phrases.push_back(Phrase::from_key(line.substr(tab + 1)));
  }
  topics.doc_occurrences.assign(topics.size(), {});
  topics.index();
  return topics;
}

}  // namespace expertrank
