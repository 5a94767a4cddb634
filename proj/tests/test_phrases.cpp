#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "expertrank/phrases.hpp"
#include "expertrank/types.hpp"
#include "helpers.hpp"

using namespace expertrank;

namespace {

TaggedSentence ts(std::vector<std::pair<std::string, Tag>> tokens) {
  TaggedSentence s;
  for (auto& [word, tag] : tokens) s.push_back({word, word, tag});
  return s;
}

std::set<std::string> keys(const std::vector<Phrase>& phrases) {
  std::set<std::string> out;
  for (const auto& p : phrases) out.insert(p.key);
  return out;
}

}  // namespace

TEST_CASE("phrase construction round-trips") {
  auto p = Phrase::from_terms({"deep", "neural", "network"});
  CHECK(p.key == "deep neural network");
  CHECK(p.size() == 3);
  auto q = Phrase::from_key("deep neural network");
  CHECK(q.terms == p.terms);
}

TEST_CASE("adjective plus noun emits the pair and the head") {
  auto out = extract_phrases(ts({{"deep", Tag::JJ}, {"network", Tag::N}}));
  REQUIRE(out.size() == 2);
  CHECK(out[0].key == "deep network");
  CHECK(out[1].key == "network");
}

TEST_CASE("two modifiers and two nouns emit six spans") {
  auto out = extract_phrases(ts({{"deep", Tag::JJ},
                                 {"neural", Tag::JJ},
                                 {"network", Tag::N},
                                 {"model", Tag::N}}));
  CHECK(keys(out) == std::set<std::string>{
                         "deep neural network", "neural network",
                         "neural network model", "network", "network model",
                         "model"});
  CHECK(out.size() == 6);
}

TEST_CASE("every span must end inside the noun run") {
  auto out = extract_phrases(ts({{"deep", Tag::JJ}, {"neural", Tag::JJ},
                                 {"network", Tag::N}}));
  auto k = keys(out);
  CHECK(k.count("deep neural") == 0);
  CHECK(k.count("deep") == 0);
  CHECK(k.count("deep neural network") == 1);
}

TEST_CASE("modifier runs are tag-uniform by default") {
  auto tokens = ts({{"deep", Tag::JJ}, {"embedded", Tag::VBN}, {"system", Tag::N}});
  auto out = extract_phrases(tokens);
  CHECK(keys(out) == std::set<std::string>{"embedded system", "system"});

  ExtractOptions mixed;
  mixed.mixed_modifiers = true;
  auto out2 = extract_phrases(tokens, mixed);
  CHECK(keys(out2) == std::set<std::string>{"deep embedded system",
                                            "embedded system", "system"});
}

TEST_CASE("stopwords and punctuation break matches") {
  auto out = extract_phrases(ts({{"network", Tag::N},
                                 {"the", Tag::STOP},
                                 {"model", Tag::N}}));
  CHECK(keys(out) == std::set<std::string>{"network", "model"});

  auto out2 = extract_phrases(ts({{"network", Tag::N},
                                  {"3", Tag::OTHER},
                                  {"model", Tag::N}}));
  CHECK(keys(out2) == std::set<std::string>{"network", "model"});
}

TEST_CASE("matches are non-overlapping and leftmost") {
  auto out = extract_phrases(ts({{"deep", Tag::JJ}, {"network", Tag::N},
                                 {"fast", Tag::JJ}, {"model", Tag::N}}));
  CHECK(keys(out) == std::set<std::string>{"deep network", "network",
                                           "fast model", "model"});
}

TEST_CASE("trailing modifiers without a noun head match nothing") {
  auto out = extract_phrases(ts({{"network", Tag::N}, {"deep", Tag::JJ}}));
  CHECK(keys(out) == std::set<std::string>{"network"});
  auto none = extract_phrases(ts({{"deep", Tag::JJ}, {"running", Tag::VBG}}));
  CHECK(none.empty());
  CHECK(extract_phrases({}).empty());
}

TEST_CASE("subspans are truncated to max_len") {
  auto four_nouns = ts({{"a", Tag::N}, {"b", Tag::N}, {"c", Tag::N}, {"d", Tag::N}});
  auto out = extract_phrases(four_nouns);
  CHECK(out.size() == 9);  // 3 + 3 + 2 + 1 windows of length <= 3
  for (const auto& p : out) CHECK(p.size() <= 3);

  ExtractOptions longer;
  longer.max_len = 4;
  CHECK(extract_phrases(four_nouns, longer).size() == 10);
}

TEST_CASE("maximal-only keeps whole matches within the budget") {
  ExtractOptions opts;
  opts.subspans = SubspanPolicy::MaximalOnly;
  auto four_nouns = ts({{"a", Tag::N}, {"b", Tag::N}, {"c", Tag::N}, {"d", Tag::N}});
  CHECK(extract_phrases(four_nouns, opts).empty());  // match longer than max_len

  auto pair = extract_phrases(ts({{"neural", Tag::JJ}, {"network", Tag::N}}), opts);
  REQUIRE(pair.size() == 1);
  CHECK(pair[0].key == "neural network");
}

TEST_CASE("random sentences only ever emit well-formed phrases") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> tag_pick(0, 5);
  std::uniform_int_distribution<int> len_pick(0, 12);
  const Tag tags[] = {Tag::JJ, Tag::VBN, Tag::VBG, Tag::N, Tag::OTHER, Tag::STOP};
  ExtractOptions opts;

  for (int trial = 0; trial < 300; ++trial) {
    TaggedSentence sentence;
    int len = len_pick(rng);
    for (int i = 0; i < len; ++i) {
      std::string w = testutil::synth_word(rng, 4);
      w += std::to_string(i);  // position-unique so windows can be located
      sentence.push_back({w, w, tags[tag_pick(rng)]});
    }
    for (const auto& phrase : extract_phrases(sentence, opts)) {
      REQUIRE(phrase.size() >= 1);
      REQUIRE(phrase.size() <= opts.max_len);
      // locate the (unique) contiguous window with these lemmas
      bool found = false;
      for (std::size_t start = 0; start + phrase.size() <= sentence.size(); ++start) {
        bool match = true;
        for (std::size_t k = 0; k < phrase.size(); ++k)
          if (sentence[start + k].lemma != phrase.terms[k]) { match = false; break; }
        if (!match) continue;
        found = true;
        // shape: zero or more modifiers, then nouns to the end
        bool in_nouns = false;
        for (std::size_t k = 0; k < phrase.size(); ++k) {
          Tag t = sentence[start + k].tag;
          REQUIRE((t == Tag::JJ || t == Tag::VBN || t == Tag::VBG || t == Tag::N));
          if (t == Tag::N) in_nouns = true;
          else REQUIRE(!in_nouns);
        }
        REQUIRE(sentence[start + phrase.size() - 1].tag == Tag::N);
      }
      REQUIRE(found);
    }
  }
}

TEST_CASE("topic set over the toy corpus") {
  auto corpus = testutil::load_fixture_corpus("toy_corpus.jsonl");
  auto topics = build_topic_set(corpus);

  for (const char* key : {"neural network", "sensor network", "signal filter",
                          "wireless sensor network", "deep neural network",
                          "sensor signal filter"}) {
    CHECK_MESSAGE(topics.key_to_pos.count(key) == 1, key);
  }
  CHECK(topics.key_to_pos.count("the") == 0);

  // ids follow lexicographic key order
  REQUIRE(topics.ids.size() == topics.phrases.size());
  for (std::size_t i = 0; i < topics.size(); ++i) {
    CHECK(topics.ids[i] == "t" + std::to_string(i + 1));
    if (i > 0) CHECK(topics.phrases[i - 1].key < topics.phrases[i].key);
  }

  // occurrence counts: "sensor network" shows up twice in d1 and nowhere else
  auto pos = topics.key_to_pos.at("sensor network");
  REQUIRE(topics.doc_occurrences[pos].size() == 1);
  CHECK(topics.doc_occurrences[pos][0].first == corpus.doc_pos("d1"));
  CHECK(topics.doc_occurrences[pos][0].second == 2);

  auto net = topics.key_to_pos.at("network");
  REQUIRE(topics.doc_occurrences[net].size() == 2);
  CHECK(topics.doc_occurrences[net][0].second == 2);  // d1: title + abstract
  CHECK(topics.doc_occurrences[net][1].second == 2);  // d2: title + abstract
}

TEST_CASE("topic set construction is independent of the job count") {
  auto corpus = testutil::load_fixture_corpus("toy_corpus.jsonl");
  auto serial = build_topic_set(corpus, {}, 1);
  auto parallel = build_topic_set(corpus, {}, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial.ids[i] == parallel.ids[i]);
    CHECK(serial.phrases[i].key == parallel.phrases[i].key);
    CHECK(serial.doc_occurrences[i] == parallel.doc_occurrences[i]);
  }
}

TEST_CASE("maximal-only topic set skips oversized title runs") {
  auto corpus = testutil::load_fixture_corpus("toy_corpus.jsonl");
  ExtractOptions opts;
  opts.subspans = SubspanPolicy::MaximalOnly;
  auto topics = build_topic_set(corpus, opts);
  CHECK(topics.key_to_pos.count("neural network") == 1);
  CHECK(topics.key_to_pos.count("sensor signal filter") == 1);  // d4 title, exactly 3
  CHECK(topics.key_to_pos.count("network") == 0);  // never a maximal match here
}

TEST_CASE("topics save and load as TSV") {
  auto corpus = testutil::load_fixture_corpus("toy_corpus.jsonl");
  auto topics = build_topic_set(corpus);
  testutil::TempDir tmp;
  auto path = tmp.file("topics.tsv");
  save_topics(topics, path);
  auto back = load_topics(path);
  REQUIRE(back.size() == topics.size());
  for (std::size_t i = 0; i < topics.size(); ++i) {
    CHECK(back.ids[i] == topics.ids[i]);
    CHECK(back.phrases[i].key == topics.phrases[i].key);
  }
  CHECK(back.pos_of_id("t1") == 0);
  REQUIRE(back.doc_occurrences.size() == back.size());
  for (const auto& occ : back.doc_occurrences) CHECK(occ.empty());
}

TEST_CASE("topic lookup failures throw") {
  TopicSet topics;
  topics.phrases = {Phrase::from_key("neural network")};
  topics.ids = {"t1"};
  topics.index();
  CHECK_THROWS_AS(topics.pos_of_id("t99"), UnknownTopicError);
  CHECK(topics.phrase_of("t1").key == "neural network");

  TopicSet dup;
  dup.phrases = {Phrase::from_key("a"), Phrase::from_key("a")};
  dup.ids = {"t1", "t2"};
  CHECK_THROWS_AS(dup.index(), IntegrityError);
}
