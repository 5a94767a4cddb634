#include <doctest.h>

#include <fstream>
#include <set>

#include "expertrank/corpus.hpp"
#include "expertrank/types.hpp"
#include "helpers.hpp"

using namespace expertrank;
using testutil::fixture_path;
using testutil::make_doc;
using testutil::TempDir;

TEST_CASE("jsonl loader reads documents and collects experts in order") {
  auto c = load_corpus(fixture_path("nidf_corpus.jsonl"), CorpusFormat::Jsonl);
  REQUIRE(c.documents.size() == 10);
  CHECK(c.documents[0].id == "d01");
  CHECK(c.documents[0].title == "gamma delta epsilon");
  CHECK(c.documents[1].authors == std::vector<ExpertId>{"x1", "x2"});
  CHECK(c.experts == std::vector<ExpertId>{"x1", "x2", "x3"});
  CHECK(c.expert_docs[c.expert_pos("x1")].size() == 4);
  CHECK(c.expert_docs[c.expert_pos("x2")].size() == 4);
  CHECK(c.expert_docs[c.expert_pos("x3")].size() == 3);
}

TEST_CASE("indexes invert the label vectors") {
  auto c = load_corpus(fixture_path("nidf_corpus.jsonl"), CorpusFormat::Jsonl);
  for (std::size_t i = 0; i < c.documents.size(); ++i)
    CHECK(c.doc_pos(c.documents[i].id) == i);
  for (std::size_t i = 0; i < c.experts.size(); ++i)
    CHECK(c.expert_pos(c.experts[i]) == i);
  CHECK_THROWS_AS(c.doc_pos("nope"), IntegrityError);
  CHECK_THROWS_AS(c.expert_pos("nope"), IntegrityError);
}

TEST_CASE("jsonl loader reports the offending line") {
  TempDir tmp;
  auto path = tmp.file("bad.jsonl");
  {
    std::ofstream out(path);
    out << R"({"id": "a", "title": "t", "abstract": "x", "authors": ["e"]})" << "\n";
    out << "{not json\n";
  }
  try {
    load_corpus(path, CorpusFormat::Jsonl);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("jsonl loader rejects missing fields") {
  TempDir tmp;
  auto path = tmp.file("missing.jsonl");
  {
    std::ofstream out(path);
    out << R"({"id": "a", "abstract": "x", "authors": ["e"]})" << "\n";
  }
  CHECK_THROWS_AS(load_corpus(path, CorpusFormat::Jsonl), ParseError);
}

TEST_CASE("corpus round-trips through both formats") {
  auto original = load_corpus(fixture_path("nidf_corpus.jsonl"), CorpusFormat::Jsonl);
  TempDir tmp;
  for (auto format : {CorpusFormat::Csv, CorpusFormat::Jsonl}) {
    auto path = tmp.file(format == CorpusFormat::Csv ? "c.csv" : "c.jsonl");
    save_corpus(original, path, format);
    auto back = load_corpus(path, format);
    REQUIRE(back.documents.size() == original.documents.size());
    for (std::size_t i = 0; i < back.documents.size(); ++i) {
      CHECK(back.documents[i].id == original.documents[i].id);
      CHECK(back.documents[i].title == original.documents[i].title);
      CHECK(back.documents[i].abstract == original.documents[i].abstract);
      CHECK(back.documents[i].authors == original.documents[i].authors);
    }
    CHECK(back.experts == original.experts);
  }
}

TEST_CASE("csv loader handles quoted fields and rejects bad headers") {
  TempDir tmp;
  auto path = tmp.file("quoted.csv");
  {
    std::ofstream out(path);
    out << "id,title,abstract,authors\n";
    out << "d1,\"a, quoted title\",\"she said \"\"hi\"\"\",\"x1;x2\"\n";
  }
  auto c = load_corpus(path, CorpusFormat::Csv);
  REQUIRE(c.documents.size() == 1);
  CHECK(c.documents[0].title == "a, quoted title");
  CHECK(c.documents[0].abstract == "she said \"hi\"");
  CHECK(c.documents[0].authors == std::vector<ExpertId>{"x1", "x2"});

  auto bad = tmp.file("bad.csv");
  {
    std::ofstream out(bad);
    out << "id,name,abstract,authors\nd1,t,a,x\n";
  }
  CHECK_THROWS_AS(load_corpus(bad, CorpusFormat::Csv), ParseError);
}

TEST_CASE("rebuild_indexes enforces integrity") {
  SUBCASE("duplicate document id") {
    Corpus c;
    c.documents = {make_doc("d1", "t", "a", {"x"}), make_doc("d1", "t", "a", {"x"})};
    c.experts = {"x"};
    CHECK_THROWS_AS(c.rebuild_indexes(), IntegrityError);
  }
  SUBCASE("document without authors") {
    Corpus c;
    c.documents = {make_doc("d1", "t", "a", {})};
    CHECK_THROWS_AS(c.rebuild_indexes(), IntegrityError);
  }
  SUBCASE("author listed twice") {
    Corpus c;
    c.documents = {make_doc("d1", "t", "a", {"x", "x"})};
    c.experts = {"x"};
    CHECK_THROWS_AS(c.rebuild_indexes(), IntegrityError);
  }
  SUBCASE("author not in the expert list") {
    Corpus c;
    c.documents = {make_doc("d1", "t", "a", {"y"})};
    c.experts = {"x"};
    CHECK_THROWS_AS(c.rebuild_indexes(), IntegrityError);
  }
  SUBCASE("expert without documents") {
    Corpus c;
    c.documents = {make_doc("d1", "t", "a", {"x"})};
    c.experts = {"x", "ghost"};
    CHECK_THROWS_AS(c.rebuild_indexes(), IntegrityError);
  }
}

TEST_CASE("expert sidecar fixes the expert order and is validated") {
  TempDir tmp;
  auto corpus_path = tmp.file("c.jsonl");
  {
    std::ofstream out(corpus_path);
    out << R"({"id": "d1", "title": "t", "abstract": "a", "authors": ["b", "a"]})" << "\n";
  }
  SUBCASE("sidecar order wins and docless entries are dropped") {
    auto experts_path = tmp.file("experts.txt");
    {
      std::ofstream out(experts_path);
      out << "a\nb\nunused\n";
    }
    auto c = load_corpus(corpus_path, CorpusFormat::Jsonl, experts_path);
    CHECK(c.experts == std::vector<ExpertId>{"a", "b"});
  }
  SUBCASE("author missing from the sidecar is an error") {
    auto experts_path = tmp.file("experts.txt");
    {
      std::ofstream out(experts_path);
      out << "a\n";
    }
    CHECK_THROWS_AS(load_corpus(corpus_path, CorpusFormat::Jsonl, experts_path),
                    IntegrityError);
  }
}

TEST_CASE("preprocess fills tokens and per-sentence lemma streams") {
  auto c = testutil::load_fixture_corpus("nidf_corpus.jsonl");
  const auto& d01 = c.doc("d01");
  CHECK(d01.tokens.size() == 10);
  REQUIRE(d01.sentences.size() == 2);  // title and abstract split at the joiner
  CHECK(d01.sentences[0] == std::vector<std::string>{"gamma", "delta", "epsilon"});
  CHECK(d01.sentences[1][0] == "alpha");
  CHECK(d01.sentences[1][1] == "beta");
  CHECK(c.preprocessed);
}

TEST_CASE("preprocess drops stopwords but keeps them in the tagged stream") {
  auto c = testutil::prepared_corpus(
      {make_doc("d1", "the neural network", "it works", {"x"})});
  const auto& d = c.documents[0];
  CHECK(d.tokens == std::vector<std::string>{"neural", "network", "work"});
  REQUIRE(d.tagged.size() == 2);
  CHECK(d.tagged[0].size() == 3);  // "the" still present here
  CHECK(d.tagged[0][0].tag == Tag::STOP);
}

TEST_CASE("filter_documents drops short docs and orphaned experts") {
  auto c = testutil::load_fixture_corpus("nidf_corpus.jsonl");
  auto filtered = filter_documents(c, 8);
  REQUIRE(filtered.documents.size() == 2);  // d01 has 10 tokens, d02 has 8
  CHECK(filtered.documents[0].id == "d01");
  CHECK(filtered.documents[1].id == "d02");
  CHECK(filtered.experts == std::vector<ExpertId>{"x1", "x2"});  // x3 loses all docs

  SUBCASE("idempotent at the same threshold") {
    auto again = filter_documents(filtered, 8);
    CHECK(again.documents.size() == filtered.documents.size());
    CHECK(again.experts == filtered.experts);
  }
  SUBCASE("threshold zero keeps everything") {
    auto all = filter_documents(c, 0);
    CHECK(all.documents.size() == c.documents.size());
  }
}

TEST_CASE("filter_documents requires preprocessing") {
  auto c = load_corpus(fixture_path("nidf_corpus.jsonl"), CorpusFormat::Jsonl);
  CHECK_THROWS_AS(filter_documents(c, 5), Error);
}

TEST_CASE("ground truth loads topics in order with relevance sets") {
  auto truth = load_ground_truth(fixture_path("toy_truth.csv"));
  REQUIRE(truth.topic_ids == std::vector<TopicId>{"q1", "q2", "q3"});
  CHECK(truth.labels.at("q1") == "neural network");
  CHECK(truth.relevant.at("q1") == std::set<ExpertId>{"x1", "x2"});
  CHECK(truth.relevant.at("q2") == std::set<ExpertId>{"x1"});
  CHECK(truth.relevant.at("q3") == std::set<ExpertId>{"x2", "x3"});
}

TEST_CASE("ground truth drops later topics duplicating a label") {
  TempDir tmp;
  auto path = tmp.file("truth.csv");
  {
    std::ofstream out(path);
    out << "topic_id,topic_label,expert_id\n";
    out << "q1,neural network,x1\n";
    out << "q2,Neural  NETWORK,x2\n";  // same label after canonicalization
    out << "q3,sensor network,x3\n";
  }
  auto truth = load_ground_truth(path);
  CHECK(truth.topic_ids == std::vector<TopicId>{"q1", "q3"});
  CHECK(truth.relevant.count("q2") == 0);
}

TEST_CASE("ground truth validates experts against a corpus") {
  auto c = testutil::load_fixture_corpus("toy_corpus.jsonl");
  CHECK_NOTHROW(load_ground_truth(fixture_path("toy_truth.csv"), &c));

  TempDir tmp;
  auto path = tmp.file("truth.csv");
  {
    std::ofstream out(path);
    out << "topic_id,topic_label,expert_id\nq1,neural network,x9\n";
  }
  CHECK_NOTHROW(load_ground_truth(path));  // no corpus, no check
  CHECK_THROWS_AS(load_ground_truth(path, &c), IntegrityError);
}
