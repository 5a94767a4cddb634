#include "expertrank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_set>

#include "expertrank/io.hpp"

namespace expertrank {

using nlohmann::json;

void Corpus::rebuild_indexes() {
  doc_index.clear();
  expert_index.clear();
  for (std::size_t i = 0; i < documents.size(); ++i) {
    if (!doc_index.emplace(documents[i].id, i).second)
      throw IntegrityError("duplicate document id: " + documents[i].id);
  }
  for (std::size_t i = 0; i < experts.size(); ++i) {
    if (!expert_index.emplace(experts[i], i).second)
      throw IntegrityError("duplicate expert id: " + experts[i]);
  }
  expert_docs.assign(experts.size(), {});
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const auto& doc = documents[d];
    if (doc.authors.empty())
      throw IntegrityError("document " + doc.id + " has no authors");
    std::unordered_set<ExpertId> seen;
    for (const auto& a : doc.authors) {
      if (!seen.insert(a).second)
        throw IntegrityError("document " + doc.id + " lists author " + a + " twice");
      auto it = expert_index.find(a);
      if (it == expert_index.end())
        throw IntegrityError("document " + doc.id + " references unknown expert " + a);
      expert_docs[it->second].push_back(d);
    }
  }
  for (std::size_t x = 0; x < experts.size(); ++x) {
    if (expert_docs[x].empty())
      throw IntegrityError("expert " + experts[x] + " has no documents");
  }
}

void Corpus::preprocess(const Tagger& tagger) {
  for (auto& doc : documents) {
    doc.tokens.clear();
    doc.sentences.clear();
    doc.tagged = tagger.run(doc.text());
    for (const auto& sentence : doc.tagged) {
      std::vector<std::string> retained;
      for (const auto& tok : sentence) {
        if (tok.tag == Tag::STOP) continue;
        retained.push_back(tok.lemma);
        doc.tokens.push_back(tok.lemma);
      }
      if (!retained.empty()) doc.sentences.push_back(std::move(retained));
    }
  }
  preprocessed = true;
}

const Document& Corpus::doc(const DocId& id) const { return documents[doc_pos(id)]; }

std::size_t Corpus::doc_pos(const DocId& id) const {
  auto it = doc_index.find(id);
  if (it == doc_index.end()) throw IntegrityError("unknown document id: " + id);
  return it->second;
}

std::size_t Corpus::expert_pos(const ExpertId& id) const {
  auto it = expert_index.find(id);
  if (it == expert_index.end()) throw IntegrityError("unknown expert id: " + id);
  return it->second;
}

namespace {

void collect_experts(Corpus& corpus, const std::string& experts_path) {
  std::vector<ExpertId> declared;
  std::unordered_set<ExpertId> declared_set;
  if (!experts_path.empty()) {
    for (const auto& line : read_lines(experts_path)) {
      if (line.empty()) continue;
      if (declared_set.insert(line).second) declared.push_back(line);
    }
  }
  std::unordered_set<ExpertId> with_docs;
  std::vector<ExpertId> order;  // first appearance across documents
  for (const auto& doc : corpus.documents) {
    for (const auto& a : doc.authors) {
      if (!experts_path.empty() && !declared_set.count(a))
        throw IntegrityError("document " + doc.id + " author " + a +
                             " missing from experts file");
      if (with_docs.insert(a).second) order.push_back(a);
    }
  }
  if (experts_path.empty()) {
    corpus.experts = std::move(order);
  } else {
    // sidecar order wins; entries with no documents are dropped
    corpus.experts.clear();
    for (const auto& a : declared)
      if (with_docs.count(a)) corpus.experts.push_back(a);
  }
}

Document doc_from_json(const json& j, int line_no) {
  auto context = [&](const char* what) {
    return ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  if (!j.is_object()) throw context("expected a JSON object");
  Document doc;
  auto get_string = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
      throw context((std::string("missing or non-string '") + key + "'").c_str());
    return it->get<std::string>();
  };
  doc.id = get_string("id");
  doc.title = get_string("title");
  doc.abstract = get_string("abstract");
  auto it = j.find("authors");
  if (it == j.end() || !it->is_array() || it->empty())
    throw context("missing or empty 'authors' array");
  for (const auto& a : *it) {
    if (!a.is_string()) throw context("non-string entry in 'authors'");
    doc.authors.push_back(a.get<std::string>());
  }
  return doc;
}

Corpus load_jsonl(const std::string& path) {
  Corpus corpus;
  int line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ParseError("line " + std::to_string(line_no) + ": invalid JSON");
    corpus.documents.push_back(doc_from_json(j, line_no));
  }
  return corpus;
}

Corpus load_csv(const std::string& path) {
  Corpus corpus;
  auto lines = read_lines(path);
  if (lines.empty()) throw ParseError("empty corpus file: " + path);
  auto header = split_csv_row(lines[0]);
  if (header != std::vector<std::string>{"id", "title", "abstract", "authors"})
    throw ParseError("corpus csv header must be id,title,abstract,authors");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_csv_row(lines[i]);
    if (fields.size() != 4)
      throw ParseError("line " + std::to_string(i + 1) + ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    Document doc;
    doc.id = fields[0];
    doc.title = fields[1];
    doc.abstract = fields[2];
    std::stringstream authors(fields[3]);
    std::string a;
    while (std::getline(authors, a, ';'))
      if (!a.empty()) doc.authors.push_back(a);
    if (doc.authors.empty())
      throw ParseError("line " + std::to_string(i + 1) + ": no authors");
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format,
                   const std::string& experts_path) {
  Corpus corpus = format == CorpusFormat::Jsonl ? load_jsonl(path) : load_csv(path);
  collect_experts(corpus, experts_path);
  corpus.rebuild_indexes();
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format) {
  std::ostringstream out;
  if (format == CorpusFormat::Jsonl) {
    for (const auto& doc : corpus.documents) {
      json j{{"id", doc.id},
             {"title", doc.title},
             {"abstract", doc.abstract},
             {"authors", doc.authors}};
      out << j.dump() << "\n";
    }
  } else {
    out << "id,title,abstract,authors\n";
    for (const auto& doc : corpus.documents) {
      std::string authors;
      for (std::size_t i = 0; i < doc.authors.size(); ++i) {
        if (i) authors.push_back(';');
        authors += doc.authors[i];
      }
      out << csv_field(doc.id) << ',' << csv_field(doc.title) << ','
          << csv_field(doc.abstract) << ',' << csv_field(authors) << "\n";
    }
  }
  write_file(path, out.str());
}

Corpus filter_documents(const Corpus& corpus, std::size_t min_tokens) {
  if (!corpus.preprocessed)
    throw Error("filter_documents requires a preprocessed corpus");
  Corpus out;
  out.preprocessed = true;
  for (const auto& doc : corpus.documents)
    if (doc.tokens.size() >= min_tokens) out.documents.push_back(doc);
  std::unordered_set<ExpertId> with_docs;
  for (const auto& doc : out.documents)
    for (const auto& a : doc.authors) with_docs.insert(a);
  for (const auto& x : corpus.experts)
    if (with_docs.count(x)) out.experts.push_back(x);
  out.rebuild_indexes();
  return out;
}

GroundTruth load_ground_truth(const std::string& path, const Corpus* corpus) {
  auto lines = read_lines(path);
  if (lines.empty()) throw ParseError("empty ground-truth file: " + path);
  auto header = split_csv_row(lines[0]);
  if (header != std::vector<std::string>{"topic_id", "topic_label", "expert_id"})
    throw ParseError("ground-truth header must be topic_id,topic_label,expert_id");

  auto canonical = [](const std::string& s) {
    std::string out;
    bool pending_space = false;
    for (char raw : s) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
      if (std::isspace(static_cast<unsigned char>(c))) {
        pending_space = !out.empty();
      } else {
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
      }
    }
    return out;
  };

  GroundTruth truth;
  std::unordered_map<std::string, TopicId> label_owner;
  std::unordered_set<TopicId> dropped;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_csv_row(lines[i]);
    if (fields.size() != 3)
      throw ParseError("line " + std::to_string(i + 1) + ": expected 3 fields");
    const TopicId& topic = fields[0];
    const std::string& label = fields[1];
    const ExpertId& expert = fields[2];
    if (topic.empty() || expert.empty())
      throw ParseError("line " + std::to_string(i + 1) + ": empty topic or expert id");
    if (dropped.count(topic)) continue;
    if (!truth.labels.count(topic)) {
      std::string canon = canonical(label);
      auto [it, inserted] = label_owner.emplace(canon, topic);
      if (!inserted && it->second != topic) {
        dropped.insert(topic);  // later duplicate of an earlier label
        continue;
      }
      truth.topic_ids.push_back(topic);
      truth.labels[topic] = label;
    }
    if (corpus && !corpus->expert_index.count(expert))
      throw IntegrityError("line " + std::to_string(i + 1) + ": expert " + expert +
                           " not in corpus");
    truth.relevant[topic].insert(expert);
  }
  return truth;
}

}  // namespace expertrank
