// Command-line front end: extract, matrices, rank, evaluate, sweep,
// match-topic. Every command writes a run manifest before its outputs and can
// reuse matrix artifacts from a content-addressed cache.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "expertrank/baselines.hpp"
#include "expertrank/corpus.hpp"
#include "expertrank/ecg.hpp"
#include "expertrank/embedding.hpp"
#include "expertrank/io.hpp"
#include "expertrank/matrices.hpp"
#include "expertrank/metrics.hpp"
#include "expertrank/parallel.hpp"
#include "expertrank/phrases.hpp"
#include "expertrank/propagate.hpp"
#include "expertrank/scorers.hpp"
#include "expertrank/sweep.hpp"
#include "expertrank/term_stats.hpp"
#include "expertrank/text.hpp"
#include "expertrank/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace expertrank;

namespace {

constexpr const char* kCacheVersion = "expertrank-cache-1";

enum class Model { ExpFinder, CoHits, Nvsm, Tfidf, Dlm, Wiser, Adt, RepModel };

Model model_from_name(const std::string& name) {
  if (name == "expfinder") return Model::ExpFinder;
  if (name == "cohits") return Model::CoHits;
  if (name == "nvsm") return Model::Nvsm;
  if (name == "tfidf") return Model::Tfidf;
  if (name == "dlm") return Model::Dlm;
  if (name == "wiser") return Model::Wiser;
  if (name == "adt") return Model::Adt;
  if (name == "repmodel") return Model::RepModel;
  throw UnknownModelError("unknown model: " + name);
}

CorpusFormat format_from_name(const std::string& name) {
  if (name == "jsonl") return CorpusFormat::Jsonl;
  if (name == "csv") return CorpusFormat::Csv;
  throw ParseError("unknown corpus format: " + name);
}

// Options shared by every corpus-consuming command.
struct CorpusOpts {
  std::string path;
  std::string format = "jsonl";
  std::string experts_path;
  std::string stopwords_path;
  bool tagged_input = false;
  std::size_t min_tokens = 5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--corpus", path, "corpus file")->required();
    cmd->add_option("--format", format, "corpus format: jsonl or csv")
        ->default_val("jsonl");
    cmd->add_option("--experts", experts_path, "expert sidecar, one id per line");
    cmd->add_option("--stopwords", stopwords_path,
                    "replacement stopword list, one word per line");
    cmd->add_flag("--tagged-input", tagged_input,
                  "treat document text as pre-tagged surface/TAG tokens");
    cmd->add_option("--min-tokens", min_tokens,
                    "drop documents with fewer retained tokens")
        ->default_val(5);
  }
};

struct ExtractOpts {
  std::size_t max_len = 3;
  bool mixed_modifiers = false;
  std::string subspans = "all";

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-len", max_len, "maximum phrase length")->default_val(3);
    cmd->add_flag("--mixed-modifiers", mixed_modifiers,
                  "let JJ/VBN/VBG interleave in the modifier run");
    cmd->add_option("--subspans", subspans, "all or maximal-only")
        ->default_val("all")
        ->check(CLI::IsMember({"all", "maximal-only"}));
  }

  ExtractOptions to_options() const {
    ExtractOptions opts;
    opts.max_len = max_len;
    opts.mixed_modifiers = mixed_modifiers;
    opts.subspans = subspans == "maximal-only" ? SubspanPolicy::MaximalOnly
                                               : SubspanPolicy::All;
    return opts;
  }
};

struct WeightOpts {
  double dlm_lambda = 0.5;
  double bm25_k1 = 1.2;
  double bm25_b = 0.75;
  bool allow_negative_nidf = false;
  bool strict_collection_lm = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dlm-lambda", dlm_lambda, "language-model smoothing weight")
        ->default_val(0.5);
    cmd->add_option("--bm25-k1", bm25_k1, "bm25 k1")->default_val(1.2);
    cmd->add_option("--bm25-b", bm25_b, "bm25 b")->default_val(0.75);
    cmd->add_flag("--allow-negative-nidf", allow_negative_nidf,
                  "do not floor nidf at zero");
    cmd->add_flag("--strict-collection-lm", strict_collection_lm,
                  "normalize the collection model by document count");
  }

  ModelConfig to_config() const {
    ModelConfig cfg;
    cfg.dlm_lambda = dlm_lambda;
    cfg.bm25_k1 = bm25_k1;
    cfg.bm25_b = bm25_b;
    cfg.clamp_nidf = !allow_negative_nidf;
    cfg.collection_lm_by_docs = strict_collection_lm;
    return cfg;
  }
};

std::unique_ptr<Tagger> make_tagger(const CorpusOpts& o) {
  if (o.tagged_input) {
    auto tagger = std::make_unique<PretaggedReader>();
    if (!o.stopwords_path.empty())
      tagger->set_stopwords(load_word_list(o.stopwords_path));
    return tagger;
  }
  auto tagger = std::make_unique<LexiconTagger>();
  if (!o.stopwords_path.empty())
    tagger->set_stopwords(load_word_list(o.stopwords_path));
  return tagger;
}

Corpus prepare_corpus(const CorpusOpts& o) {
  Corpus corpus = load_corpus(o.path, format_from_name(o.format), o.experts_path);
  auto tagger = make_tagger(o);
  corpus.preprocess(*tagger);
  return filter_documents(corpus, o.min_tokens);
}

// Query strings go through the same pipeline as corpus text so they meet the
// topic keys in lemma space.
std::vector<std::string> canonical_terms(const std::string& text,
                                         const CorpusOpts& o) {
  LexiconTagger tagger;
  if (!o.stopwords_path.empty())
    tagger.set_stopwords(load_word_list(o.stopwords_path));
  std::vector<std::string> terms;
  for (const auto& sentence : tagger.run(text))
    for (const auto& tok : sentence)
      if (tok.tag != Tag::STOP) terms.push_back(tok.lemma);
  return terms;
}

// ---------------------------------------------------------------- manifests

struct Manifest {
  std::string command;
  std::map<std::string, std::string> inputs;   // name -> path
  std::map<std::string, std::string> options;  // flag -> rendered value
  std::string output;

  std::uint64_t hash() const {
    std::uint64_t h = fnv1a(kCacheVersion);
    h = fnv1a(command, h);
    for (const auto& [name, path] : inputs) {
      h = fnv1a(name, h);
      if (!path.empty()) h = fnv1a(read_file(path), h);
    }
    for (const auto& [key, value] : options) {
      h = fnv1a(key, h);
      h = fnv1a(value, h);
    }
    return h;
  }

  void write(const std::string& path) const {
    json j;
    j["command"] = command;
    j["hash"] = hash_hex(hash());
    j["inputs"] = json::object();
    for (const auto& [name, file] : inputs) {
      if (file.empty()) continue;
      j["inputs"][name] = {{"path", file},
                           {"fnv64", hash_hex(fnv1a(read_file(file)))}};
    }
    j["options"] = options;
    j["output"] = output;
    write_file(path, j.dump(2) + "\n");
  }
};

std::string opt_str(double v) { return format_weight(v); }
std::string opt_str(std::size_t v) { return std::to_string(v); }
std::string opt_str(bool v) { return v ? "true" : "false"; }

// ---------------------------------------------------------------- caching

struct CacheConfig {
  std::string dir;  // empty = caching disabled
  bool enabled() const { return !dir.empty(); }
};

void write_matrix_cache(const WeightMatrix& m, const std::string& base) {
  write_matrix_csv(m, base + ".csv", /*hexfloat=*/true);
  json labels{{"kind", matrix_kind_name(m.kind)},
              {"rows", m.row_labels},
              {"cols", m.col_labels}};
  write_file(base + ".labels.json", labels.dump());
}

WeightMatrix read_matrix_cache(const std::string& base) {
  WeightMatrix sparse = read_matrix_csv(base + ".csv");
  json labels = json::parse(read_file(base + ".labels.json"));

  WeightMatrix m;
  std::string kind = labels.at("kind").get<std::string>();
  m.kind = kind == "TX" ? MatrixKind::TX
                        : kind == "TD" ? MatrixKind::TD : MatrixKind::DX;
  m.row_labels = labels.at("rows").get<std::vector<std::string>>();
  m.col_labels = labels.at("cols").get<std::vector<std::string>>();

  std::unordered_map<std::string, int> row_index, col_index;
  for (std::size_t i = 0; i < m.row_labels.size(); ++i)
    row_index[m.row_labels[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < m.col_labels.size(); ++i)
    col_index[m.col_labels[i]] = static_cast<int>(i);

  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index r = 0; r < sparse.values.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             sparse.values, r);
         it; ++it)
      triplets.emplace_back(row_index.at(sparse.row_labels[r]),
                            col_index.at(sparse.col_labels[it.col()]), it.value());
  m.values.resize(static_cast<Eigen::Index>(m.row_labels.size()),
                  static_cast<Eigen::Index>(m.col_labels.size()));
  m.values.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

struct MatrixBundle {
  WeightMatrix tx, td, dx;
};

// Build (or load from cache) the TX/TD/DX triple for one corpus + topic set.
MatrixBundle obtain_matrices(const Corpus& corpus, const TopicSet& topics,
                             const TermStats& stats, ScorerKind scorer,
                             const ModelConfig& cfg,
                             const std::vector<std::size_t>& rows,
                             const CacheConfig& cache, std::uint64_t key,
                             int jobs) {
  if (cache.enabled()) {
    fs::path dir = fs::path(cache.dir) / hash_hex(key);
    if (fs::exists(dir / "ok")) {
      MatrixBundle b;
      b.tx = read_matrix_cache((dir / "tx").string());
      b.td = read_matrix_cache((dir / "td").string());
      b.dx = read_matrix_cache((dir / "dx").string());
      return b;
    }
  }
  MatrixBundle b;
  b.tx = build_tx(corpus, topics, stats, scorer, cfg, rows, jobs);
  b.td = build_td(corpus, topics, stats, scorer, cfg, rows, jobs);
  b.dx = build_dx(corpus, cfg);
  if (cache.enabled()) {
    fs::path dir = fs::path(cache.dir) / hash_hex(key);
    fs::create_directories(dir);
    write_matrix_cache(b.tx, (dir / "tx").string());
    write_matrix_cache(b.td, (dir / "td").string());
    write_matrix_cache(b.dx, (dir / "dx").string());
    write_file((dir / "ok").string(), "ok\n");  // marker written last
  }
  return b;
}

// ---------------------------------------------------------------- commands

struct TopicRequest {
  TopicId out_id;                    // id used in the output rows
  std::optional<std::size_t> pos;    // position in the topic set
};

std::vector<TopicRequest> resolve_topics(
    const TopicSet& topics, const std::vector<std::string>& explicit_ids,
    bool all_topics, const std::string& query, const std::string& truth_path,
    const std::string& embeddings_path, const CorpusOpts& corpus_opts,
    const Corpus* corpus) {
  std::vector<TopicRequest> requests;
  std::optional<EmbeddingTable> table;
  if (!embeddings_path.empty()) table = load_embeddings(embeddings_path);

  auto match = [&](const std::string& text) -> std::optional<std::size_t> {
    auto terms = canonical_terms(text, corpus_opts);
    if (terms.empty()) return std::nullopt;
    std::string key;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) key.push_back(' ');
      key += terms[i];
    }
    auto exact = topics.key_to_pos.find(key);
    if (exact != topics.key_to_pos.end()) return exact->second;
    if (!table) return std::nullopt;
    auto [id, sim] = match_topic(terms, topics, *table);
    return topics.pos_of_id(id);
  };

  if (all_topics) {
    for (std::size_t i = 0; i < topics.size(); ++i)
      requests.push_back({topics.ids[i], i});
    return requests;
  }
  for (const auto& id : explicit_ids) requests.push_back({id, topics.pos_of_id(id)});
  if (!query.empty()) {
    auto pos = match(query);
    if (!pos)
      throw UnknownTopicError("query matches no topic: " + query +
                              " (supply --embeddings for soft matching)");
    requests.push_back({topics.ids[*pos], *pos});
  }
  if (!truth_path.empty()) {
    GroundTruth truth = load_ground_truth(truth_path, corpus);
    for (const auto& topic : truth.topic_ids)
      requests.push_back({topic, match(truth.labels.at(topic))});
  }
  if (requests.empty())
    throw Error("no topics requested: use --topic, --all-topics, --query or --truth");
  return requests;
}

struct RankedRows {
  std::vector<std::string> lines;  // csv body lines in request order
};

void write_rankings_csv(const std::vector<std::vector<std::string>>& per_topic,
                        const std::string& path) {
  std::string out = "topic_id,rank,expert_id,score\n";
  for (const auto& lines : per_topic)
    for (const auto& line : lines) {
      out += line;
      out.push_back('\n');
    }
  write_file(path, out);
}

int run_rank(const CorpusOpts& corpus_opts, const ExtractOpts& extract_opts,
             const WeightOpts& weight_opts, const std::string& topics_path,
             const std::string& model_name,
             const std::vector<std::string>& topic_ids, bool all_topics,
             const std::string& query, const std::string& truth_path,
             const std::string& embeddings_path, double lambda_x, double lambda_d,
             bool lambda_x_set, bool lambda_d_set, int iterations,
             const std::string& norm_name, int adt_path_len, std::size_t limit,
             int jobs, const CacheConfig& cache, const std::string& out_path,
             bool diagnostics) {
  Model model = model_from_name(model_name);
  NormPolicy norm = norm_name == "sum-sqrt" ? NormPolicy::SumSqrt : NormPolicy::L2;

  Corpus corpus = prepare_corpus(corpus_opts);
  TopicSet topics = topics_path.empty()
                        ? build_topic_set(corpus, extract_opts.to_options(), jobs)
                        : load_topics(topics_path);
  TermStats stats = build_term_stats(corpus, topics, jobs);
  ModelConfig cfg = weight_opts.to_config();

  auto requests =
      resolve_topics(topics, topic_ids, all_topics, query, truth_path,
                     embeddings_path, corpus_opts, &corpus);

  std::vector<std::size_t> rows;
  for (const auto& r : requests)
    if (r.pos) rows.push_back(*r.pos);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  // model-specific lambda defaults; explicit flags always win
  PropagationConfig pc;
  pc.iterations = iterations;
  pc.norm = norm;
  if (model == Model::CoHits) {
    pc.variant = PropagationVariant::CoHits;
    pc.lambda_x = lambda_x_set ? lambda_x : 1.0;
    pc.lambda_d = lambda_d_set ? lambda_d : 1.0;
  } else {
    pc.variant = PropagationVariant::MuCoHits;
    pc.lambda_x = lambda_x_set ? lambda_x : 1.0;
    pc.lambda_d = lambda_d_set ? lambda_d : 0.7;
  }

  ScorerKind scorer = ScorerKind::Ntfidf;
  if (model == Model::Tfidf) scorer = ScorerKind::Tfidf;
  if (model == Model::Dlm) scorer = ScorerKind::Dlm;
  if (model == Model::Wiser) scorer = ScorerKind::Wiser;

  Manifest manifest;
  manifest.command = "rank";
  manifest.inputs = {{"corpus", corpus_opts.path},
                     {"experts", corpus_opts.experts_path},
                     {"stopwords", corpus_opts.stopwords_path},
                     {"topics", topics_path},
                     {"truth", truth_path},
                     {"embeddings", embeddings_path}};
  manifest.options = {{"model", model_name},
                      {"format", corpus_opts.format},
                      {"tagged-input", opt_str(corpus_opts.tagged_input)},
                      {"min-tokens", opt_str(corpus_opts.min_tokens)},
                      {"max-len", opt_str(extract_opts.max_len)},
                      {"mixed-modifiers", opt_str(extract_opts.mixed_modifiers)},
                      {"subspans", extract_opts.subspans},
                      {"lambda-x", opt_str(pc.lambda_x)},
                      {"lambda-d", opt_str(pc.lambda_d)},
                      {"k", std::to_string(pc.iterations)},
                      {"norm", norm_name},
                      {"dlm-lambda", opt_str(weight_opts.dlm_lambda)},
                      {"bm25-k1", opt_str(weight_opts.bm25_k1)},
                      {"bm25-b", opt_str(weight_opts.bm25_b)},
                      {"allow-negative-nidf", opt_str(weight_opts.allow_negative_nidf)},
                      {"strict-collection-lm", opt_str(weight_opts.strict_collection_lm)},
                      {"adt-path-len", std::to_string(adt_path_len)},
                      {"limit", opt_str(limit)},
                      {"scorer", scorer_kind_name(scorer)}};
  manifest.output = out_path;
  manifest.write(out_path + ".manifest.json");

  // the cache key ignores presentation-only options (limit, out path)
  Manifest cache_key = manifest;
  cache_key.options.erase("limit");
  cache_key.inputs.erase("truth");
  cache_key.inputs.erase("embeddings");
  {
    std::string row_sig;
    for (std::size_t r : rows) {
      row_sig += topics.ids[r];
      row_sig.push_back(' ');
    }
    cache_key.options["rows"] = hash_hex(fnv1a(row_sig));
  }

  MatrixBundle matrices;
  bool need_tx = model != Model::Adt && model != Model::RepModel;
  bool need_graph = model == Model::ExpFinder || model == Model::CoHits ||
                    model == Model::RepModel || model == Model::Adt;
  matrices = obtain_matrices(corpus, topics, stats, scorer, cfg, rows, cache,
                             cache_key.hash(), jobs);

  Ecg ecg;
  if (need_graph) ecg = build_ecg(corpus, matrices.dx);

  std::unordered_map<std::string, std::size_t> tx_row_of, td_row_of;
  for (std::size_t i = 0; i < matrices.tx.row_labels.size(); ++i)
    tx_row_of[matrices.tx.row_labels[i]] = i;
  for (std::size_t i = 0; i < matrices.td.row_labels.size(); ++i)
    td_row_of[matrices.td.row_labels[i]] = i;

  auto dense_row = [](const WeightMatrix& m, std::size_t row) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m.values.cols());
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             m.values, static_cast<Eigen::Index>(row));
         it; ++it)
      v[it.col()] = it.value();
    return v;
  };

  std::vector<std::vector<std::string>> outputs(requests.size());
  parallel_for(requests.size(), jobs, [&](std::size_t i) {
    const auto& request = requests[i];
    if (!request.pos) return;  // no matching phrase: empty ranking
    const TopicId& topic_id = topics.ids[*request.pos];

    Eigen::VectorXd authority;
    switch (model) {
      case Model::ExpFinder:
      case Model::CoHits: {
        Eigen::VectorXd a0 = dense_row(matrices.tx, tx_row_of.at(topic_id));
        Eigen::VectorXd h0 = dense_row(matrices.td, td_row_of.at(topic_id));
        IterationObserver observer;
        if (diagnostics && requests.size() == 1) {
          auto prev_a = std::make_shared<Eigen::VectorXd>();
          auto prev_h = std::make_shared<Eigen::VectorXd>();
          observer = [prev_a, prev_h, &request](const ScoreState& st) {
            double da = prev_a->size() ? (st.authority - *prev_a).lpNorm<1>()
                                       : st.authority.lpNorm<1>();
            double dh = prev_h->size() ? (st.hub - *prev_h).lpNorm<1>()
                                       : st.hub.lpNorm<1>();
            std::cerr << request.out_id << " iteration " << st.iteration
                      << ": |dA|_1=" << format_weight(da)
                      << " |dH|_1=" << format_weight(dh) << "\n";
            *prev_a = st.authority;
            *prev_h = st.hub;
          };
        }
        authority =
            propagate_state(ecg, a0, h0, a0, h0, pc, observer).authority;
        break;
      }
      case Model::Nvsm:
      case Model::Tfidf:
      case Model::Dlm:
      case Model::Wiser:
        authority = dense_row(matrices.tx, tx_row_of.at(topic_id));
        break;
      case Model::Adt: {
        AdtOptions adt;
        adt.max_path_len = adt_path_len;
        authority = adt_scores(td_row_of.at(topic_id), corpus, matrices.td,
                               matrices.dx, adt);
        break;
      }
      case Model::RepModel:
        authority = repmodel_scores(topics.phrases[*request.pos], corpus, stats,
                                    ecg, {});
        break;
    }

    ScoreState st;
    st.authority = std::move(authority);
    st.hub = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(corpus.documents.size()));
    auto ranked = rank_experts(st, corpus.experts, limit);
    auto& lines = outputs[i];
    lines.reserve(ranked.size());
    for (std::size_t r = 0; r < ranked.size(); ++r) {
      std::string line = csv_field(request.out_id);
      line.push_back(',');
      line += std::to_string(r + 1);
      line.push_back(',');
      line += csv_field(ranked[r].first);
      line.push_back(',');
      line += format_weight(ranked[r].second);
      lines.push_back(std::move(line));
    }
  });
  (void)need_tx;

  write_rankings_csv(outputs, out_path);
  return 0;
}

int run_extract(const CorpusOpts& corpus_opts, const ExtractOpts& extract_opts,
                int jobs, const std::string& out_path) {
  Manifest manifest;
  manifest.command = "extract";
  manifest.inputs = {{"corpus", corpus_opts.path},
                     {"experts", corpus_opts.experts_path},
                     {"stopwords", corpus_opts.stopwords_path}};
  manifest.options = {{"format", corpus_opts.format},
                      {"tagged-input", opt_str(corpus_opts.tagged_input)},
                      {"min-tokens", opt_str(corpus_opts.min_tokens)},
                      {"max-len", opt_str(extract_opts.max_len)},
                      {"mixed-modifiers", opt_str(extract_opts.mixed_modifiers)},
                      {"subspans", extract_opts.subspans}};
  manifest.output = out_path;
  manifest.write(out_path + ".manifest.json");

  Corpus corpus = prepare_corpus(corpus_opts);
  TopicSet topics = build_topic_set(corpus, extract_opts.to_options(), jobs);
  save_topics(topics, out_path);
  return 0;
}

int run_matrices(const CorpusOpts& corpus_opts, const ExtractOpts& extract_opts,
                 const WeightOpts& weight_opts, const std::string& topics_path,
                 const std::string& scorer_name, int jobs,
                 const CacheConfig& cache, const std::string& out_dir) {
  ScorerKind scorer = scorer_kind_from_name(scorer_name);
  ModelConfig cfg = weight_opts.to_config();

  fs::create_directories(out_dir);
  Manifest manifest;
  manifest.command = "matrices";
  manifest.inputs = {{"corpus", corpus_opts.path},
                     {"experts", corpus_opts.experts_path},
                     {"stopwords", corpus_opts.stopwords_path},
                     {"topics", topics_path}};
  manifest.options = {{"scorer", scorer_name},
                      {"format", corpus_opts.format},
                      {"tagged-input", opt_str(corpus_opts.tagged_input)},
                      {"min-tokens", opt_str(corpus_opts.min_tokens)},
                      {"max-len", opt_str(extract_opts.max_len)},
                      {"mixed-modifiers", opt_str(extract_opts.mixed_modifiers)},
                      {"subspans", extract_opts.subspans},
                      {"dlm-lambda", opt_str(weight_opts.dlm_lambda)},
                      {"bm25-k1", opt_str(weight_opts.bm25_k1)},
                      {"bm25-b", opt_str(weight_opts.bm25_b)},
                      {"allow-negative-nidf", opt_str(weight_opts.allow_negative_nidf)},
                      {"strict-collection-lm", opt_str(weight_opts.strict_collection_lm)},
                      {"rows", "all"}};
  manifest.output = out_dir;
  manifest.write((fs::path(out_dir) / "manifest.json").string());

  Corpus corpus = prepare_corpus(corpus_opts);
  TopicSet topics = topics_path.empty()
                        ? build_topic_set(corpus, extract_opts.to_options(), jobs)
                        : load_topics(topics_path);
  TermStats stats = build_term_stats(corpus, topics, jobs);

  MatrixBundle b = obtain_matrices(corpus, topics, stats, scorer, cfg, {}, cache,
                                   manifest.hash(), jobs);
  write_matrix_csv(b.tx, (fs::path(out_dir) / "tx.csv").string());
  write_matrix_csv(b.td, (fs::path(out_dir) / "td.csv").string());
  write_matrix_csv(b.dx, (fs::path(out_dir) / "dx.csv").string());
  return 0;
}

int run_evaluate(const std::string& rankings_path, const std::string& truth_path,
                 int ap_n, const std::string& n_values_text,
                 const std::string& ap_divisor, const std::string& out_path) {
  EvalConfig cfg;
  cfg.ap_n = ap_n;
  cfg.ap_divisor = ap_divisor == "min" ? ApDivisor::MinWithCutoff
                                       : ApDivisor::RelevantCount;
  if (!n_values_text.empty()) {
    cfg.n_values.clear();
    std::stringstream in(n_values_text);
    std::string field;
    while (std::getline(in, field, ','))
      if (!field.empty()) cfg.n_values.push_back(std::stoi(field));
  }

  Manifest manifest;
  manifest.command = "evaluate";
  manifest.inputs = {{"rankings", rankings_path}, {"truth", truth_path}};
  manifest.options = {{"ap-n", std::to_string(ap_n)},
                      {"n-values", n_values_text.empty() ? "10,15,20,25,30"
                                                         : n_values_text},
                      {"ap-divisor", ap_divisor}};
  manifest.output = out_path;
  manifest.write(out_path + ".manifest.json");

  GroundTruth truth = load_ground_truth(truth_path);

  auto lines = read_lines(rankings_path);
  if (lines.empty() || lines[0] != "topic_id,rank,expert_id,score")
    throw ParseError("rankings header must be topic_id,rank,expert_id,score");
  std::map<TopicId, std::vector<std::pair<int, ExpertId>>> raw;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_csv_row(lines[i]);
    if (fields.size() != 4)
      throw ParseError("line " + std::to_string(i + 1) + ": expected 4 fields");
    raw[fields[0]].emplace_back(std::stoi(fields[1]), fields[2]);
  }
  std::map<TopicId, std::vector<ExpertId>> rankings;
  for (auto& [topic, entries] : raw) {
    std::sort(entries.begin(), entries.end());
    auto& list = rankings[topic];
    for (auto& [rank, expert] : entries) list.push_back(expert);
  }

  EvalReport report = evaluate(rankings, truth, cfg);
  write_file(out_path, report.to_json() + "\n");
  return 0;
}

int run_sweep(const std::string& datasets_path, const CorpusOpts& single_corpus,
              const ExtractOpts& extract_opts, const WeightOpts& weight_opts,
              const std::string& single_topics, const std::string& single_truth,
              const std::string& single_embeddings, const std::string& grid_text,
              const std::string& variant_name, int iterations, int jobs,
              const CacheConfig& cache, const std::string& out_path) {
  SweepConfig cfg;
  cfg.iterations = iterations;
  cfg.variant = variant_name == "cohits" ? PropagationVariant::CoHits
                                         : PropagationVariant::MuCoHits;
  cfg.jobs = jobs;
  if (!grid_text.empty()) {
    cfg.grid.clear();
    std::stringstream in(grid_text);
    std::string field;
    while (std::getline(in, field, ','))
      if (!field.empty()) cfg.grid.push_back(std::stod(field));
  }

  struct DatasetSpec {
    std::string name;
    CorpusOpts corpus;
    std::string topics, truth, embeddings;
  };
  std::vector<DatasetSpec> specs;
  if (!datasets_path.empty()) {
    json j = json::parse(read_file(datasets_path));
    if (!j.is_array()) throw ParseError("datasets manifest must be a JSON array");
    for (const auto& entry : j) {
      DatasetSpec spec;
      spec.name = entry.at("name").get<std::string>();
      spec.corpus.path = entry.at("corpus").get<std::string>();
      spec.corpus.format = entry.value("format", "jsonl");
      spec.corpus.experts_path = entry.value("experts", "");
      spec.corpus.stopwords_path = entry.value("stopwords", "");
      spec.corpus.tagged_input = entry.value("tagged_input", false);
      spec.corpus.min_tokens = entry.value("min_tokens", std::size_t{5});
      spec.topics = entry.value("topics", "");
      spec.truth = entry.at("truth").get<std::string>();
      spec.embeddings = entry.value("embeddings", "");
      specs.push_back(std::move(spec));
    }
  } else {
    DatasetSpec spec;
    spec.name = "default";
    spec.corpus = single_corpus;
    spec.topics = single_topics;
    spec.truth = single_truth;
    spec.embeddings = single_embeddings;
    specs.push_back(std::move(spec));
  }

  Manifest manifest;
  manifest.command = "sweep";
  for (const auto& spec : specs) {
    manifest.inputs["corpus:" + spec.name] = spec.corpus.path;
    manifest.inputs["truth:" + spec.name] = spec.truth;
    if (!spec.topics.empty()) manifest.inputs["topics:" + spec.name] = spec.topics;
  }
  manifest.options = {{"grid", grid_text.empty() ? "0..1 step 0.1" : grid_text},
                      {"variant", variant_name},
                      {"k", std::to_string(iterations)}};
  manifest.output = out_path;
  manifest.write(out_path + ".manifest.json");

  std::vector<SweepDataset> datasets;
  for (const auto& spec : specs) {
    Corpus corpus = prepare_corpus(spec.corpus);
    TopicSet topics = spec.topics.empty()
                          ? build_topic_set(corpus, extract_opts.to_options(), jobs)
                          : load_topics(spec.topics);
    TermStats stats = build_term_stats(corpus, topics, jobs);
    GroundTruth truth = load_ground_truth(spec.truth, &corpus);

    std::optional<EmbeddingTable> table;
    if (!spec.embeddings.empty()) table = load_embeddings(spec.embeddings);

    SweepDataset ds;
    ds.name = spec.name;
    ds.truth = truth;
    std::vector<std::size_t> rows;
    for (const auto& topic : truth.topic_ids) {
      auto terms = canonical_terms(truth.labels.at(topic), spec.corpus);
      if (terms.empty()) continue;
      std::string key;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) key.push_back(' ');
        key += terms[i];
      }
      std::optional<std::size_t> pos;
      auto exact = topics.key_to_pos.find(key);
      if (exact != topics.key_to_pos.end()) {
        pos = exact->second;
      } else if (table) {
        try {
          auto [id, sim] = match_topic(terms, topics, *table);
          pos = topics.pos_of_id(id);
        } catch (const UnknownTermError&) {
        }
      }
      if (pos) {
        ds.topic_rows[topic] = topics.ids[*pos];
        rows.push_back(*pos);
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    Manifest dataset_key;
    dataset_key.command = "sweep-matrices";
    dataset_key.inputs = {{"corpus", spec.corpus.path},
                          {"experts", spec.corpus.experts_path},
                          {"stopwords", spec.corpus.stopwords_path},
                          {"topics", spec.topics},
                          {"truth", spec.truth}};
    dataset_key.options = {{"scorer", "ntfidf"},
                           {"format", spec.corpus.format},
                           {"tagged-input", opt_str(spec.corpus.tagged_input)},
                           {"min-tokens", opt_str(spec.corpus.min_tokens)},
                           {"max-len", opt_str(extract_opts.max_len)},
                           {"mixed-modifiers", opt_str(extract_opts.mixed_modifiers)},
                           {"subspans", extract_opts.subspans}};

    MatrixBundle b =
        obtain_matrices(corpus, topics, stats, ScorerKind::Ntfidf,
                        weight_opts.to_config(), rows, cache,
                        dataset_key.hash(), jobs);
    ds.tx = std::move(b.tx);
    ds.td = std::move(b.td);
    ds.ecg = build_ecg(corpus, b.dx);
    datasets.push_back(std::move(ds));
  }

  SweepResult result = sweep_lambdas(datasets, cfg);
  write_sweep_csv(result, out_path);
  return 0;
}

int run_match_topic(const std::string& query, const std::string& topics_path,
                    const std::string& embeddings_path,
                    const CorpusOpts& corpus_opts, const std::string& out_path) {
  TopicSet topics = load_topics(topics_path);
  EmbeddingTable table;
  if (!embeddings_path.empty()) table = load_embeddings(embeddings_path);
  auto terms = canonical_terms(query, corpus_opts);
  if (terms.empty()) throw UnknownTermError("query is all stopwords: " + query);
  auto [id, sim] = match_topic(terms, topics, table);
  std::string line = id + "\t" + topics.phrase_of(id).key + "\t" +
                     format_weight(sim) + "\n";
  if (out_path.empty())
    std::cout << line;
  else
    write_file(out_path, line);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expert finding over document corpora"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags override");

  CacheConfig cache;
  app.add_option("--cache-dir", cache.dir,
                 "matrix artifact cache directory (enables caching)")
      ->envname("EXPERTRANK_CACHE_DIR");

  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads")->default_val(1);

  // extract
  auto* cmd_extract = app.add_subcommand("extract", "extract topic phrases");
  cmd_extract->fallthrough();
  CorpusOpts extract_corpus;
  ExtractOpts extract_extract;
  std::string extract_out;
  extract_corpus.attach(cmd_extract);
  extract_extract.attach(cmd_extract);
  cmd_extract->add_option("--out", extract_out, "topics tsv")->required();

  // matrices
  auto* cmd_matrices = app.add_subcommand("matrices", "build TX/TD/DX matrices");
  cmd_matrices->fallthrough();
  CorpusOpts matrices_corpus;
  ExtractOpts matrices_extract;
  WeightOpts matrices_weight;
  std::string matrices_topics, matrices_scorer = "ntfidf", matrices_out;
  matrices_corpus.attach(cmd_matrices);
  matrices_extract.attach(cmd_matrices);
  matrices_weight.attach(cmd_matrices);
  cmd_matrices->add_option("--topics", matrices_topics, "topics tsv (else extract)");
  cmd_matrices->add_option("--scorer", matrices_scorer,
                           "ntfidf, tfidf, dlm or wiser")
      ->default_val("ntfidf");
  cmd_matrices->add_option("--out", matrices_out, "output directory")->required();

  // rank
  auto* cmd_rank = app.add_subcommand("rank", "rank experts for topics");
  cmd_rank->fallthrough();
  CorpusOpts rank_corpus;
  ExtractOpts rank_extract;
  WeightOpts rank_weight;
  std::string rank_topics, rank_model = "expfinder", rank_query, rank_truth,
              rank_embeddings, rank_norm = "l2", rank_out;
  std::vector<std::string> rank_topic_ids;
  bool rank_all = false, rank_diagnostics = false;
  double rank_lambda_x = 1.0, rank_lambda_d = 0.7;
  int rank_k = 5, rank_adt_len = 1;
  std::size_t rank_limit = 0;
  rank_corpus.attach(cmd_rank);
  rank_extract.attach(cmd_rank);
  rank_weight.attach(cmd_rank);
  cmd_rank->add_option("--topics", rank_topics, "topics tsv (else extract)");
  cmd_rank->add_option("--model", rank_model,
                       "expfinder, cohits, nvsm, tfidf, dlm, wiser, adt, repmodel")
      ->default_val("expfinder");
  cmd_rank->add_option("--topic", rank_topic_ids, "topic id (repeatable)");
  cmd_rank->add_flag("--all-topics", rank_all, "rank every topic in the set");
  cmd_rank->add_option("--query", rank_query, "free-text topic query");
  cmd_rank->add_option("--truth", rank_truth, "ground-truth csv naming the topics");
  cmd_rank->add_option("--embeddings", rank_embeddings, "term embedding table");
  auto* opt_lx = cmd_rank->add_option("--lambda-x", rank_lambda_x,
                                      "authority propagation weight");
  auto* opt_ld = cmd_rank->add_option("--lambda-d", rank_lambda_d,
                                      "hub propagation weight");
  cmd_rank->add_option("--k", rank_k, "propagation iterations")->default_val(5);
  cmd_rank->add_option("--norm", rank_norm, "l2 or sum-sqrt")
      ->default_val("l2")
      ->check(CLI::IsMember({"l2", "sum-sqrt"}));
  cmd_rank->add_option("--adt-path-len", rank_adt_len,
                       "association path budget for the adt model")
      ->default_val(1);
  cmd_rank->add_option("--limit", rank_limit, "ranking depth, 0 = all")
      ->default_val(0);
  cmd_rank->add_flag("--diagnostics", rank_diagnostics,
                     "print per-iteration L1 deltas (single topic only)");
  cmd_rank->add_option("--out", rank_out, "rankings csv")->required();

  // evaluate
  auto* cmd_eval = app.add_subcommand("evaluate", "score rankings against truth");
  cmd_eval->fallthrough();
  std::string eval_rankings, eval_truth, eval_n_values, eval_divisor = "rt",
              eval_out;
  int eval_ap_n = 30;
  cmd_eval->add_option("--rankings", eval_rankings, "rankings csv")->required();
  cmd_eval->add_option("--truth", eval_truth, "ground-truth csv")->required();
  cmd_eval->add_option("--ap-n", eval_ap_n, "AP cutoff")->default_val(30);
  cmd_eval->add_option("--n-values", eval_n_values,
                       "comma-separated P@n cutoffs (default 10,15,20,25,30)");
  cmd_eval->add_option("--ap-divisor", eval_divisor,
                       "rt (relevant count) or min (min(n, relevant count))")
      ->default_val("rt")
      ->check(CLI::IsMember({"rt", "min"}));
  cmd_eval->add_option("--out", eval_out, "report json")->required();

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "grid-search lambda pairs");
  cmd_sweep->fallthrough();
  CorpusOpts sweep_corpus;
  ExtractOpts sweep_extract;
  WeightOpts sweep_weight;
  std::string sweep_datasets, sweep_topics, sweep_truth, sweep_embeddings,
      sweep_grid, sweep_variant = "mu-cohits", sweep_out;
  int sweep_k = 5;
  cmd_sweep->add_option("--datasets", sweep_datasets,
                        "JSON array of {name, corpus, truth, ...}");
  cmd_sweep->add_option("--corpus", sweep_corpus.path, "single-dataset corpus");
  cmd_sweep->add_option("--format", sweep_corpus.format, "corpus format")
      ->default_val("jsonl");
  cmd_sweep->add_option("--experts", sweep_corpus.experts_path, "expert sidecar");
  cmd_sweep->add_option("--stopwords", sweep_corpus.stopwords_path,
                        "stopword list");
  cmd_sweep->add_flag("--tagged-input", sweep_corpus.tagged_input,
                      "pre-tagged corpus text");
  cmd_sweep->add_option("--min-tokens", sweep_corpus.min_tokens,
                        "document filter threshold")
      ->default_val(5);
  sweep_extract.attach(cmd_sweep);
  sweep_weight.attach(cmd_sweep);
  cmd_sweep->add_option("--topics", sweep_topics, "topics tsv (else extract)");
  cmd_sweep->add_option("--truth", sweep_truth, "single-dataset truth csv");
  cmd_sweep->add_option("--embeddings", sweep_embeddings, "term embedding table");
  cmd_sweep->add_option("--grid", sweep_grid, "comma-separated lambda values");
  cmd_sweep->add_option("--variant", sweep_variant, "mu-cohits or cohits")
      ->default_val("mu-cohits")
      ->check(CLI::IsMember({"mu-cohits", "cohits"}));
  cmd_sweep->add_option("--k", sweep_k, "propagation iterations")->default_val(5);
  cmd_sweep->add_option("--out", sweep_out, "sweep csv")->required();

  // match-topic
  auto* cmd_match = app.add_subcommand("match-topic", "map a query to a topic");
  cmd_match->fallthrough();
  CorpusOpts match_corpus;  // only stopwords matter here
  std::string match_query, match_topics, match_embeddings, match_out;
  cmd_match->add_option("--query", match_query, "free-text query")->required();
  cmd_match->add_option("--topics", match_topics, "topics tsv")->required();
  cmd_match->add_option("--embeddings", match_embeddings,
                        "term embedding table (exact matches work without one)");
  cmd_match->add_option("--stopwords", match_corpus.stopwords_path,
                        "stopword list");
  cmd_match->add_option("--out", match_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_extract->parsed())
      return run_extract(extract_corpus, extract_extract, jobs, extract_out);
    if (cmd_matrices->parsed())
      return run_matrices(matrices_corpus, matrices_extract, matrices_weight,
                          matrices_topics, matrices_scorer, jobs, cache,
                          matrices_out);
    if (cmd_rank->parsed())
      return run_rank(rank_corpus, rank_extract, rank_weight, rank_topics,
                      rank_model, rank_topic_ids, rank_all, rank_query,
                      rank_truth, rank_embeddings, rank_lambda_x, rank_lambda_d,
                      opt_lx->count() > 0, opt_ld->count() > 0, rank_k,
                      rank_norm, rank_adt_len, rank_limit, jobs, cache, rank_out,
                      rank_diagnostics);
    if (cmd_eval->parsed())
      return run_evaluate(eval_rankings, eval_truth, eval_ap_n, eval_n_values,
                          eval_divisor, eval_out);
    if (cmd_sweep->parsed())
      return run_sweep(sweep_datasets, sweep_corpus, sweep_extract, sweep_weight,
                       sweep_topics, sweep_truth, sweep_embeddings, sweep_grid,
                       sweep_variant, sweep_k, jobs, cache, sweep_out);
    if (cmd_match->parsed())
      return run_match_topic(match_query, match_topics, match_embeddings,
                             match_corpus, match_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
