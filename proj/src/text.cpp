#include "expertrank/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "expertrank/io.hpp"

namespace expertrank {

std::string_view tag_name(Tag t) {
  switch (t) {
    case Tag::JJ: return "JJ";
    case Tag::VBN: return "VBN";
    case Tag::VBG: return "VBG";
    case Tag::N: return "N";
    case Tag::OTHER: return "OTHER";
    case Tag::STOP: return "STOP";
  }
  return "N";
}

Tag tag_from_name(std::string_view name) {
  if (name == "JJ") return Tag::JJ;
  if (name == "VBN") return Tag::VBN;
  if (name == "VBG") return Tag::VBG;
  if (name == "N") return Tag::N;
  if (name == "OTHER") return Tag::OTHER;
  if (name == "STOP") return Tag::STOP;
  throw ParseError("unknown tag: " + std::string(name));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

namespace {

bool token_char(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '\'';
}

bool has_alpha(const std::string& s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isalpha(c); });
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Consonants commonly doubled before -ing/-ed (stopped, planned, running).
bool doubling_consonant(char c) {
  switch (c) {
    case 'b': case 'd': case 'g': case 'k': case 'm':
    case 'n': case 'p': case 'r': case 't':
      return true;
    default:
      return false;
  }
}

void repair_doubling(std::string& stem) {
  if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
      doubling_consonant(stem.back())) {
    stem.pop_back();
  }
}

const std::unordered_map<std::string, std::string>& irregular_nouns() {
  static const std::unordered_map<std::string, std::string> table = {
      {"men", "man"},      {"women", "woman"},  {"children", "child"},
      {"people", "person"}, {"feet", "foot"},   {"teeth", "tooth"},
      {"geese", "goose"},  {"mice", "mouse"},   {"criteria", "criterion"},
      {"phenomena", "phenomenon"}, {"indices", "index"}, {"matrices", "matrix"},
      {"vertices", "vertex"}, {"analyses", "analysis"}, {"hypotheses", "hypothesis"},
      {"theses", "thesis"}, {"corpora", "corpus"},
  };
  return table;
}

}  // namespace

std::vector<std::vector<std::string>> split_sentences(std::string_view text) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  std::string token;
  auto flush_token = [&]() {
    if (!token.empty()) {
      current.push_back(token);
      token.clear();
    }
  };
  auto flush_sentence = [&]() {
    flush_token();
    if (!current.empty()) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = text[i];
    if (token_char(c)) {
      token.push_back(static_cast<char>(c));
      continue;
    }
    flush_token();
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 >= text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      flush_sentence();
    }
  }
  flush_sentence();
  return sentences;
}

std::string lemmatize(const std::string& lower, Tag tag) {
  switch (tag) {
    case Tag::N: {
      auto it = irregular_nouns().find(lower);
      if (it != irregular_nouns().end()) return it->second;
      if (ends_with(lower, "ies") && lower.size() > 4)
        return lower.substr(0, lower.size() - 3) + "y";
      if ((ends_with(lower, "sses") || ends_with(lower, "shes") ||
           ends_with(lower, "ches") || ends_with(lower, "xes") ||
           ends_with(lower, "zes")) &&
          lower.size() > 4)
        return lower.substr(0, lower.size() - 2);
      if (ends_with(lower, "oes") && lower.size() > 4)
        return lower.substr(0, lower.size() - 2);
      if (ends_with(lower, "s") && !ends_with(lower, "ss") &&
          !ends_with(lower, "us") && !ends_with(lower, "is") && lower.size() > 3)
        return lower.substr(0, lower.size() - 1);
      return lower;
    }
    case Tag::VBG: {
      if (ends_with(lower, "ing") && lower.size() > 5) {
        std::string stem = lower.substr(0, lower.size() - 3);
        repair_doubling(stem);
        return stem;
      }
      return lower;
    }
    case Tag::VBN: {
      if (ends_with(lower, "ied") && lower.size() > 4)
        return lower.substr(0, lower.size() - 3) + "y";
      if (ends_with(lower, "ed") && lower.size() > 4) {
        std::string stem = lower.substr(0, lower.size() - 2);
        repair_doubling(stem);
        return stem;
      }
      return lower;
    }
    case Tag::JJ:
    case Tag::OTHER:
    case Tag::STOP:
      return lower;
  }
  return lower;
}

namespace {

const char* const kAdjectives[] = {
    "able", "absolute", "abstract", "accurate", "active", "actual", "adaptive",
    "additional", "advanced", "adversarial", "algorithmic", "ambiguous",
    "analytical", "annual", "approximate", "arbitrary", "artificial", "atomic",
    "automatic", "automated", "available", "average", "bad", "basic", "bayesian",
    "best", "big", "binary", "biological", "black", "blue", "brief", "broad",
    "causal", "central", "certain", "cheap", "chemical", "classic", "classical",
    "clean", "clear", "clinical", "cognitive", "cold", "collaborative",
    "collective", "common", "comparable", "comparative", "complete", "complex",
    "compact", "computational", "concurrent", "conditional", "constant",
    "contextual", "continuous", "conventional", "convex", "convolutional",
    "correct", "critical", "cross", "crucial", "current", "dark", "deep",
    "dense", "dependent", "descriptive", "detailed", "deterministic", "difficult",
    "digital", "direct", "discrete", "distinct", "distributional", "diverse",
    "dual", "dynamic", "early", "easy", "economic", "effective", "efficient",
    "electric", "electrical", "electronic", "empirical", "entire", "equal",
    "equivalent", "essential", "exact", "experimental", "explicit", "exponential",
    "external", "false", "fast", "final", "fine", "finite", "first", "flexible",
    "formal", "free", "frequent", "full", "functional", "fundamental", "future",
    "general", "generative", "generic", "genetic", "geometric", "global", "good",
    "gradual", "graphical", "great", "green", "heavy", "heuristic", "hierarchical",
    "high", "hot", "huge", "human", "hybrid", "identical", "important",
    "incremental", "independent", "indirect", "individual", "industrial",
    "inexpensive", "initial", "innovative", "internal", "international",
    "invariant", "inverse", "joint", "key", "large", "last", "late", "latent",
    "lexical", "light", "linear", "linguistic", "local", "logical", "long",
    "low", "main", "major", "manual", "marginal", "mathematical", "maximal",
    "maximum", "mean", "mechanical", "medical", "minimal", "minimum", "minor",
    "mobile", "modern", "modular", "molecular", "multiple", "mutual", "narrow",
    "national", "native", "natural", "necessary", "negative", "neural", "new",
    "nonlinear", "normal", "novel", "numerical", "objective", "official", "old",
    "online", "open", "optimal", "ordinary", "original", "parallel", "partial",
    "particular", "passive", "personal", "physical", "political", "poor",
    "popular", "positive", "possible", "practical", "precise", "preliminary",
    "present", "previous", "primary", "principal", "prior", "private",
    "probabilistic", "procedural", "professional", "prominent", "public", "pure",
    "quadratic", "qualitative", "quantitative", "quick", "random", "rapid",
    "rare", "raw", "real", "recent", "recurrent", "recursive", "red", "regional",
    "regular", "relational", "relative", "relevant", "reliable", "remote",
    "rich", "rigorous", "robust", "rough", "safe", "salient", "scalable",
    "scientific", "second", "secondary", "secure", "semantic", "sensitive",
    "separate", "sequential", "serial", "serious", "several", "sharp", "short",
    "significant", "similar", "simple", "simultaneous", "single", "slow",
    "small", "smart", "smooth", "social", "soft", "sparse", "spatial",
    "special", "specific", "spectral", "stable", "standard", "static",
    "statistical", "stochastic", "strange", "strict", "strong", "structural",
    "subjective", "sufficient", "suitable", "supervised", "symbolic", "symmetric",
    "synthetic", "syntactic", "technical", "temporal", "textual", "theoretical",
    "thermal", "thin", "third", "thorough", "tiny", "topical", "total", "tough",
    "traditional", "transparent", "true", "typical", "ultimate", "uniform",
    "unique", "universal", "unknown", "unsupervised", "urban", "useful", "usual",
    "valid", "variable", "various", "vast", "verbal", "virtual", "visual",
    "vital", "weak", "white", "wide", "wireless", "yellow", "young",
};

// -ing/-ed words that are ordinary nouns or adjectives, not verb forms.
const char* const kNounExceptions[] = {
    "bed", "breed", "building", "ceiling", "creed", "deed", "evening", "feed",
    "feeling", "finding", "greed", "hundred", "kindred", "king", "meeting",
    "morning", "need", "painting", "proceeding", "ring", "sacred", "seed",
    "setting", "shed", "sibling", "sled", "speed", "spring", "string", "thing",
    "weed", "wing",
};

const char* const kStopwords[] = {
    "a", "about", "above", "across", "after", "afterwards", "again", "against",
    "all", "almost", "alone", "along", "already", "also", "although", "always",
    "am", "among", "amongst", "an", "and", "another", "any", "anyhow", "anyone",
    "anything", "anywhere", "are", "around", "as", "at", "be", "became",
    "because", "become", "becomes", "becoming", "been", "before", "beforehand",
    "behind", "being", "below", "beside", "besides", "between", "beyond",
    "both", "but", "by", "can", "cannot", "could", "did", "do", "does", "doing",
    "done", "down", "during", "each", "either", "else", "elsewhere", "enough",
    "etc", "even", "ever", "every", "everyone", "everything", "everywhere",
    "except", "few", "for", "former", "formerly", "from", "further", "had",
    "has", "have", "having", "he", "hence", "her", "here", "hereafter",
    "hereby", "herein", "hereupon", "hers", "herself", "him", "himself", "his",
    "how", "however", "i", "ie", "if", "in", "indeed", "instead", "into", "is",
    "it", "its", "itself", "just", "last", "latter", "latterly", "least",
    "less", "let", "like", "likely", "may", "me", "meanwhile", "might", "mine",
    "more", "moreover", "most", "mostly", "much", "must", "my", "myself",
    "namely", "near", "neither", "never", "nevertheless", "next", "no",
    "nobody", "none", "noone", "nor", "not", "nothing", "now", "nowhere", "of",
    "off", "often", "on", "once", "one", "only", "onto", "or", "other",
    "others", "otherwise", "our", "ours", "ourselves", "out", "over", "own",
    "per", "perhaps", "rather", "re", "same", "seem", "seemed", "seeming",
    "seems", "she", "should", "since", "so", "some", "somehow", "someone",
    "something", "sometime", "sometimes", "somewhere", "still", "such", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then", "thence",
    "there", "thereafter", "thereby", "therefore", "therein", "thereupon",
    "these", "they", "this", "those", "though", "through", "throughout",
    "thru", "thus", "to", "together", "too", "toward", "towards", "under",
    "until", "up", "upon", "us", "very", "via", "was", "we", "well", "were",
    "what", "whatever", "when", "whence", "whenever", "where", "whereafter",
    "whereas", "whereby", "wherein", "whereupon", "wherever", "whether",
    "which", "while", "whither", "who", "whoever", "whole", "whom", "whose",
    "why", "will", "with", "within", "without", "would", "yet", "you", "your",
    "yours", "yourself", "yourselves",
};

}  // namespace

const std::vector<std::string>& bundled_stopwords() {
  static const std::vector<std::string> words(std::begin(kStopwords),
                                              std::end(kStopwords));
  return words;
}

std::vector<std::string> load_word_list(const std::string& path) {
  std::vector<std::string> words;
  for (const auto& line : read_lines(path)) {
    std::string w = to_lower(line);
    while (!w.empty() && std::isspace(static_cast<unsigned char>(w.back()))) w.pop_back();
    std::size_t start = 0;
    while (start < w.size() && std::isspace(static_cast<unsigned char>(w[start]))) ++start;
    w = w.substr(start);
    if (!w.empty()) words.push_back(w);
  }
  return words;
}

LexiconTagger::LexiconTagger() {
  for (const auto& w : bundled_stopwords()) stopwords_.insert(w);
  for (const char* w : kAdjectives) adjectives_.insert(w);
  for (const char* w : kNounExceptions) noun_exceptions_.insert(w);
}

void LexiconTagger::set_stopwords(const std::vector<std::string>& words) {
  stopwords_.clear();
  for (const auto& w : words) stopwords_.insert(to_lower(w));
}

Tag LexiconTagger::classify(const std::string& lower) const {
  if (stopwords_.count(lower)) return Tag::STOP;
  if (!has_alpha(lower)) return Tag::OTHER;
  if (adjectives_.count(lower)) return Tag::JJ;
  if (noun_exceptions_.count(lower)) return Tag::N;
  if (ends_with(lower, "ing") && lower.size() > 4) return Tag::VBG;
  if (ends_with(lower, "ed") && lower.size() > 3) return Tag::VBN;
  return Tag::N;
}

std::vector<TaggedSentence> LexiconTagger::run(std::string_view text) const {
  std::vector<TaggedSentence> result;
  for (const auto& sentence : split_sentences(text)) {
    TaggedSentence tagged;
    tagged.reserve(sentence.size());
    for (const auto& surface : sentence) {
      std::string lower = to_lower(surface);
      Tag tag = classify(lower);
      tagged.push_back({surface, lemmatize(lower, tag), tag});
    }
    if (!tagged.empty()) result.push_back(std::move(tagged));
  }
  return result;
}

PretaggedReader::PretaggedReader() {
  for (const auto& w : bundled_stopwords()) stopwords_.insert(w);
}

void PretaggedReader::set_stopwords(const std::vector<std::string>& words) {
  stopwords_.clear();
  for (const auto& w : words) stopwords_.insert(to_lower(w));
}

namespace {

Tag fold_external_tag(std::string_view raw) {
  if (raw == "N" || raw == "NN" || raw == "NNS" || raw == "NNP" || raw == "NNPS")
    return Tag::N;
  if (raw == "JJ" || raw == "JJR" || raw == "JJS") return Tag::JJ;
  if (raw == "VBG") return Tag::VBG;
  if (raw == "VBN") return Tag::VBN;
  if (raw == "STOP") return Tag::STOP;
  return Tag::OTHER;
}

}  // namespace

std::vector<TaggedSentence> PretaggedReader::run(std::string_view text) const {
  std::vector<TaggedSentence> result;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    TaggedSentence tagged;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      std::string_view token = line.substr(i, j - i);
      i = j;
      if (token == ".") {  // bare separator, e.g. the title/abstract joiner
        if (!tagged.empty()) result.push_back(std::move(tagged));
        tagged.clear();
        continue;
      }
      std::size_t slash = token.rfind('/');
      if (slash == std::string_view::npos || slash == 0 || slash + 1 >= token.size())
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected surface/TAG, got '" + std::string(token) + "'");
      std::string surface(token.substr(0, slash));
      std::string lower = to_lower(surface);
      Tag tag = stopwords_.count(lower) ? Tag::STOP
                                        : fold_external_tag(token.substr(slash + 1));
      tagged.push_back({surface, lemmatize(lower, tag), tag});
    }
    if (!tagged.empty()) result.push_back(std::move(tagged));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return result;
}

std::vector<TaggedSentence> preprocess(std::string_view text, const Tagger& tagger) {
  return tagger.run(text);
}

}  // namespace expertrank
