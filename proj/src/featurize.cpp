#include "tweetlex/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tweetlex/text_util.hpp"

namespace tweetlex {

EmotionLexicon load_emotion_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("emotion lexicon: cannot open " + path);
  EmotionLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string word, emotion, flag;
    if (!std::getline(ss, word, '\t') || !std::getline(ss, emotion, '\t') ||
        !std::getline(ss, flag))
      continue;  // tolerate malformed rows; unknown words contribute nothing
    if (flag != "1") continue;
    for (std::size_t e = 0; e < kEmotions.size(); ++e) {
      if (emotion == kEmotions[e]) {
        lex.bits[ascii_lower_copy(word)] |= static_cast<std::uint8_t>(1u << e);
        break;
      }
    }
  }
  return lex;
}

namespace {

const char* const kTagNoun = "noun";
const char* const kTagVerb = "verb";
const char* const kTagAdjective = "adjective";
const char* const kTagAdverb = "adverb";
const char* const kTagPronoun = "pronoun";
const char* const kTagDeterminer = "determiner";
const char* const kTagPreposition = "preposition";
const char* const kTagConjunction = "conjunction";

bool ends_with(const std::string& s, const char* suffix) {
  const std::size_t n = std::char_traits<char>::length(suffix);
  return s.size() > n && s.compare(s.size() - n, n, suffix) == 0;
}

}  // namespace

RulePosTagger::RulePosTagger()
    : tagset_{kTagNoun,    kTagVerb,       kTagAdjective,   kTagAdverb,
              kTagPronoun, kTagDeterminer, kTagPreposition, kTagConjunction} {
  static const char* const pronouns[] = {
      "i",      "me",     "my",     "mine",   "myself",  "we",      "us",
      "our",    "ours",   "you",    "your",   "yours",   "he",      "him",
      "his",    "she",    "her",    "hers",   "it",      "its",     "they",
      "them",   "their",  "theirs", "who",    "whom",    "whose",   "which",
      "what",   "this",   "that",   "these",  "those",   "u",       "ya",
      "yall",   "y'all",  "em",     "himself", "herself", "itself", "themselves",
      "ourselves", "yourself", "yourselves"};
  static const char* const determiners[] = {"a",     "an",      "the",   "some",
                                            "any",   "each",    "every", "no",
                                            "either", "neither", "another", "such"};
  static const char* const prepositions[] = {
      "in",   "on",    "at",      "by",      "for",    "with",  "about",
      "against", "between", "into", "through", "during", "before", "after",
      "above", "below", "to",     "from",    "up",     "down",  "of",
      "off",  "over",  "under",   "near"};
  static const char* const conjunctions[] = {"and", "but",      "or",    "nor",
                                             "so",  "yet",      "because", "although",
                                             "while", "if",     "unless", "since",
                                             "than", "whether"};
  // Small common-verb lexicon; the suffix rules alone would default bare
  // present-tense forms like "runs" to noun.
  static const char* const verbs[] = {
      "am",   "is",    "are",   "was",   "were",  "be",    "been",  "being",
      "have", "has",   "had",   "do",    "does",  "did",   "will",  "would",
      "can",  "could", "shall", "should", "may",  "might", "must",  "go",
      "goes", "went",  "get",   "gets",  "got",   "run",   "runs",  "ran",
      "say",  "says",  "said",  "make",  "makes", "made",  "know",  "knows",
      "knew", "see",   "sees",  "saw",   "come",  "comes", "came",  "want",
      "wants", "take", "takes", "took",  "think", "thinks", "feel", "feels",
      "felt", "let",   "lets",  "keep",  "keeps", "kept"};

  for (auto w : pronouns) closed_class_.emplace(w, kTagPronoun);
  for (auto w : determiners) closed_class_.emplace(w, kTagDeterminer);
  for (auto w : prepositions) closed_class_.emplace(w, kTagPreposition);
  for (auto w : conjunctions) closed_class_.emplace(w, kTagConjunction);
  for (auto w : verbs) closed_class_.emplace(w, kTagVerb);
}

std::string RulePosTagger::tag(const std::string& token) const {
  auto it = closed_class_.find(token);
  if (it != closed_class_.end()) return it->second;
  if (ends_with(token, "ly")) return kTagAdverb;
  if (ends_with(token, "ing") || ends_with(token, "ed")) return kTagVerb;
  if (ends_with(token, "ous") || ends_with(token, "ful")) return kTagAdjective;
  return kTagNoun;
}

const std::vector<std::string>& RulePosTagger::tagset() const { return tagset_; }

std::vector<std::string> pos_tag(const std::vector<std::string>& tokens,
                                 const PosTagger& tagger) {
  std::vector<std::string> tags;
  tags.reserve(tokens.size());
  for (const auto& t : tokens) tags.push_back(tagger.tag(t));
  return tags;
}

FeatureSpace fit_feature_space(const std::vector<TokenizedTweet>& train,
                               const FeaturizeConfig& config) {
  if (train.empty()) throw std::invalid_argument("fit_feature_space: empty training set");

  FeatureSpace space;
  space.n_train_docs = train.size();
  space.emotion_lexicon = config.emotion_lexicon;
  space.emoji_list = config.emoji_list;
  space.tagger = config.tagger ? config.tagger : std::make_shared<RulePosTagger>();
  space.pos_tagset = space.tagger->tagset();

  // Document frequencies (set semantics per tweet).
  std::map<std::string, std::size_t> df;
  std::map<std::pair<std::string, std::string>, std::size_t> bigram_df;
  for (const auto& tw : train) {
    std::map<std::string, bool> seen;
    for (const auto& tok : tw.tokens)
      if (!seen[tok]) {
        seen[tok] = true;
        ++df[tok];
      }
    std::map<std::pair<std::string, std::string>, bool> seen_bg;
    for (std::size_t i = 0; i + 1 < tw.tokens.size(); ++i) {
      auto bg = std::make_pair(tw.tokens[i], tw.tokens[i + 1]);
      if (!seen_bg[bg]) {
        seen_bg[bg] = true;
        ++bigram_df[bg];
      }
    }
  }

  const double n_docs = static_cast<double>(train.size());
  for (const auto& [tok, d] : df) {
    if (d < config.min_token_freq) continue;
    const std::size_t idx = space.vocab.size();
    space.vocab.emplace(tok, idx);
    space.idf.emplace(tok, std::log((1.0 + n_docs) / (1.0 + static_cast<double>(d))) + 1.0);
  }
  for (const auto& [bg, d] : bigram_df) {
    if (d < config.min_bigram_freq) continue;
    space.bigram_vocab.emplace(bg, space.bigram_vocab.size());
  }

  // Block layout and names.
  const std::size_t v = space.vocab.size();
  const std::size_t b = space.bigram_vocab.size();
  space.tfidf_offset = 0;
  space.binary_offset = v;
  space.bigram_offset = 2 * v;
  space.pos_offset = 2 * v + b;
  space.hashtag_col = space.pos_offset + space.pos_tagset.size();
  space.emoji_offset = space.hashtag_col + 1;
  space.emotion_offset = space.emoji_offset + space.emoji_list.size();
  space.n_cols = space.emotion_offset + kEmotions.size();

  space.feature_names.resize(space.n_cols);
  for (const auto& [tok, idx] : space.vocab) {
    space.feature_names[space.tfidf_offset + idx] = "tfidf:" + tok;
    space.feature_names[space.binary_offset + idx] = "bin:" + tok;
  }
  for (const auto& [bg, idx] : space.bigram_vocab)
    space.feature_names[space.bigram_offset + idx] = "bigram:" + bg.first + " " + bg.second;
  for (std::size_t i = 0; i < space.pos_tagset.size(); ++i)
    space.feature_names[space.pos_offset + i] = "pos:" + space.pos_tagset[i];
  space.feature_names[space.hashtag_col] = "hashtag_count";
  for (std::size_t i = 0; i < space.emoji_list.size(); ++i)
    space.feature_names[space.emoji_offset + i] = "emoji:" + space.emoji_list[i];
  for (std::size_t i = 0; i < kEmotions.size(); ++i)
    space.feature_names[space.emotion_offset + i] = std::string("emotion:") + kEmotions[i];

  return space;
}

FeatureVector transform(const FeatureSpace& space, const TokenizedTweet& tweet) {
  FeatureVector fv;
  fv.id = tweet.id;

  std::map<std::size_t, double> acc;  // ordered so output is sorted by column

  // tf-idf and binary blocks over in-vocabulary tokens.
  std::map<std::string, std::size_t> tf;
  for (const auto& tok : tweet.tokens) ++tf[tok];
  double sq_norm = 0.0;
  for (const auto& [tok, count] : tf) {
    auto it = space.vocab.find(tok);
    if (it == space.vocab.end()) continue;
    const double w = static_cast<double>(count) * space.idf.at(tok);
    acc[space.tfidf_offset + it->second] = w;
    acc[space.binary_offset + it->second] = 1.0;
    sq_norm += w * w;
  }
  if (sq_norm > 0.0) {
    const double inv = 1.0 / std::sqrt(sq_norm);
    for (const auto& [tok, count] : tf) {
      auto it = space.vocab.find(tok);
      if (it != space.vocab.end()) acc[space.tfidf_offset + it->second] *= inv;
    }
  }

  // Bigram counts.
  for (std::size_t i = 0; i + 1 < tweet.tokens.size(); ++i) {
    auto it = space.bigram_vocab.find({tweet.tokens[i], tweet.tokens[i + 1]});
    if (it != space.bigram_vocab.end()) acc[space.bigram_offset + it->second] += 1.0;
  }

  const double n_tokens = static_cast<double>(tweet.tokens.size());
  if (n_tokens > 0.0) {
    // POS proportions.
    std::map<std::string, std::size_t> tag_counts;
    for (const auto& tok : tweet.tokens) ++tag_counts[space.tagger->tag(tok)];
    for (std::size_t i = 0; i < space.pos_tagset.size(); ++i) {
      auto it = tag_counts.find(space.pos_tagset[i]);
      if (it != tag_counts.end())
        acc[space.pos_offset + i] = static_cast<double>(it->second) / n_tokens;
    }
    // Emotion proportions: token instances carrying each emotion over all tokens.
    std::array<std::size_t, kEmotions.size()> emo_counts{};
    for (const auto& tok : tweet.tokens) {
      const std::uint8_t bits = space.emotion_lexicon.lookup(tok);
      for (std::size_t e = 0; e < kEmotions.size(); ++e)
        if (bits & (1u << e)) ++emo_counts[e];
    }
    for (std::size_t e = 0; e < kEmotions.size(); ++e)
      if (emo_counts[e] > 0)
        acc[space.emotion_offset + e] = static_cast<double>(emo_counts[e]) / n_tokens;
  }

  if (tweet.hashtag_count > 0)
    acc[space.hashtag_col] = static_cast<double>(tweet.hashtag_count);

  for (std::size_t i = 0; i < space.emoji_list.size(); ++i) {
    for (const auto& [seq, count] : tweet.emoji_counts) {
      if (seq == space.emoji_list[i]) {
        if (count > 0) acc[space.emoji_offset + i] = static_cast<double>(count);
        break;
      }
    }
  }

  fv.values.assign(acc.begin(), acc.end());
  return fv;
}

std::vector<FeatureVector> transform_batch(const FeatureSpace& space,
                                           const std::vector<TokenizedTweet>& tweets,
                                           Exec exec) {
  std::vector<FeatureVector> out(tweets.size());
  for_each_index(tweets.size(), exec,
                 [&](std::size_t i) { out[i] = transform(space, tweets[i]); });
  return out;
}

SparseMatrix to_matrix(const std::vector<FeatureVector>& vectors, std::size_t n_cols) {
  SparseMatrix m(0, n_cols);
  for (const auto& fv : vectors) m.append_row(fv.values);
  return m;
}

bool is_single_word_feature(const std::string& feature_name) {
  return feature_name.rfind("tfidf:", 0) == 0 || feature_name.rfind("bin:", 0) == 0;
}

std::string single_word_of(const std::string& feature_name) {
  if (feature_name.rfind("tfidf:", 0) == 0) return feature_name.substr(6);
  if (feature_name.rfind("bin:", 0) == 0) return feature_name.substr(4);
  return {};
}

}  // namespace tweetlex
