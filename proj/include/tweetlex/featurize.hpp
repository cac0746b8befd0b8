#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tweetlex/parallel.hpp"
#include "tweetlex/sparse.hpp"
#include "tweetlex/types.hpp"

namespace tweetlex {

inline constexpr std::array<const char*, 8> kEmotions = {
    "anger", "anticipation", "disgust", "fear",
    "joy",   "sadness",      "surprise", "trust"};

/// Token -> bitmask over kEmotions.
struct EmotionLexicon {
  std::unordered_map<std::string, std::uint8_t> bits;

  std::uint8_t lookup(const std::string& token) const {
    auto it = bits.find(token);
    return it == bits.end() ? 0 : it->second;
  }
};

/// Loads rows of "word<TAB>emotion<TAB>{0,1}". Emotions outside the eight
/// known ones (e.g. sentiment polarity rows) are skipped.
EmotionLexicon load_emotion_lexicon(const std::string& path);

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::string tag(const std::string& token) const = 0;
  virtual const std::vector<std::string>& tagset() const = 0;
};

/// Shipped default tagger: closed-class lexicons (pronouns, determiners,
/// prepositions, conjunctions, common verbs/auxiliaries) + suffix rules
/// (-ly adverb, -ing/-ed verb, -ous/-ful adjective), default noun.
class RulePosTagger final : public PosTagger {
 public:
  RulePosTagger();
  std::string tag(const std::string& token) const override;
  const std::vector<std::string>& tagset() const override;

 private:
  std::vector<std::string> tagset_;
  std::unordered_map<std::string, std::string> closed_class_;
};

std::vector<std::string> pos_tag(const std::vector<std::string>& tokens,
                                 const PosTagger& tagger);

struct FeaturizeConfig {
  std::size_t min_token_freq = 1;   // document-frequency floor for vocab
  std::size_t min_bigram_freq = 1;
  std::shared_ptr<const PosTagger> tagger;  // defaults to RulePosTagger
  EmotionLexicon emotion_lexicon;
  std::vector<std::string> emoji_list;      // same 10 sequences as preprocessing
};

/// Vocabulary, idf table and block layout fitted on training tweets only.
/// Feature column order: tfidf block, binary block, bigram block, POS
/// proportions, hashtag count, 10 emoji counts, 8 emotion proportions.
struct FeatureSpace {
  std::map<std::string, std::size_t> vocab;  // token -> index within word block
  std::map<std::pair<std::string, std::string>, std::size_t> bigram_vocab;
  std::unordered_map<std::string, double> idf;
  std::vector<std::string> pos_tagset;
  EmotionLexicon emotion_lexicon;
  std::vector<std::string> emoji_list;
  std::vector<std::string> feature_names;
  std::size_t n_train_docs = 0;
  std::shared_ptr<const PosTagger> tagger;

  std::size_t tfidf_offset = 0;
  std::size_t binary_offset = 0;
  std::size_t bigram_offset = 0;
  std::size_t pos_offset = 0;
  std::size_t hashtag_col = 0;
  std::size_t emoji_offset = 0;
  std::size_t emotion_offset = 0;
  std::size_t n_cols = 0;
};

/// Builds the feature space from training tweets. Vocabulary and bigram
/// columns are ordered lexicographically, so the layout is independent of
/// input order. idf(t) = ln((1+N)/(1+df(t))) + 1.
FeatureSpace fit_feature_space(const std::vector<TokenizedTweet>& train,
                               const FeaturizeConfig& config);

struct FeatureVector {
  std::string id;
  std::vector<std::pair<std::size_t, double>> values;  // sorted by column
};

/// Emits all blocks for one tweet. tf-idf is raw count * idf, L2-normalized
/// within the block; out-of-vocabulary tokens are ignored in the tf-idf,
/// binary and bigram blocks.
FeatureVector transform(const FeatureSpace& space, const TokenizedTweet& tweet);

std::vector<FeatureVector> transform_batch(const FeatureSpace& space,
                                           const std::vector<TokenizedTweet>& tweets,
                                           Exec exec = Exec::parallel);

SparseMatrix to_matrix(const std::vector<FeatureVector>& vectors, std::size_t n_cols);

/// Feature-name helpers used by the bias audit: vocabulary (single-word)
/// columns carry the "tfidf:" / "bin:" prefixes.
bool is_single_word_feature(const std::string& feature_name);
std::string single_word_of(const std::string& feature_name);

}  // namespace tweetlex
