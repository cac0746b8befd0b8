#pragma once

#include <set>
#include <string>
#include <vector>

#include "tweetlex/parallel.hpp"
#include "tweetlex/types.hpp"

namespace tweetlex {

constexpr std::size_t kEmojiListSize = 10;

struct PreprocessConfig {
  std::set<std::string> stopwords;         // lowercase entries
  std::vector<std::string> emoji_list;     // exactly 10 codepoint sequences
  std::size_t max_char_run = 3;
};

/// Reduces every maximal run of one character longer than max_run to exactly
/// max_run. Operates on codepoints, so multi-byte characters count as one.
std::string cap_char_runs(const std::string& s, std::size_t max_run = 3);

/// The tokenization pipeline, in fixed order:
///   1. count hashtags and the configured emojis on the raw text
///   2. whitespace-split; a token starting with "https://t.co/" is reduced to
///      that bare prefix
///   3. drop tokens starting with '@'
///   4. cap character runs at max_char_run
///   5. downcase (ASCII)
///   6. drop stopwords and pure-punctuation tokens
/// Leading '#' is stripped so hashtag words stay available as tokens, and
/// edge punctuation is peeled off word tokens (the punctuation-only remainder
/// would be dropped by step 6 anyway). Runs are re-capped after downcasing so
/// mixed-case runs cannot escape the cap.
TokenizedTweet preprocess_text(const std::string& id, const std::string& text,
                               const PreprocessConfig& cfg);

TokenizedTweet preprocess_tweet(const Tweet& tweet, const PreprocessConfig& cfg);

std::vector<TokenizedTweet> preprocess_batch(const std::vector<Tweet>& tweets,
                                             const PreprocessConfig& cfg,
                                             Exec exec = Exec::parallel);

/// Stopword file: UTF-8, one token per line, '#' starts a comment line.
std::set<std::string> load_stopwords(const std::string& path);

/// Emoji list file: one codepoint sequence per line, '#' comments; must yield
/// exactly 10 entries.
std::vector<std::string> load_emoji_list(const std::string& path);

}  // namespace tweetlex
