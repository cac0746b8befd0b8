#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tweetlex {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

/// One social-media post plus the metadata the pipeline filters on.
struct Tweet {
  std::string id;
  std::string author_id;
  std::string screen_name;
  std::string text;
  std::string created_at;             // UTC timestamp, ISO-8601 string
  std::vector<std::string> mentions;  // screen names without the leading '@'
  bool is_retweet = false;
  std::int64_t followers_count = 0;
  std::optional<std::string> lang_tag;
  std::optional<GeoPoint> geo;
};

enum class Label : int { negative = 0, positive = 1 };

/// Tweets plus per-id label and group key. The group key is the account for
/// positive tweets and a single shared key for the negative class; grouped
/// split protocols rely on it.
struct LabeledCorpus {
  std::vector<Tweet> tweets;
  std::unordered_map<std::string, Label> labels;
  std::unordered_map<std::string, std::string> groups;

  Label label_of(const std::string& id) const { return labels.at(id); }
  const std::string& group_of(const std::string& id) const { return groups.at(id); }

  std::size_t count_label(Label l) const {
    std::size_t n = 0;
    for (const auto& t : tweets)
      if (labels.at(t.id) == l) ++n;
    return n;
  }
};

struct DialectTweet {
  std::string text;
  double posterior = 0.0;  // probability the text uses the reference dialect
};

struct DialectCorpus {
  std::vector<DialectTweet> tweets;
};

/// Preprocessing output for one tweet. Hashtag and emoji counts are computed
/// on the raw text before any token destruction; raw_text is retained for the
/// mention baseline.
struct TokenizedTweet {
  std::string id;
  std::vector<std::string> tokens;  // lowercase, handle-free, run-capped
  std::int64_t hashtag_count = 0;
  std::vector<std::pair<std::string, std::int64_t>> emoji_counts;  // sequence -> count
  std::string raw_text;
};

}  // namespace tweetlex
