#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tweetlex/types.hpp"

namespace tweetlex {

struct BoundingBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;
};

/// Reads a labeled corpus from a line-delimited record file. The only format
/// id currently supported is "jsonl": one JSON object per line with fields
///   id, author_id, screen_name, text, created_at, mentions, is_retweet,
///   followers_count, lang_tag, lat, lon, label, group
/// lang_tag and lat/lon may be null. Malformed records are rejected with
/// their line number; duplicate ids, unknown label tokens and empty corpora
/// are errors.
LabeledCorpus ingest_corpus(const std::string& path, const std::string& format = "jsonl");

/// Writes the corpus back in the jsonl record format (fixed key order, so
/// ingest -> persist -> ingest round-trips all values exactly).
void save_corpus(const LabeledCorpus& corpus, const std::string& path);

/// Keeps tweets whose geo point lies inside the closed box. Tweets without
/// geo are dropped.
LabeledCorpus filter_bounding_box(const LabeledCorpus& corpus, const BoundingBox& box);

/// Keeps tweets with lang_tag == lang that are not retweets.
LabeledCorpus filter_language_and_retweets(const LabeledCorpus& corpus,
                                           const std::string& lang,
                                           std::vector<std::string>* warnings = nullptr);

/// Ranks the accounts that most frequently appear on the wall (as author or
/// mention), drops the seeds themselves and accounts over the follower cap
/// that never authored a direct mention of a seed, and returns the top k
/// screen names. Ties break lexicographically. Counting runs over the whole
/// wall, authored or not.
std::vector<std::string> expand_network(const std::vector<std::string>& seed_screennames,
                                        const std::vector<Tweet>& wall, std::size_t k,
                                        std::int64_t follower_cap,
                                        std::vector<std::string>* warnings = nullptr);

/// Dialect reference corpus: jsonl records with fields text, posterior.
DialectCorpus load_dialect_corpus(const std::string& path);

/// Texts whose dialect posterior is strictly greater than tau.
std::vector<std::string> threshold_dialect(const DialectCorpus& corpus, double tau);

}  // namespace tweetlex
