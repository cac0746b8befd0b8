#include "tweetlex/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace tweetlex {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void record_error(std::size_t line_no, const std::string& msg) {
  throw std::runtime_error("record on line " + std::to_string(line_no) + ": " + msg);
}

std::string require_string(const json& rec, const char* field, std::size_t line_no,
                           bool allow_empty = false) {
  if (!rec.contains(field) || !rec[field].is_string())
    record_error(line_no, std::string("missing or non-string field '") + field + "'");
  auto s = rec[field].get<std::string>();
  if (s.empty() && !allow_empty)
    record_error(line_no, std::string("empty field '") + field + "'");
  return s;
}

}  // namespace

LabeledCorpus ingest_corpus(const std::string& path, const std::string& format) {
  if (format != "jsonl")
    throw std::runtime_error("ingest_corpus: unknown record format '" + format + "'");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ingest_corpus: cannot open " + path);

  LabeledCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      record_error(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) record_error(line_no, "record is not an object");

    Tweet t;
    t.id = require_string(rec, "id", line_no);
    t.author_id = require_string(rec, "author_id", line_no, true);
    t.screen_name = require_string(rec, "screen_name", line_no, true);
    t.text = require_string(rec, "text", line_no);
    t.created_at = require_string(rec, "created_at", line_no, true);

    if (!rec.contains("mentions") || !rec["mentions"].is_array())
      record_error(line_no, "missing or non-array field 'mentions'");
    for (const auto& m : rec["mentions"]) {
      if (!m.is_string()) record_error(line_no, "non-string entry in 'mentions'");
      t.mentions.push_back(m.get<std::string>());
    }

    if (!rec.contains("is_retweet") || !rec["is_retweet"].is_boolean())
      record_error(line_no, "missing or non-boolean field 'is_retweet'");
    t.is_retweet = rec["is_retweet"].get<bool>();

    if (!rec.contains("followers_count") || !rec["followers_count"].is_number_integer())
      record_error(line_no, "missing or non-integer field 'followers_count'");
    t.followers_count = rec["followers_count"].get<std::int64_t>();
    if (t.followers_count < 0) record_error(line_no, "followers_count must be >= 0");

    if (rec.contains("lang_tag") && !rec["lang_tag"].is_null()) {
      if (!rec["lang_tag"].is_string()) record_error(line_no, "lang_tag must be string or null");
      t.lang_tag = rec["lang_tag"].get<std::string>();
    }

    const bool has_lat = rec.contains("lat") && !rec["lat"].is_null();
    const bool has_lon = rec.contains("lon") && !rec["lon"].is_null();
    if (has_lat != has_lon) record_error(line_no, "lat and lon must be present together");
    if (has_lat) {
      if (!rec["lat"].is_number() || !rec["lon"].is_number())
        record_error(line_no, "lat/lon must be numbers");
      GeoPoint g{rec["lat"].get<double>(), rec["lon"].get<double>()};
      if (g.lat < -90.0 || g.lat > 90.0) record_error(line_no, "lat out of [-90,90]");
      if (g.lon < -180.0 || g.lon > 180.0) record_error(line_no, "lon out of [-180,180]");
      t.geo = g;
    }

    const std::string label = require_string(rec, "label", line_no);
    Label lab;
    if (label == "positive")
      lab = Label::positive;
    else if (label == "negative")
      lab = Label::negative;
    else
      record_error(line_no, "unknown label token '" + label + "'");

    const std::string group = require_string(rec, "group", line_no);

    if (corpus.labels.count(t.id)) record_error(line_no, "duplicate id '" + t.id + "'");
    corpus.labels.emplace(t.id, lab);
    corpus.groups.emplace(t.id, group);
    corpus.tweets.push_back(std::move(t));
  }
  if (corpus.tweets.empty()) throw std::runtime_error("ingest_corpus: empty corpus in " + path);
  return corpus;
}

void save_corpus(const LabeledCorpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_corpus: cannot write " + path);
  for (const auto& t : corpus.tweets) {
    ordered_json rec;
    rec["id"] = t.id;
    rec["author_id"] = t.author_id;
    rec["screen_name"] = t.screen_name;
    rec["text"] = t.text;
    rec["created_at"] = t.created_at;
    rec["mentions"] = t.mentions;
    rec["is_retweet"] = t.is_retweet;
    rec["followers_count"] = t.followers_count;
    if (t.lang_tag)
      rec["lang_tag"] = *t.lang_tag;
    else
      rec["lang_tag"] = nullptr;
    if (t.geo) {
      rec["lat"] = t.geo->lat;
      rec["lon"] = t.geo->lon;
    } else {
      rec["lat"] = nullptr;
      rec["lon"] = nullptr;
    }
    rec["label"] = corpus.labels.at(t.id) == Label::positive ? "positive" : "negative";
    rec["group"] = corpus.groups.at(t.id);
    out << rec.dump() << '\n';
  }
}

namespace {

LabeledCorpus keep_if(const LabeledCorpus& corpus, const auto& pred) {
  LabeledCorpus out;
  for (const auto& t : corpus.tweets) {
    if (!pred(t)) continue;
    out.tweets.push_back(t);
    out.labels.emplace(t.id, corpus.labels.at(t.id));
    out.groups.emplace(t.id, corpus.groups.at(t.id));
  }
  return out;
}

}  // namespace

LabeledCorpus filter_bounding_box(const LabeledCorpus& corpus, const BoundingBox& box) {
  if (!(box.lat_min < box.lat_max) || !(box.lon_min < box.lon_max))
    throw std::invalid_argument("filter_bounding_box: inverted box");
  return keep_if(corpus, [&](const Tweet& t) {
    return t.geo && t.geo->lat >= box.lat_min && t.geo->lat <= box.lat_max &&
           t.geo->lon >= box.lon_min && t.geo->lon <= box.lon_max;
  });
}

LabeledCorpus filter_language_and_retweets(const LabeledCorpus& corpus,
                                           const std::string& lang,
                                           std::vector<std::string>* warnings) {
  auto out = keep_if(corpus, [&](const Tweet& t) {
    return !t.is_retweet && t.lang_tag && *t.lang_tag == lang;
  });
  if (out.tweets.empty() && warnings)
    warnings->push_back("filter_language_and_retweets: no tweets left after filtering");
  return out;
}

std::vector<std::string> expand_network(const std::vector<std::string>& seed_screennames,
                                        const std::vector<Tweet>& wall, std::size_t k,
                                        std::int64_t follower_cap,
                                        std::vector<std::string>* warnings) {
  if (wall.empty()) throw std::invalid_argument("expand_network: empty wall");
  if (k < 1) throw std::invalid_argument("expand_network: k must be >= 1");

  const std::unordered_set<std::string> seeds(seed_screennames.begin(),
                                              seed_screennames.end());

  // Appearance count per account, max observed follower count, and whether
  // the account ever authored a tweet that mentions a seed directly.
  std::map<std::string, std::size_t> appearances;
  std::map<std::string, std::int64_t> followers;
  std::unordered_set<std::string> mentions_seed;

  for (const auto& t : wall) {
    std::unordered_set<std::string> in_this_tweet;
    if (!t.screen_name.empty() && !seeds.count(t.screen_name)) {
      in_this_tweet.insert(t.screen_name);
      auto& f = followers[t.screen_name];
      f = std::max(f, t.followers_count);
    }
    for (const auto& m : t.mentions)
      if (!seeds.count(m)) in_this_tweet.insert(m);
    for (const auto& name : in_this_tweet) ++appearances[name];
    for (const auto& m : t.mentions)
      if (seeds.count(m) && !t.screen_name.empty()) mentions_seed.insert(t.screen_name);
  }

  std::vector<std::pair<std::string, std::size_t>> eligible;
  for (const auto& [name, count] : appearances) {
    auto it = followers.find(name);
    const std::int64_t f = it == followers.end() ? 0 : it->second;
    if (f > follower_cap && !mentions_seed.count(name)) continue;
    eligible.emplace_back(name, count);
  }
  std::sort(eligible.begin(), eligible.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> out;
  for (const auto& [name, count] : eligible) {
    if (out.size() == k) break;
    out.push_back(name);
  }
  if (out.size() < k && warnings)
    warnings->push_back("expand_network: only " + std::to_string(out.size()) +
                        " eligible accounts for k=" + std::to_string(k));
  return out;
}

DialectCorpus load_dialect_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dialect_corpus: cannot open " + path);
  DialectCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      record_error(line_no, std::string("invalid JSON: ") + e.what());
    }
    DialectTweet t;
    t.text = require_string(rec, "text", line_no);
    if (!rec.contains("posterior") || !rec["posterior"].is_number())
      record_error(line_no, "missing or non-numeric field 'posterior'");
    t.posterior = rec["posterior"].get<double>();
    if (!(t.posterior >= 0.0 && t.posterior <= 1.0))
      record_error(line_no, "posterior out of [0,1]");
    corpus.tweets.push_back(std::move(t));
  }
  return corpus;
}

std::vector<std::string> threshold_dialect(const DialectCorpus& corpus, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("threshold_dialect: tau must be in [0,1]");
  std::vector<std::string> out;
  for (const auto& t : corpus.tweets)
    if (t.posterior > tau) out.push_back(t.text);
  return out;
}

}  // namespace tweetlex
