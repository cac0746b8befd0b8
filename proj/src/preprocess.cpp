#include "tweetlex/preprocess.hpp"

#include <fstream>
#include <stdexcept>

#include "tweetlex/text_util.hpp"

namespace tweetlex {

namespace {

constexpr const char* kShortenerPrefix = "https://t.co/";

bool is_hashtag_start(const std::vector<std::uint32_t>& cps, std::size_t i) {
  if (cps[i] != '#') return false;
  if (i + 1 >= cps.size()) return false;
  const std::uint32_t next = cps[i + 1];
  if (is_ascii_space(next) || is_punct_cp(next)) return false;
  return true;
}

std::vector<std::uint32_t> cap_runs_cp(const std::vector<std::uint32_t>& cps,
                                       std::size_t max_run) {
  std::vector<std::uint32_t> out;
  out.reserve(cps.size());
  std::size_t run = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (i > 0 && cps[i] == cps[i - 1])
      ++run;
    else
      run = 1;
    if (run <= max_run) out.push_back(cps[i]);
  }
  return out;
}

}  // namespace

std::string cap_char_runs(const std::string& s, std::size_t max_run) {
  if (max_run < 1) throw std::invalid_argument("cap_char_runs: max_run must be >= 1");
  return utf8_encode(cap_runs_cp(utf8_decode(s), max_run));
}

TokenizedTweet preprocess_text(const std::string& id, const std::string& text,
                               const PreprocessConfig& cfg) {
  if (cfg.emoji_list.size() != kEmojiListSize)
    throw std::invalid_argument("preprocess: emoji list must have exactly 10 entries");

  TokenizedTweet out;
  out.id = id;
  out.raw_text = text;

  // Step 1: raw-text counts, before any token destruction.
  const auto cps = utf8_decode(text);
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (is_hashtag_start(cps, i)) ++out.hashtag_count;
  out.emoji_counts.reserve(cfg.emoji_list.size());
  for (const auto& emoji : cfg.emoji_list)
    out.emoji_counts.emplace_back(
        emoji, static_cast<std::int64_t>(count_occurrences(text, emoji)));

  // Whitespace split, then the per-token steps 2-6.
  std::vector<std::string> chunks;
  {
    std::string cur;
    for (auto cp : cps) {
      if (is_ascii_space(cp)) {
        if (!cur.empty()) chunks.emplace_back(std::move(cur));
        cur.clear();
      } else {
        utf8_append(cur, cp);
      }
    }
    if (!cur.empty()) chunks.emplace_back(std::move(cur));
  }

  for (auto& chunk : chunks) {
    // Step 2: shortened URLs keep only the bare prefix token.
    if (chunk.rfind(kShortenerPrefix, 0) == 0) {
      out.tokens.emplace_back(kShortenerPrefix);
      continue;
    }
    // Step 3: account handles vanish entirely.
    if (chunk[0] == '@') continue;

    auto tok = utf8_decode(chunk);
    // Peel edge punctuation (covers the leading '#' of hashtags). A handle
    // hiding behind leading punctuation (".@name") is still a handle.
    std::size_t begin = 0, end = tok.size();
    bool leading_at = false;
    while (begin < end && is_punct_cp(tok[begin])) {
      if (tok[begin] == '@') leading_at = true;
      ++begin;
    }
    if (leading_at) continue;
    while (end > begin && is_punct_cp(tok[end - 1])) --end;
    if (begin > 0 || end < tok.size())
      tok = std::vector<std::uint32_t>(tok.begin() + begin, tok.begin() + end);
    if (tok.empty()) continue;

    // Steps 4-5, with a re-cap so downcasing cannot merge runs past the cap.
    tok = cap_runs_cp(tok, cfg.max_char_run);
    for (auto& cp : tok) cp = ascii_lower(cp);
    tok = cap_runs_cp(tok, cfg.max_char_run);

    std::string token = utf8_encode(tok);
    // Step 6.
    if (token.empty() || is_pure_punct(token)) continue;
    if (cfg.stopwords.count(token)) continue;
    out.tokens.emplace_back(std::move(token));
  }
  return out;
}

TokenizedTweet preprocess_tweet(const Tweet& tweet, const PreprocessConfig& cfg) {
  return preprocess_text(tweet.id, tweet.text, cfg);
}

std::vector<TokenizedTweet> preprocess_batch(const std::vector<Tweet>& tweets,
                                             const PreprocessConfig& cfg,
                                             Exec exec) {
  std::vector<TokenizedTweet> out(tweets.size());
  for_each_index(tweets.size(), exec,
                 [&](std::size_t i) { out[i] = preprocess_tweet(tweets[i], cfg); });
  return out;
}

namespace {

std::vector<std::string> read_config_lines(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string(what) + ": cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // trim ASCII whitespace
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    line = line.substr(b, e - b + 1);
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::set<std::string> load_stopwords(const std::string& path) {
  std::set<std::string> words;
  for (auto& line : read_config_lines(path, "stopwords"))
    words.insert(ascii_lower_copy(line));
  return words;
}

std::vector<std::string> load_emoji_list(const std::string& path) {
  auto lines = read_config_lines(path, "emoji list");
  if (lines.size() != kEmojiListSize)
    throw std::runtime_error("emoji list: expected exactly 10 entries in " + path +
                             ", got " + std::to_string(lines.size()));
  return lines;
}

}  // namespace tweetlex
