#include "tweetlex/baselines.hpp"

#include <fstream>
#include <stdexcept>

#include "tweetlex/text_util.hpp"

namespace tweetlex {

AnnotationLexicon load_annotation_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("annotation lexicon: cannot open " + path);
  AnnotationLexicon lex;
  std::set<std::string>* current = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const std::size_t e = line.find_last_not_of(" \t");
    line = line.substr(b, e - b + 1);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[aggression]") {
      current = &lex.aggression;
      continue;
    }
    if (line == "[loss]") {
      current = &lex.loss;
      continue;
    }
    if (!current)
      throw std::runtime_error("annotation lexicon: word before any section in " + path);
    current->insert(ascii_lower_copy(line));
  }
  if (lex.aggression.empty() || lex.loss.empty())
    throw std::runtime_error("annotation lexicon: both sections must be nonempty in " + path);
  return lex;
}

namespace {

bool is_handle_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_';
}

}  // namespace

bool mentions_any_seed(const std::string& text, const std::vector<std::string>& seeds) {
  const std::string lower = ascii_lower_copy(text);
  for (const auto& seed : seeds) {
    const std::string needle = "@" + ascii_lower_copy(seed);
    std::size_t pos = 0;
    while ((pos = lower.find(needle, pos)) != std::string::npos) {
      const std::size_t end = pos + needle.size();
      const bool boundary_after = end >= lower.size() || !is_handle_char(lower[end]);
      const bool boundary_before = pos == 0 || !is_handle_char(lower[pos - 1]);
      if (boundary_after && boundary_before) return true;
      pos += 1;
    }
  }
  return false;
}

std::vector<int> user_mention_baseline(const std::vector<Tweet>& tweets,
                                       const std::vector<std::string>& seed_screennames,
                                       MentionMatchMode mode,
                                       const PreprocessConfig* pre) {
  if (seed_screennames.empty())
    throw std::invalid_argument("user_mention_baseline: empty seed list");
  std::vector<int> out;
  out.reserve(tweets.size());
  if (mode == MentionMatchMode::raw_text) {
    for (const auto& t : tweets)
      out.push_back(mentions_any_seed(t.text, seed_screennames) ? 1 : 0);
    return out;
  }
  // tokens mode: preprocessing removes handles, so only a bare occurrence of
  // the seed name as an ordinary token matches.
  if (!pre)
    throw std::invalid_argument("user_mention_baseline: tokens mode needs a preprocess config");
  std::set<std::string> names;
  for (const auto& s : seed_screennames) names.insert(ascii_lower_copy(s));
  for (const auto& t : tweets) {
    const auto tok = preprocess_tweet(t, *pre);
    int hit = 0;
    for (const auto& token : tok.tokens)
      if (names.count(token)) {
        hit = 1;
        break;
      }
    out.push_back(hit);
  }
  return out;
}

std::vector<int> annotation_baseline(const std::vector<TokenizedTweet>& tweets,
                                     const AnnotationLexicon& lexicon) {
  if (lexicon.aggression.empty() || lexicon.loss.empty())
    throw std::invalid_argument("annotation_baseline: lexicon sections must be nonempty");
  std::vector<int> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) {
    int hit = 0;
    for (const auto& token : t.tokens)
      if (lexicon.contains(token)) {
        hit = 1;
        break;
      }
    out.push_back(hit);
  }
  return out;
}

std::string baseline_name(BaselineKind kind) {
  return kind == BaselineKind::user_mention ? "user_mention_baseline"
                                            : "annotation_baseline";
}

EvalReport run_baseline_eval(const LabeledCorpus& corpus, const SplitPlan& plan,
                             BaselineKind kind, const BaselineConfig& config) {
  TrainerFn trainer = [&config, kind](const std::vector<Tweet>&,
                                      const std::vector<int>&) -> TweetPredictor {
    const BaselineConfig cfg = config;
    return [cfg, kind](const std::vector<Tweet>& test_tweets) {
      if (kind == BaselineKind::user_mention)
        return user_mention_baseline(test_tweets, cfg.seed_screennames,
                                     cfg.mention_mode, &cfg.pre);
      const auto tokenized = preprocess_batch(test_tweets, cfg.pre);
      return annotation_baseline(tokenized, cfg.lexicon);
    };
  };
  return evaluate_plan(corpus, plan, trainer, baseline_name(kind));
}

}  // namespace tweetlex
