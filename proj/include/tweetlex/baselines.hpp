#pragma once

#include <set>
#include <string>
#include <vector>

#include "tweetlex/evaluate.hpp"
#include "tweetlex/preprocess.hpp"
#include "tweetlex/types.hpp"

namespace tweetlex {

/// Aggression/loss word lists. Entries are lowercased on load.
struct AnnotationLexicon {
  std::set<std::string> aggression;
  std::set<std::string> loss;

  bool contains(const std::string& lowercase_token) const {
    return aggression.count(lowercase_token) > 0 || loss.count(lowercase_token) > 0;
  }
};

/// File format: "[aggression]" / "[loss]" section headers, one word per
/// line, '#' comments. Both sections must be nonempty.
AnnotationLexicon load_annotation_lexicon(const std::string& path);

enum class MentionMatchMode {
  raw_text,  // scan the original text for @name (default)
  tokens     // scan post-preprocessing tokens for the bare name
};

/// True if text contains @name for any seed, case-insensitively, where the
/// handle ends at a non-word character ("@namex" does not match seed "name").
bool mentions_any_seed(const std::string& text, const std::vector<std::string>& seeds);

/// 1 for every tweet that mentions a seed screen name.
std::vector<int> user_mention_baseline(const std::vector<Tweet>& tweets,
                                       const std::vector<std::string>& seed_screennames,
                                       MentionMatchMode mode = MentionMatchMode::raw_text,
                                       const PreprocessConfig* pre = nullptr);

/// 1 for every tweet with at least one post-preprocessing token in either
/// word list (exact token match).
std::vector<int> annotation_baseline(const std::vector<TokenizedTweet>& tweets,
                                     const AnnotationLexicon& lexicon);

enum class BaselineKind { user_mention, annotation };

struct BaselineConfig {
  std::vector<std::string> seed_screennames;
  AnnotationLexicon lexicon;
  MentionMatchMode mention_mode = MentionMatchMode::raw_text;
  PreprocessConfig pre;  // used by the annotation baseline and tokens mode
};

/// Runs a training-free baseline through the identical split machinery the
/// models use; the train portions are ignored.
EvalReport run_baseline_eval(const LabeledCorpus& corpus, const SplitPlan& plan,
                             BaselineKind kind, const BaselineConfig& config);

std::string baseline_name(BaselineKind kind);

}  // namespace tweetlex
