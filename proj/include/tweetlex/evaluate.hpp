#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tweetlex/featurize.hpp"
#include "tweetlex/models.hpp"
#include "tweetlex/preprocess.hpp"
#include "tweetlex/types.hpp"

namespace tweetlex {

enum class SplitMethod { tweet_level, user_level, out_of_network };

std::string split_method_name(SplitMethod m);
SplitMethod split_method_from_name(const std::string& name);

/// A realized train/test assignment. Fold order and membership are fully
/// determined by the corpus and the seed.
struct SplitPlan {
  SplitMethod method = SplitMethod::tweet_level;
  struct Fold {
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
  };
  std::vector<Fold> folds;
  std::uint64_t rng_seed = 0;
  double neg_test_fraction = 0.0;
};

/// Stratified k-fold over shuffled tweets; each fold's test set preserves the
/// class proportion within one tweet per class.
SplitPlan plan_tweet_level(const LabeledCorpus& corpus, std::size_t k, std::uint64_t seed);

/// Leave-one-account-out over positive group keys; each fold tests the held
/// out account's tweets plus a fresh random sample of neg_test_fraction of
/// the negative class, drawn per fold from one seeded stream.
SplitPlan plan_user_level(const LabeledCorpus& corpus, double neg_test_fraction,
                          std::uint64_t seed);

/// Two folds: train on one community's positive accounts and test on the
/// other's, both ways. community_of maps positive group keys to exactly two
/// community ids; negatives as in the user-level plan.
SplitPlan plan_out_of_network(const LabeledCorpus& corpus,
                              const std::map<std::string, std::string>& community_of,
                              double neg_test_fraction, std::uint64_t seed);

/// Throws if a fold overlaps train/test or (for grouped methods) leaks a
/// positive group across the boundary.
void validate_plan(const LabeledCorpus& corpus, const SplitPlan& plan);

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::optional<double> precision() const {
    if (tp + fp == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  std::optional<double> recall() const {
    if (tp + fn == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
};

struct EvalReport {
  std::string model_name;
  SplitMethod method = SplitMethod::tweet_level;
  std::vector<Confusion> folds;
  // Unweighted means over folds where the metric is defined.
  std::optional<double> avg_precision;
  std::optional<double> avg_recall;
  std::size_t undefined_precision_folds = 0;
  std::size_t undefined_recall_folds = 0;

  /// 2PR/(P+R) from the averaged metrics; 0 when undefined or degenerate.
  double macro_f1() const;
};

EvalReport summarize_folds(std::string model_name, SplitMethod method,
                           std::vector<Confusion> folds);

/// Fold-level classifier contract: fit on the train tweets, then label the
/// test tweets (1 = positive).
using TweetPredictor = std::function<std::vector<int>(const std::vector<Tweet>&)>;
using TrainerFn =
    std::function<TweetPredictor(const std::vector<Tweet>& train_tweets,
                                 const std::vector<int>& train_labels)>;

/// Runs any trainer through the plan and accumulates per-fold confusions.
/// Trainer/predictor failures are rethrown with the fold index attached.
EvalReport evaluate_plan(const LabeledCorpus& corpus, const SplitPlan& plan,
                         const TrainerFn& trainer, const std::string& model_name);

struct ModelConfig {
  ModelKind kind = ModelKind::logistic;
  double nb_alpha = 1.0;
  LogisticConfig logistic;
  RfConfig rf;
  GbtConfig gbt;
  std::uint64_t rng_seed = 0;
};

struct PipelineConfig {
  PreprocessConfig pre;
  FeaturizeConfig feat;
  ModelConfig model;
  Exec exec = Exec::parallel;
};

/// Full per-fold pipeline: preprocess and fit the feature space on the train
/// split only, train the configured model, and score the test split.
EvalReport run_eval(const LabeledCorpus& corpus, const SplitPlan& plan,
                    const PipelineConfig& config);

/// Table-2-shaped summary (Split Method / Model Type / Precision / Recall).
std::string render_report_table(const std::vector<EvalReport>& reports);

/// Machine-readable rows: per-fold confusion counts and metrics plus an
/// "avg" row per report.
std::string report_csv(const std::vector<EvalReport>& reports);

}  // namespace tweetlex
