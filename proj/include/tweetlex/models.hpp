#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tweetlex/parallel.hpp"
#include "tweetlex/sparse.hpp"

namespace tweetlex {

enum class ModelKind { naive_bayes, logistic, random_forest, gbt };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

struct NaiveBayesParams {
  double alpha = 1.0;
  double class_log_prior[2] = {0.0, 0.0};
  std::vector<double> feature_log_prob[2];  // log theta_{t,c}, dense per class
};

struct LogisticConfig {
  double l2 = 1.0;
  double lr = 0.1;
  std::size_t max_iter = 1000;
  double tol = 1e-6;
};

struct LogisticParams {
  std::vector<double> weights;
  double intercept = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  LogisticConfig config;
};

/// Binary decision tree node. feature < 0 marks a leaf; samples with
/// value <= threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int leaf_label = 0;
};

struct RfConfig {
  std::size_t n_trees = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_split = 2;
};

struct RandomForestParams {
  std::vector<std::vector<TreeNode>> trees;
  std::vector<double> importances;  // Gini importance, normalized to sum 1
  RfConfig config;
};

/// Regression tree node for gradient boosting; leaves carry additive values.
struct RegNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct GbtConfig {
  std::size_t n_rounds = 100;
  std::size_t max_depth = 3;
  double shrinkage = 0.1;
};

struct GbtParams {
  double base_score = 0.0;  // initial log-odds
  std::vector<std::vector<RegNode>> trees;
  GbtConfig config;
};

struct ModelArtifact {
  ModelKind kind = ModelKind::logistic;
  std::vector<std::string> feature_names;
  std::uint64_t rng_seed = 0;
  std::variant<NaiveBayesParams, LogisticParams, RandomForestParams, GbtParams> params;
};

/// Multinomial naive Bayes with additive smoothing. Requires nonnegative
/// features and both classes present.
ModelArtifact train_nb(const SparseMatrix& X, const std::vector<int>& y, double alpha,
                       const std::vector<std::string>& feature_names);

/// L2-regularized logistic regression by batch gradient descent on
///   J(w,b) = (1/n) sum_i [softplus(z_i) - y_i z_i] + (l2/(2n)) ||w||^2
/// with z = Xw + b; the intercept is not regularized. Converged when the
/// loss decrease falls below tol.
ModelArtifact train_logistic(const SparseMatrix& X, const std::vector<int>& y,
                             const LogisticConfig& config,
                             const std::vector<std::string>& feature_names,
                             Exec exec = Exec::parallel);

/// Loss/gradient of the objective above, exposed for finite-difference checks.
double logistic_loss(const SparseMatrix& X, const std::vector<int>& y,
                     const std::vector<double>& weights, double intercept, double l2,
                     Exec exec = Exec::serial);
void logistic_gradient(const SparseMatrix& X, const std::vector<int>& y,
                       const std::vector<double>& weights, double intercept, double l2,
                       std::vector<double>& grad_w, double& grad_b,
                       Exec exec = Exec::serial);

/// Random forest: bootstrap samples, Gini impurity splits, sqrt(d) feature
/// subsampling per split, majority vote. Each tree draws its RNG from
/// (rng_seed, tree index), so tree training order does not matter.
ModelArtifact train_rf(const SparseMatrix& X, const std::vector<int>& y,
                       const RfConfig& config, std::uint64_t rng_seed,
                       const std::vector<std::string>& feature_names,
                       Exec exec = Exec::parallel);

/// Minimal gradient-boosted trees for the declared slot: depth-limited
/// regression trees on the logistic-loss gradient with Newton leaf values.
ModelArtifact train_gbt(const SparseMatrix& X, const std::vector<int>& y,
                        const GbtConfig& config, std::uint64_t rng_seed,
                        const std::vector<std::string>& feature_names);

struct Prediction {
  double score = 0.0;  // positive-class probability / vote share
  int label = 0;       // score > 0.5, ties negative
};

std::vector<Prediction> predict(const ModelArtifact& model, const SparseMatrix& X);

/// Per-row class posteriors for naive Bayes (normalized to sum 1).
std::vector<std::array<double, 2>> nb_posteriors(const ModelArtifact& model,
                                                 const SparseMatrix& X);

/// Nonnegative importance per feature, descending, ties broken by name.
/// RF: Gini importance; logistic: |coefficient|; NB: |log-likelihood ratio|.
std::vector<std::pair<std::string, double>> importances(const ModelArtifact& model);

void save_model(const ModelArtifact& model, const std::string& path);
ModelArtifact load_model(const std::string& path);

}  // namespace tweetlex
