#include <cmath>
#include <stdexcept>

#include "tweetlex/models.hpp"

namespace tweetlex {

namespace {

void check_labels(const SparseMatrix& X, const std::vector<int>& y) {
  if (y.size() != X.rows) throw std::invalid_argument("labels/rows size mismatch");
  for (int v : y)
    if (v != 0 && v != 1) throw std::invalid_argument("labels must be 0 or 1");
}

}  // namespace

ModelArtifact train_nb(const SparseMatrix& X, const std::vector<int>& y, double alpha,
                       const std::vector<std::string>& feature_names) {
  if (!(alpha > 0.0)) throw std::invalid_argument("train_nb: alpha must be > 0");
  check_labels(X, y);
  if (feature_names.size() != X.cols)
    throw std::invalid_argument("train_nb: feature name count mismatch");

  std::size_t n_class[2] = {0, 0};
  for (int v : y) ++n_class[v];
  if (n_class[0] == 0 || n_class[1] == 0)
    throw std::invalid_argument("train_nb: single-class training set");

  NaiveBayesParams p;
  p.alpha = alpha;
  const std::size_t d = X.cols;
  std::vector<double> count[2] = {std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  double total[2] = {0.0, 0.0};
  for (std::size_t r = 0; r < X.rows; ++r) {
    const int c = y[r];
    for (std::size_t k = X.row_ptr[r]; k < X.row_ptr[r + 1]; ++k) {
      const double v = X.values[k];
      if (!(v >= 0.0)) throw std::invalid_argument("train_nb: negative or non-finite feature");
      count[c][X.col_idx[k]] += v;
      total[c] += v;
    }
  }
  for (int c = 0; c < 2; ++c) {
    p.class_log_prior[c] =
        std::log(static_cast<double>(n_class[c]) / static_cast<double>(X.rows));
    p.feature_log_prob[c].resize(d);
    const double denom = total[c] + alpha * static_cast<double>(d);
    for (std::size_t j = 0; j < d; ++j)
      p.feature_log_prob[c][j] = std::log((count[c][j] + alpha) / denom);
  }

  ModelArtifact model;
  model.kind = ModelKind::naive_bayes;
  model.feature_names = feature_names;
  model.params = std::move(p);
  return model;
}

std::vector<std::array<double, 2>> nb_posteriors(const ModelArtifact& model,
                                                 const SparseMatrix& X) {
  const auto& p = std::get<NaiveBayesParams>(model.params);
  if (X.cols != model.feature_names.size())
    throw std::invalid_argument("nb_posteriors: dimension mismatch");
  std::vector<std::array<double, 2>> out(X.rows);
  for (std::size_t r = 0; r < X.rows; ++r) {
    double joint[2];
    for (int c = 0; c < 2; ++c) {
      double acc = p.class_log_prior[c];
      for (std::size_t k = X.row_ptr[r]; k < X.row_ptr[r + 1]; ++k)
        acc += X.values[k] * p.feature_log_prob[c][X.col_idx[k]];
      joint[c] = acc;
    }
    const double m = std::max(joint[0], joint[1]);
    const double z = std::exp(joint[0] - m) + std::exp(joint[1] - m);
    out[r] = {std::exp(joint[0] - m) / z, std::exp(joint[1] - m) / z};
  }
  return out;
}

}  // namespace tweetlex
