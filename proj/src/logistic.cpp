#include <cmath>
#include <stdexcept>

#include "tweetlex/models.hpp"

namespace tweetlex {

namespace {

constexpr std::size_t kRowChunk = 4096;

double softplus(double z) {
  // log(1 + e^z), stable for large |z|
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<double> margins(const SparseMatrix& X, const std::vector<double>& w,
                            double b, Exec exec) {
  std::vector<double> z(X.rows);
  for_each_index(X.rows, exec, [&](std::size_t r) { z[r] = X.row_dot(r, w) + b; });
  return z;
}

struct GradPartial {
  std::vector<double> gw;
  double gb = 0.0;
};

}  // namespace

double logistic_loss(const SparseMatrix& X, const std::vector<int>& y,
                     const std::vector<double>& weights, double intercept, double l2,
                     Exec exec) {
  const auto z = margins(X, weights, intercept, exec);
  const double n = static_cast<double>(X.rows);
  double loss = chunked_reduce<double>(
      X.rows, kRowChunk, exec,
      [&](std::size_t begin, std::size_t end) {
        double acc = 0.0;
        for (std::size_t r = begin; r < end; ++r)
          acc += softplus(z[r]) - static_cast<double>(y[r]) * z[r];
        return acc;
      },
      0.0, [](double a, double b) { return a + b; });
  loss /= n;
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  return loss + l2 * sq / (2.0 * n);
}

void logistic_gradient(const SparseMatrix& X, const std::vector<int>& y,
                       const std::vector<double>& weights, double intercept, double l2,
                       std::vector<double>& grad_w, double& grad_b, Exec exec) {
  const auto z = margins(X, weights, intercept, exec);
  const double n = static_cast<double>(X.rows);
  GradPartial total = chunked_reduce<GradPartial>(
      X.rows, kRowChunk, exec,
      [&](std::size_t begin, std::size_t end) {
        GradPartial p;
        p.gw.assign(X.cols, 0.0);
        for (std::size_t r = begin; r < end; ++r) {
          const double resid = sigmoid(z[r]) - static_cast<double>(y[r]);
          p.gb += resid;
          for (std::size_t k = X.row_ptr[r]; k < X.row_ptr[r + 1]; ++k)
            p.gw[X.col_idx[k]] += X.values[k] * resid;
        }
        return p;
      },
      GradPartial{std::vector<double>(X.cols, 0.0), 0.0},
      [](GradPartial a, GradPartial b) {
        for (std::size_t j = 0; j < a.gw.size(); ++j) a.gw[j] += b.gw[j];
        a.gb += b.gb;
        return a;
      });
  grad_w.resize(X.cols);
  for (std::size_t j = 0; j < X.cols; ++j)
    grad_w[j] = total.gw[j] / n + l2 * weights[j] / n;
  grad_b = total.gb / n;
}

ModelArtifact train_logistic(const SparseMatrix& X, const std::vector<int>& y,
                             const LogisticConfig& config,
                             const std::vector<std::string>& feature_names,
                             Exec exec) {
  if (y.size() != X.rows) throw std::invalid_argument("train_logistic: labels/rows mismatch");
  if (feature_names.size() != X.cols)
    throw std::invalid_argument("train_logistic: feature name count mismatch");
  if (!(config.l2 >= 0.0)) throw std::invalid_argument("train_logistic: l2 must be >= 0");
  if (!(config.lr > 0.0)) throw std::invalid_argument("train_logistic: lr must be > 0");
  for (double v : X.values)
    if (!std::isfinite(v)) throw std::invalid_argument("train_logistic: non-finite feature value");
  for (int v : y)
    if (v != 0 && v != 1) throw std::invalid_argument("train_logistic: labels must be 0 or 1");

  LogisticParams p;
  p.config = config;
  p.weights.assign(X.cols, 0.0);
  p.intercept = 0.0;

  std::vector<double> gw;
  double gb = 0.0;
  double prev_loss = logistic_loss(X, y, p.weights, p.intercept, config.l2, exec);
  for (std::size_t it = 0; it < config.max_iter; ++it) {
    logistic_gradient(X, y, p.weights, p.intercept, config.l2, gw, gb, exec);
    for (std::size_t j = 0; j < X.cols; ++j) p.weights[j] -= config.lr * gw[j];
    p.intercept -= config.lr * gb;
    p.iterations = it + 1;
    const double loss = logistic_loss(X, y, p.weights, p.intercept, config.l2, exec);
    if (prev_loss - loss < config.tol) {
      p.converged = true;
      prev_loss = loss;
      break;
    }
    prev_loss = loss;
  }

  ModelArtifact model;
  model.kind = ModelKind::logistic;
  model.feature_names = feature_names;
  model.params = std::move(p);
  return model;
}

}  // namespace tweetlex
