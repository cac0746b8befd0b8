#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tweetlex/models.hpp"

namespace tweetlex {

namespace {

// Greedy MSE regression tree on (gradient, hessian) pairs with Newton leaf
// values sum(-g)/sum(h); used only by the gradient-boosting slot.
struct RegTreeBuilder {
  const SparseMatrix& X;
  const std::vector<double>& grad;
  const std::vector<double>& hess;
  std::size_t max_depth;
  double shrinkage;
  std::vector<RegNode> nodes;

  int make_leaf(const std::vector<std::size_t>& sample) {
    double g = 0.0, h = 0.0;
    for (auto i : sample) {
      g += grad[i];
      h += hess[i];
    }
    RegNode leaf;
    leaf.value = h > 0.0 ? shrinkage * (-g / h) : 0.0;
    nodes.push_back(leaf);
    return static_cast<int>(nodes.size() - 1);
  }

  int build(const std::vector<std::size_t>& sample, std::size_t depth) {
    if (depth >= max_depth || sample.size() < 2) return make_leaf(sample);

    // Variance reduction on -g/h targets, weighted by h, reduces to the
    // classic score G^2/H maximization over children.
    double g_total = 0.0, h_total = 0.0;
    for (auto i : sample) {
      g_total += grad[i];
      h_total += hess[i];
    }
    const double parent_score = h_total > 0.0 ? g_total * g_total / h_total : 0.0;

    double best_gain = 1e-12;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    bool found = false;

    std::vector<std::pair<double, std::size_t>> vals;
    for (std::size_t f = 0; f < X.cols; ++f) {
      vals.clear();
      for (auto i : sample) vals.emplace_back(X.at(i, f), i);
      std::sort(vals.begin(), vals.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double gl = 0.0, hl = 0.0;
      for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        gl += grad[vals[i].second];
        hl += hess[vals[i].second];
        if (vals[i].first == vals[i + 1].first) continue;
        const double gr = g_total - gl, hr = h_total - hl;
        if (hl <= 0.0 || hr <= 0.0) continue;
        const double gain = gl * gl / hl + gr * gr / hr - parent_score;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
          best_threshold = (vals[i].first + vals[i + 1].first) / 2.0;
          found = true;
        }
      }
    }
    if (!found) return make_leaf(sample);

    std::vector<std::size_t> left, right;
    for (auto i : sample)
      (X.at(i, best_feature) <= best_threshold ? left : right).push_back(i);

    RegNode split;
    split.feature = static_cast<int>(best_feature);
    split.threshold = best_threshold;
    nodes.push_back(split);
    const int self = static_cast<int>(nodes.size() - 1);
    nodes[self].left = build(left, depth + 1);
    nodes[self].right = build(right, depth + 1);
    return self;
  }
};

double reg_tree_value(const std::vector<RegNode>& tree, const SparseMatrix& X,
                      std::size_t row) {
  int node = 0;
  while (tree[node].feature >= 0) {
    node = X.at(row, static_cast<std::size_t>(tree[node].feature)) <=
                   tree[node].threshold
               ? tree[node].left
               : tree[node].right;
  }
  return tree[node].value;
}

}  // namespace

ModelArtifact train_gbt(const SparseMatrix& X, const std::vector<int>& y,
                        const GbtConfig& config, std::uint64_t rng_seed,
                        const std::vector<std::string>& feature_names) {
  if (y.size() != X.rows) throw std::invalid_argument("train_gbt: labels/rows mismatch");
  if (feature_names.size() != X.cols)
    throw std::invalid_argument("train_gbt: feature name count mismatch");
  if (X.rows == 0) throw std::invalid_argument("train_gbt: empty training set");

  std::size_t pos = 0;
  for (int v : y) pos += static_cast<std::size_t>(v);
  if (pos == 0 || pos == y.size())
    throw std::invalid_argument("train_gbt: single-class training set");

  GbtParams p;
  p.config = config;
  const double rate = static_cast<double>(pos) / static_cast<double>(y.size());
  p.base_score = std::log(rate / (1.0 - rate));

  std::vector<double> f(X.rows, p.base_score);
  std::vector<double> grad(X.rows), hess(X.rows);
  std::vector<std::size_t> all(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) all[i] = i;

  for (std::size_t round = 0; round < config.n_rounds; ++round) {
    for (std::size_t i = 0; i < X.rows; ++i) {
      const double prob = 1.0 / (1.0 + std::exp(-f[i]));
      grad[i] = prob - static_cast<double>(y[i]);
      hess[i] = std::max(prob * (1.0 - prob), 1e-12);
    }
    RegTreeBuilder builder{X, grad, hess, config.max_depth, config.shrinkage, {}};
    builder.build(all, 0);
    for (std::size_t i = 0; i < X.rows; ++i)
      f[i] += reg_tree_value(builder.nodes, X, i);
    p.trees.push_back(std::move(builder.nodes));
  }

  ModelArtifact model;
  model.kind = ModelKind::gbt;
  model.feature_names = feature_names;
  model.rng_seed = rng_seed;
  model.params = std::move(p);
  return model;
}

}  // namespace tweetlex
