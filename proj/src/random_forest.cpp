#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tweetlex/models.hpp"

namespace tweetlex {

namespace {

double gini(std::size_t pos, std::size_t n) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(n);
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

struct TreeBuilder {
  const SparseMatrix& X;
  const std::vector<int>& y;
  const RfConfig& cfg;
  std::mt19937_64 rng;
  std::size_t n_feat_per_split;
  double n_total;  // bootstrap sample size, for importance weighting

  std::vector<TreeNode> nodes;
  std::vector<double> importance;  // raw weighted impurity decrease

  // Draws m distinct feature indices by partial Fisher-Yates.
  std::vector<std::size_t> sample_features() {
    std::vector<std::size_t> idx(X.cols);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t m = std::min(n_feat_per_split, X.cols);
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> dist(i, X.cols - 1);
      std::swap(idx[i], idx[dist(rng)]);
    }
    idx.resize(m);
    return idx;
  }

  int make_leaf(std::size_t pos, std::size_t n) {
    TreeNode leaf;
    leaf.leaf_label = (2 * pos > n) ? 1 : 0;  // ties go negative
    nodes.push_back(leaf);
    return static_cast<int>(nodes.size() - 1);
  }

  int build(std::vector<std::size_t>& sample, std::size_t depth) {
    const std::size_t n = sample.size();
    std::size_t pos = 0;
    for (auto i : sample) pos += static_cast<std::size_t>(y[i]);

    const bool pure = (pos == 0 || pos == n);
    const bool depth_capped = cfg.max_depth != 0 && depth >= cfg.max_depth;
    if (pure || n < cfg.min_samples_split || depth_capped) return make_leaf(pos, n);

    const double parent_impurity = gini(pos, n);
    double best_decrease = 0.0;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    bool found = false;

    std::vector<std::pair<double, int>> vals;  // (value, label)
    for (auto f : sample_features()) {
      vals.clear();
      vals.reserve(n);
      for (auto i : sample) vals.emplace_back(X.at(i, f), y[i]);
      std::sort(vals.begin(), vals.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t left_pos = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_pos += static_cast<std::size_t>(vals[i].second);
        if (vals[i].first == vals[i + 1].first) continue;
        const std::size_t nl = i + 1, nr = n - nl;
        const double weighted =
            (static_cast<double>(nl) * gini(left_pos, nl) +
             static_cast<double>(nr) * gini(pos - left_pos, nr)) /
            static_cast<double>(n);
        const double decrease = parent_impurity - weighted;
        if (decrease > best_decrease) {
          best_decrease = decrease;
          best_feature = f;
          best_threshold = (vals[i].first + vals[i + 1].first) / 2.0;
          found = true;
        }
      }
    }
    if (!found) return make_leaf(pos, n);

    importance[best_feature] +=
        (static_cast<double>(n) / n_total) * best_decrease;

    std::vector<std::size_t> left, right;
    for (auto i : sample)
      (X.at(i, best_feature) <= best_threshold ? left : right).push_back(i);
    sample.clear();
    sample.shrink_to_fit();

    TreeNode split;
    split.feature = static_cast<int>(best_feature);
    split.threshold = best_threshold;
    nodes.push_back(split);
    const int self = static_cast<int>(nodes.size() - 1);
    nodes[self].left = build(left, depth + 1);
    nodes[self].right = build(right, depth + 1);
    return self;
  }
};

}  // namespace

ModelArtifact train_rf(const SparseMatrix& X, const std::vector<int>& y,
                       const RfConfig& config, std::uint64_t rng_seed,
                       const std::vector<std::string>& feature_names, Exec exec) {
  if (y.size() != X.rows) throw std::invalid_argument("train_rf: labels/rows mismatch");
  if (feature_names.size() != X.cols)
    throw std::invalid_argument("train_rf: feature name count mismatch");
  if (config.n_trees < 1) throw std::invalid_argument("train_rf: n_trees must be >= 1");
  if (X.rows == 0) throw std::invalid_argument("train_rf: empty training set");

  const std::size_t d = X.cols;
  const std::size_t m = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));

  std::vector<std::vector<TreeNode>> trees(config.n_trees);
  std::vector<std::vector<double>> tree_importance(config.n_trees);

  for_each_index(config.n_trees, exec, [&](std::size_t t) {
    std::seed_seq seq{static_cast<std::uint32_t>(rng_seed),
                      static_cast<std::uint32_t>(rng_seed >> 32),
                      static_cast<std::uint32_t>(t)};
    TreeBuilder builder{X, y, config, std::mt19937_64(seq), m,
                        static_cast<double>(X.rows)};
    builder.importance.assign(d, 0.0);

    std::uniform_int_distribution<std::size_t> row_dist(0, X.rows - 1);
    std::vector<std::size_t> sample(X.rows);
    for (auto& s : sample) s = row_dist(builder.rng);

    builder.build(sample, 0);
    trees[t] = std::move(builder.nodes);
    tree_importance[t] = std::move(builder.importance);
  });

  RandomForestParams p;
  p.config = config;
  p.trees = std::move(trees);
  p.importances.assign(d, 0.0);
  for (const auto& imp : tree_importance)
    for (std::size_t j = 0; j < d; ++j) p.importances[j] += imp[j];
  const double total = std::accumulate(p.importances.begin(), p.importances.end(), 0.0);
  if (total > 0.0)
    for (auto& v : p.importances) v /= total;

  ModelArtifact model;
  model.kind = ModelKind::random_forest;
  model.feature_names = feature_names;
  model.rng_seed = rng_seed;
  model.params = std::move(p);
  return model;
}

}  // namespace tweetlex
