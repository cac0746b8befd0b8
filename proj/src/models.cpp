#include "tweetlex/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tweetlex {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::naive_bayes: return "naive_bayes";
    case ModelKind::logistic: return "logistic";
    case ModelKind::random_forest: return "random_forest";
    case ModelKind::gbt: return "gbt";
  }
  return "unknown";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "naive_bayes") return ModelKind::naive_bayes;
  if (name == "logistic") return ModelKind::logistic;
  if (name == "random_forest") return ModelKind::random_forest;
  if (name == "gbt") return ModelKind::gbt;
  throw std::invalid_argument("unknown model kind '" + name + "'");
}

namespace {

int walk_tree(const std::vector<TreeNode>& tree, const SparseMatrix& X, std::size_t row) {
  int node = 0;
  while (tree[node].feature >= 0) {
    node = X.at(row, static_cast<std::size_t>(tree[node].feature)) <= tree[node].threshold
               ? tree[node].left
               : tree[node].right;
  }
  return tree[node].leaf_label;
}

double gbt_margin(const GbtParams& p, const SparseMatrix& X, std::size_t row) {
  double f = p.base_score;
  for (const auto& tree : p.trees) {
    int node = 0;
    while (tree[node].feature >= 0) {
      node = X.at(row, static_cast<std::size_t>(tree[node].feature)) <= tree[node].threshold
                 ? tree[node].left
                 : tree[node].right;
    }
    f += tree[node].value;
  }
  return f;
}

}  // namespace

std::vector<Prediction> predict(const ModelArtifact& model, const SparseMatrix& X) {
  if (X.cols != model.feature_names.size())
    throw std::invalid_argument("predict: feature dimension mismatch");
  std::vector<Prediction> out(X.rows);

  if (model.kind == ModelKind::naive_bayes) {
    const auto post = nb_posteriors(model, X);
    for (std::size_t r = 0; r < X.rows; ++r) out[r].score = post[r][1];
  } else if (model.kind == ModelKind::logistic) {
    const auto& p = std::get<LogisticParams>(model.params);
    for (std::size_t r = 0; r < X.rows; ++r) {
      const double z = X.row_dot(r, p.weights) + p.intercept;
      out[r].score = 1.0 / (1.0 + std::exp(-z));
    }
  } else if (model.kind == ModelKind::random_forest) {
    const auto& p = std::get<RandomForestParams>(model.params);
    for (std::size_t r = 0; r < X.rows; ++r) {
      std::size_t votes = 0;
      for (const auto& tree : p.trees)
        votes += static_cast<std::size_t>(walk_tree(tree, X, r));
      out[r].score = static_cast<double>(votes) / static_cast<double>(p.trees.size());
    }
  } else {
    const auto& p = std::get<GbtParams>(model.params);
    for (std::size_t r = 0; r < X.rows; ++r)
      out[r].score = 1.0 / (1.0 + std::exp(-gbt_margin(p, X, r)));
  }

  for (auto& pr : out) {
    if (!std::isfinite(pr.score)) throw std::runtime_error("predict: non-finite score");
    pr.label = pr.score > 0.5 ? 1 : 0;
  }
  return out;
}

std::vector<std::pair<std::string, double>> importances(const ModelArtifact& model) {
  std::vector<std::pair<std::string, double>> out;
  const std::size_t d = model.feature_names.size();
  out.reserve(d);

  if (model.kind == ModelKind::random_forest) {
    const auto& p = std::get<RandomForestParams>(model.params);
    for (std::size_t j = 0; j < d; ++j)
      out.emplace_back(model.feature_names[j], p.importances[j]);
  } else if (model.kind == ModelKind::logistic) {
    const auto& p = std::get<LogisticParams>(model.params);
    for (std::size_t j = 0; j < d; ++j)
      out.emplace_back(model.feature_names[j], std::fabs(p.weights[j]));
  } else if (model.kind == ModelKind::naive_bayes) {
    const auto& p = std::get<NaiveBayesParams>(model.params);
    for (std::size_t j = 0; j < d; ++j)
      out.emplace_back(model.feature_names[j],
                       std::fabs(p.feature_log_prob[1][j] - p.feature_log_prob[0][j]));
  } else {
    throw std::invalid_argument("importances: not supported for model kind '" +
                                model_kind_name(model.kind) + "'");
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

namespace {

json tree_to_json(const std::vector<TreeNode>& tree) {
  json arr = json::array();
  for (const auto& n : tree)
    arr.push_back({n.feature, n.threshold, n.left, n.right, n.leaf_label});
  return arr;
}

std::vector<TreeNode> tree_from_json(const json& arr) {
  std::vector<TreeNode> tree;
  for (const auto& e : arr) {
    TreeNode n;
    n.feature = e.at(0).get<int>();
    n.threshold = e.at(1).get<double>();
    n.left = e.at(2).get<int>();
    n.right = e.at(3).get<int>();
    n.leaf_label = e.at(4).get<int>();
    tree.push_back(n);
  }
  return tree;
}

json reg_tree_to_json(const std::vector<RegNode>& tree) {
  json arr = json::array();
  for (const auto& n : tree)
    arr.push_back({n.feature, n.threshold, n.left, n.right, n.value});
  return arr;
}

std::vector<RegNode> reg_tree_from_json(const json& arr) {
  std::vector<RegNode> tree;
  for (const auto& e : arr) {
    RegNode n;
    n.feature = e.at(0).get<int>();
    n.threshold = e.at(1).get<double>();
    n.left = e.at(2).get<int>();
    n.right = e.at(3).get<int>();
    n.value = e.at(4).get<double>();
    tree.push_back(n);
  }
  return tree;
}

}  // namespace

void save_model(const ModelArtifact& model, const std::string& path) {
  ordered_json doc;
  doc["kind"] = model_kind_name(model.kind);
  doc["rng_seed"] = model.rng_seed;
  doc["feature_names"] = model.feature_names;

  ordered_json params;
  if (model.kind == ModelKind::naive_bayes) {
    const auto& p = std::get<NaiveBayesParams>(model.params);
    params["alpha"] = p.alpha;
    params["class_log_prior"] = {p.class_log_prior[0], p.class_log_prior[1]};
    params["feature_log_prob_neg"] = p.feature_log_prob[0];
    params["feature_log_prob_pos"] = p.feature_log_prob[1];
  } else if (model.kind == ModelKind::logistic) {
    const auto& p = std::get<LogisticParams>(model.params);
    params["l2"] = p.config.l2;
    params["lr"] = p.config.lr;
    params["max_iter"] = p.config.max_iter;
    params["tol"] = p.config.tol;
    params["converged"] = p.converged;
    params["iterations"] = p.iterations;
    params["intercept"] = p.intercept;
    params["weights"] = p.weights;
  } else if (model.kind == ModelKind::random_forest) {
    const auto& p = std::get<RandomForestParams>(model.params);
    params["n_trees"] = p.config.n_trees;
    params["max_depth"] = p.config.max_depth;
    params["min_samples_split"] = p.config.min_samples_split;
    params["importances"] = p.importances;
    json trees = json::array();
    for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
    params["trees"] = std::move(trees);
  } else {
    const auto& p = std::get<GbtParams>(model.params);
    params["n_rounds"] = p.config.n_rounds;
    params["max_depth"] = p.config.max_depth;
    params["shrinkage"] = p.config.shrinkage;
    params["base_score"] = p.base_score;
    json trees = json::array();
    for (const auto& t : p.trees) trees.push_back(reg_tree_to_json(t));
    params["trees"] = std::move(trees);
  }
  doc["parameters"] = std::move(params);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot write " + path);
  out << doc.dump(1) << '\n';
}

ModelArtifact load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("load_model: invalid model file " + path + ": " + e.what());
  }

  ModelArtifact model;
  model.kind = model_kind_from_name(doc.at("kind").get<std::string>());
  model.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
  model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
  const json& params = doc.at("parameters");

  if (model.kind == ModelKind::naive_bayes) {
    NaiveBayesParams p;
    p.alpha = params.at("alpha").get<double>();
    p.class_log_prior[0] = params.at("class_log_prior").at(0).get<double>();
    p.class_log_prior[1] = params.at("class_log_prior").at(1).get<double>();
    p.feature_log_prob[0] = params.at("feature_log_prob_neg").get<std::vector<double>>();
    p.feature_log_prob[1] = params.at("feature_log_prob_pos").get<std::vector<double>>();
    model.params = std::move(p);
  } else if (model.kind == ModelKind::logistic) {
    LogisticParams p;
    p.config.l2 = params.at("l2").get<double>();
    p.config.lr = params.at("lr").get<double>();
    p.config.max_iter = params.at("max_iter").get<std::size_t>();
    p.config.tol = params.at("tol").get<double>();
    p.converged = params.at("converged").get<bool>();
    p.iterations = params.at("iterations").get<std::size_t>();
    p.intercept = params.at("intercept").get<double>();
    p.weights = params.at("weights").get<std::vector<double>>();
    model.params = std::move(p);
  } else if (model.kind == ModelKind::random_forest) {
    RandomForestParams p;
    p.config.n_trees = params.at("n_trees").get<std::size_t>();
    p.config.max_depth = params.at("max_depth").get<std::size_t>();
    p.config.min_samples_split = params.at("min_samples_split").get<std::size_t>();
    p.importances = params.at("importances").get<std::vector<double>>();
    for (const auto& t : params.at("trees")) p.trees.push_back(tree_from_json(t));
    model.params = std::move(p);
  } else {
    GbtParams p;
    p.config.n_rounds = params.at("n_rounds").get<std::size_t>();
    p.config.max_depth = params.at("max_depth").get<std::size_t>();
    p.config.shrinkage = params.at("shrinkage").get<double>();
    p.base_score = params.at("base_score").get<double>();
    for (const auto& t : params.at("trees")) p.trees.push_back(reg_tree_from_json(t));
    model.params = std::move(p);
  }
  return model;
}

}  // namespace tweetlex
