#include "tweetlex/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tweetlex {

std::string split_method_name(SplitMethod m) {
  switch (m) {
    case SplitMethod::tweet_level: return "tweet_level";
    case SplitMethod::user_level: return "user_level";
    case SplitMethod::out_of_network: return "out_of_network";
  }
  return "unknown";
}

SplitMethod split_method_from_name(const std::string& name) {
  if (name == "tweet_level") return SplitMethod::tweet_level;
  if (name == "user_level") return SplitMethod::user_level;
  if (name == "out_of_network") return SplitMethod::out_of_network;
  throw std::invalid_argument("unknown split method '" + name + "'");
}

namespace {

// Sorted ids per class; sorting first makes the seeded shuffle independent of
// corpus tweet order.
std::pair<std::vector<std::string>, std::vector<std::string>> ids_by_class(
    const LabeledCorpus& corpus) {
  std::vector<std::string> pos, neg;
  for (const auto& t : corpus.tweets)
    (corpus.labels.at(t.id) == Label::positive ? pos : neg).push_back(t.id);
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  return {std::move(pos), std::move(neg)};
}

std::mt19937_64 seeded_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

// Contiguous chunk [begin, end) of a list split into k near-equal parts;
// the first (n % k) chunks take the extra element.
std::pair<std::size_t, std::size_t> chunk_bounds(std::size_t n, std::size_t k,
                                                 std::size_t i) {
  const std::size_t base = n / k, extra = n % k;
  const std::size_t begin = i * base + std::min(i, extra);
  const std::size_t len = base + (i < extra ? 1 : 0);
  return {begin, begin + len};
}

std::size_t neg_sample_size(std::size_t n_neg, double fraction) {
  return static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n_neg)));
}

// Groups of the positive class in sorted key order.
std::vector<std::pair<std::string, std::vector<std::string>>> positive_groups(
    const LabeledCorpus& corpus) {
  std::map<std::string, std::vector<std::string>> by_group;
  for (const auto& t : corpus.tweets)
    if (corpus.labels.at(t.id) == Label::positive)
      by_group[corpus.groups.at(t.id)].push_back(t.id);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (auto& [g, ids] : by_group) {
    std::sort(ids.begin(), ids.end());
    out.emplace_back(g, std::move(ids));
  }
  return out;
}

}  // namespace

SplitPlan plan_tweet_level(const LabeledCorpus& corpus, std::size_t k,
                           std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("plan_tweet_level: k must be >= 2");
  auto [pos, neg] = ids_by_class(corpus);
  if (pos.size() < k || neg.size() < k)
    throw std::invalid_argument("plan_tweet_level: class smaller than k");

  auto rng = seeded_rng(seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);

  SplitPlan plan;
  plan.method = SplitMethod::tweet_level;
  plan.rng_seed = seed;
  plan.folds.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto& fold = plan.folds[i];
    const auto [pb, pe] = chunk_bounds(pos.size(), k, i);
    const auto [nb, ne] = chunk_bounds(neg.size(), k, i);
    for (std::size_t j = 0; j < pos.size(); ++j)
      (j >= pb && j < pe ? fold.test_ids : fold.train_ids).push_back(pos[j]);
    for (std::size_t j = 0; j < neg.size(); ++j)
      (j >= nb && j < ne ? fold.test_ids : fold.train_ids).push_back(neg[j]);
  }
  return plan;
}

SplitPlan plan_user_level(const LabeledCorpus& corpus, double neg_test_fraction,
                          std::uint64_t seed) {
  if (!(neg_test_fraction >= 0.0 && neg_test_fraction <= 1.0))
    throw std::invalid_argument("plan_user_level: neg_test_fraction out of [0,1]");
  const auto groups = positive_groups(corpus);
  if (groups.size() < 2)
    throw std::invalid_argument("plan_user_level: need at least 2 positive groups");
  auto [pos, neg] = ids_by_class(corpus);
  (void)pos;

  auto rng = seeded_rng(seed);
  const std::size_t m = neg_sample_size(neg.size(), neg_test_fraction);

  SplitPlan plan;
  plan.method = SplitMethod::user_level;
  plan.rng_seed = seed;
  plan.neg_test_fraction = neg_test_fraction;

  for (std::size_t g = 0; g < groups.size(); ++g) {
    SplitPlan::Fold fold;
    fold.test_ids = groups[g].second;
    for (std::size_t other = 0; other < groups.size(); ++other)
      if (other != g)
        fold.train_ids.insert(fold.train_ids.end(), groups[other].second.begin(),
                              groups[other].second.end());
    // Fresh negative sample for every fold, one shared stream.
    std::vector<std::string> neg_shuffled = neg;
    std::shuffle(neg_shuffled.begin(), neg_shuffled.end(), rng);
    fold.test_ids.insert(fold.test_ids.end(), neg_shuffled.begin(),
                         neg_shuffled.begin() + static_cast<std::ptrdiff_t>(m));
    fold.train_ids.insert(fold.train_ids.end(),
                          neg_shuffled.begin() + static_cast<std::ptrdiff_t>(m),
                          neg_shuffled.end());
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

SplitPlan plan_out_of_network(const LabeledCorpus& corpus,
                              const std::map<std::string, std::string>& community_of,
                              double neg_test_fraction, std::uint64_t seed) {
  if (!(neg_test_fraction >= 0.0 && neg_test_fraction <= 1.0))
    throw std::invalid_argument("plan_out_of_network: neg_test_fraction out of [0,1]");
  const auto groups = positive_groups(corpus);
  if (groups.empty())
    throw std::invalid_argument("plan_out_of_network: no positive groups");

  std::set<std::string> community_ids;
  std::map<std::string, std::vector<std::string>> ids_by_community;
  for (const auto& [group, ids] : groups) {
    auto it = community_of.find(group);
    if (it == community_of.end())
      throw std::invalid_argument("plan_out_of_network: group '" + group +
                                  "' has no community id");
    community_ids.insert(it->second);
    auto& dst = ids_by_community[it->second];
    dst.insert(dst.end(), ids.begin(), ids.end());
  }
  if (community_ids.size() != 2)
    throw std::invalid_argument("plan_out_of_network: expected exactly 2 communities, got " +
                                std::to_string(community_ids.size()));

  auto [pos, neg] = ids_by_class(corpus);
  (void)pos;
  auto rng = seeded_rng(seed);
  const std::size_t m = neg_sample_size(neg.size(), neg_test_fraction);

  const std::string first = *community_ids.begin();
  const std::string second = *std::next(community_ids.begin());

  SplitPlan plan;
  plan.method = SplitMethod::out_of_network;
  plan.rng_seed = seed;
  plan.neg_test_fraction = neg_test_fraction;

  for (int direction = 0; direction < 2; ++direction) {
    const auto& train_comm = ids_by_community[direction == 0 ? first : second];
    const auto& test_comm = ids_by_community[direction == 0 ? second : first];
    SplitPlan::Fold fold;
    fold.train_ids = train_comm;
    fold.test_ids = test_comm;
    std::vector<std::string> neg_shuffled = neg;
    std::shuffle(neg_shuffled.begin(), neg_shuffled.end(), rng);
    fold.test_ids.insert(fold.test_ids.end(), neg_shuffled.begin(),
                         neg_shuffled.begin() + static_cast<std::ptrdiff_t>(m));
    fold.train_ids.insert(fold.train_ids.end(),
                          neg_shuffled.begin() + static_cast<std::ptrdiff_t>(m),
                          neg_shuffled.end());
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

void validate_plan(const LabeledCorpus& corpus, const SplitPlan& plan) {
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const auto& fold = plan.folds[f];
    std::unordered_set<std::string> test(fold.test_ids.begin(), fold.test_ids.end());
    for (const auto& id : fold.train_ids)
      if (test.count(id))
        throw std::runtime_error("fold " + std::to_string(f) +
                                 ": id in both train and test: " + id);
    if (plan.method == SplitMethod::tweet_level) continue;
    std::unordered_set<std::string> test_groups;
    for (const auto& id : fold.test_ids)
      if (corpus.labels.at(id) == Label::positive)
        test_groups.insert(corpus.groups.at(id));
    for (const auto& id : fold.train_ids)
      if (corpus.labels.at(id) == Label::positive &&
          test_groups.count(corpus.groups.at(id)))
        throw std::runtime_error("fold " + std::to_string(f) +
                                 ": positive group leaks across the split: " +
                                 corpus.groups.at(id));
  }
}

double EvalReport::macro_f1() const {
  if (!avg_precision || !avg_recall) return 0.0;
  const double p = *avg_precision, r = *avg_recall;
  if (p + r <= 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

EvalReport summarize_folds(std::string model_name, SplitMethod method,
                           std::vector<Confusion> folds) {
  EvalReport report;
  report.model_name = std::move(model_name);
  report.method = method;
  report.folds = std::move(folds);

  double p_sum = 0.0, r_sum = 0.0;
  std::size_t p_n = 0, r_n = 0;
  for (const auto& c : report.folds) {
    if (auto p = c.precision()) {
      p_sum += *p;
      ++p_n;
    } else {
      ++report.undefined_precision_folds;
    }
    if (auto r = c.recall()) {
      r_sum += *r;
      ++r_n;
    } else {
      ++report.undefined_recall_folds;
    }
  }
  if (p_n > 0) report.avg_precision = p_sum / static_cast<double>(p_n);
  if (r_n > 0) report.avg_recall = r_sum / static_cast<double>(r_n);
  return report;
}

EvalReport evaluate_plan(const LabeledCorpus& corpus, const SplitPlan& plan,
                         const TrainerFn& trainer, const std::string& model_name) {
  validate_plan(corpus, plan);

  std::unordered_map<std::string, const Tweet*> by_id;
  for (const auto& t : corpus.tweets) by_id.emplace(t.id, &t);
  auto gather = [&](const std::vector<std::string>& ids) {
    std::vector<Tweet> tweets;
    tweets.reserve(ids.size());
    for (const auto& id : ids) {
      auto it = by_id.find(id);
      if (it == by_id.end())
        throw std::runtime_error("plan references unknown tweet id: " + id);
      tweets.push_back(*it->second);
    }
    return tweets;
  };

  std::vector<Confusion> folds;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    try {
      const auto train_tweets = gather(plan.folds[f].train_ids);
      const auto test_tweets = gather(plan.folds[f].test_ids);
      std::vector<int> train_labels;
      train_labels.reserve(train_tweets.size());
      for (const auto& t : train_tweets)
        train_labels.push_back(corpus.labels.at(t.id) == Label::positive ? 1 : 0);

      auto predictor = trainer(train_tweets, train_labels);
      const auto predicted = predictor(test_tweets);
      if (predicted.size() != test_tweets.size())
        throw std::runtime_error("predictor returned wrong number of labels");

      Confusion c;
      for (std::size_t i = 0; i < test_tweets.size(); ++i) {
        const bool truth = corpus.labels.at(test_tweets[i].id) == Label::positive;
        const bool pred = predicted[i] == 1;
        if (truth && pred) ++c.tp;
        else if (!truth && pred) ++c.fp;
        else if (truth && !pred) ++c.fn;
        else ++c.tn;
      }
      folds.push_back(c);
    } catch (const std::exception& e) {
      throw std::runtime_error("fold " + std::to_string(f) + ": " + e.what());
    }
  }
  return summarize_folds(model_name, plan.method, std::move(folds));
}

namespace {

ModelArtifact train_by_config(const ModelConfig& cfg, const SparseMatrix& X,
                              const std::vector<int>& y,
                              const std::vector<std::string>& names, Exec exec) {
  switch (cfg.kind) {
    case ModelKind::naive_bayes: return train_nb(X, y, cfg.nb_alpha, names);
    case ModelKind::logistic: return train_logistic(X, y, cfg.logistic, names, exec);
    case ModelKind::random_forest: return train_rf(X, y, cfg.rf, cfg.rng_seed, names, exec);
    case ModelKind::gbt: return train_gbt(X, y, cfg.gbt, cfg.rng_seed, names);
  }
  throw std::logic_error("train_by_config: bad model kind");
}

}  // namespace

EvalReport run_eval(const LabeledCorpus& corpus, const SplitPlan& plan,
                    const PipelineConfig& config) {
  TrainerFn trainer = [&config](const std::vector<Tweet>& train_tweets,
                                const std::vector<int>& train_labels) -> TweetPredictor {
    auto tokenized = preprocess_batch(train_tweets, config.pre, config.exec);
    auto space = std::make_shared<FeatureSpace>(
        fit_feature_space(tokenized, config.feat));
    const auto X = to_matrix(transform_batch(*space, tokenized, config.exec),
                             space->n_cols);
    auto model = std::make_shared<ModelArtifact>(
        train_by_config(config.model, X, train_labels, space->feature_names,
                        config.exec));
    const PreprocessConfig pre = config.pre;
    const Exec exec = config.exec;
    return [space, model, pre, exec](const std::vector<Tweet>& test_tweets) {
      auto tokenized_test = preprocess_batch(test_tweets, pre, exec);
      const auto X_test = to_matrix(transform_batch(*space, tokenized_test, exec),
                                    space->n_cols);
      const auto preds = predict(*model, X_test);
      std::vector<int> labels;
      labels.reserve(preds.size());
      for (const auto& p : preds) labels.push_back(p.label);
      return labels;
    };
  };
  return evaluate_plan(corpus, plan, trainer,
                       model_kind_name(config.model.kind));
}

namespace {

std::string pct(const std::optional<double>& v) {
  if (!v) return "undef";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", *v * 100.0);
  return buf;
}

std::string num(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

}  // namespace

std::string render_report_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << "Split Method     Model Type              Precision  Recall\n";
  out << "---------------  ----------------------  ---------  ------\n";
  std::string last_method;
  for (const auto& r : reports) {
    std::string method = split_method_name(r.method);
    if (method == last_method)
      method.clear();
    else
      last_method = method;
    char line[160];
    std::snprintf(line, sizeof line, "%-15s  %-22s  %9s  %6s\n", method.c_str(),
                  r.model_name.c_str(), pct(r.avg_precision).c_str(),
                  pct(r.avg_recall).c_str());
    out << line;
    if (r.undefined_precision_folds > 0)
      out << "                 (" << r.undefined_precision_folds
          << " fold(s) with no positive predictions excluded from precision)\n";
  }
  return out.str();
}

std::string report_csv(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << "split_method,model,fold,tp,fp,tn,fn,precision,recall\n";
  for (const auto& r : reports) {
    for (std::size_t f = 0; f < r.folds.size(); ++f) {
      const auto& c = r.folds[f];
      out << split_method_name(r.method) << ',' << r.model_name << ',' << f << ','
          << c.tp << ',' << c.fp << ',' << c.tn << ',' << c.fn << ','
          << num(c.precision()) << ',' << num(c.recall()) << '\n';
    }
    out << split_method_name(r.method) << ',' << r.model_name << ",avg,,,,,"
        << num(r.avg_precision) << ',' << num(r.avg_recall) << '\n';
  }
  return out.str();
}

}  // namespace tweetlex
