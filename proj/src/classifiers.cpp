#include "tablesense/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tablesense/errors.hpp"

namespace tablesense {

namespace {

constexpr double kVarianceFloor = 1e-9;

//! Fisher-Yates with explicit draws so shuffles are identical on every
//! platform (std::shuffle's output is implementation-defined).
void seeded_shuffle(std::vector<std::size_t>& v, std::mt19937& gen) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen() % i);
        std::swap(v[i - 1], v[j]);
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double euclidean(const FeatureVector& a, const FeatureVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// ---- training ------------------------------------------------------------

struct TrainingSet {
    std::vector<const FeatureVector*> x;
    std::vector<int> y; // 1 = positive class
    std::size_t dimension = 0;
};

TrainingSet collect(Task task, const std::vector<LabeledSample>& samples) {
    if (samples.empty()) throw EmptyTrainingSet("no training samples");

    TrainingSet set;
    set.dimension = samples.front().features.size();
    if (set.dimension == 0) throw DimensionMismatch("zero-length feature vectors");

    for (const LabeledSample& s : samples) {
        if (s.features.size() != set.dimension) {
            throw DimensionMismatch("feature length " + std::to_string(s.features.size()) +
                                    " != " + std::to_string(set.dimension));
        }
        for (double v : s.features) {
            if (!std::isfinite(v)) throw TrainingError("non-finite feature value");
        }
        set.x.push_back(&s.features);
        set.y.push_back(sample_label(s, task));
    }

    const auto pos = static_cast<std::size_t>(std::count(set.y.begin(), set.y.end(), 1));
    if (pos == 0 || pos == set.y.size()) {
        throw SingleClassTraining("training set contains only one class");
    }
    return set;
}

GaussianStats gaussian_stats(const TrainingSet& set, int wanted, std::size_t total) {
    GaussianStats g;
    g.mean.assign(set.dimension, 0.0);
    g.variance.assign(set.dimension, 0.0);

    std::size_t count = 0;
    for (std::size_t i = 0; i < set.y.size(); ++i) {
        if (set.y[i] != wanted) continue;
        ++count;
        for (std::size_t f = 0; f < set.dimension; ++f) g.mean[f] += (*set.x[i])[f];
    }
    for (double& m : g.mean) m /= static_cast<double>(count);

    for (std::size_t i = 0; i < set.y.size(); ++i) {
        if (set.y[i] != wanted) continue;
        for (std::size_t f = 0; f < set.dimension; ++f) {
            const double d = (*set.x[i])[f] - g.mean[f];
            g.variance[f] += d * d;
        }
    }
    for (double& v : g.variance) v = std::max(v / static_cast<double>(count), kVarianceFloor);

    g.prior = static_cast<double>(count) / static_cast<double>(total);
    return g;
}

NaiveBayesParams train_naive_bayes(const TrainingSet& set) {
    NaiveBayesParams p;
    p.negative = gaussian_stats(set, 0, set.y.size());
    p.positive = gaussian_stats(set, 1, set.y.size());
    return p;
}

double gini(std::size_t pos, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

int majority_label(const TrainingSet& set, const std::vector<std::size_t>& idx) {
    std::size_t pos = 0;
    for (std::size_t i : idx) pos += static_cast<std::size_t>(set.y[i]);
    const std::size_t neg = idx.size() - pos;
    return pos >= neg ? 1 : 0; // tie goes to the positive class
}

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

SplitChoice best_split(const TrainingSet& set, const std::vector<std::size_t>& idx,
                       std::size_t min_leaf) {
    SplitChoice best;
    const std::size_t total = idx.size();
    std::size_t total_pos = 0;
    for (std::size_t i : idx) total_pos += static_cast<std::size_t>(set.y[i]);
    const double parent = gini(total_pos, total);

    std::vector<std::pair<double, int>> column(total); // (value, label)
    for (std::size_t f = 0; f < set.dimension; ++f) {
        for (std::size_t r = 0; r < total; ++r) {
            column[r] = {(*set.x[idx[r]])[f], set.y[idx[r]]};
        }
        std::sort(column.begin(), column.end());

        // Sweep candidate thresholds at midpoints between distinct values.
        std::size_t left_n = 0, left_pos = 0;
        for (std::size_t r = 0; r + 1 < total; ++r) {
            ++left_n;
            left_pos += static_cast<std::size_t>(column[r].second);
            if (column[r].first == column[r + 1].first) continue;
            if (left_n < min_leaf || total - left_n < min_leaf) continue;

            const double thr = (column[r].first + column[r + 1].first) / 2.0;
            const double weighted =
                (static_cast<double>(left_n) * gini(left_pos, left_n) +
                 static_cast<double>(total - left_n) * gini(total_pos - left_pos, total - left_n)) /
                static_cast<double>(total);
            const double gain = parent - weighted;
            // Strict improvement keeps the first (lowest feature, lowest
            // threshold) candidate on ties, making training deterministic;
            // best.gain starts at 0 so zero-gain splits are never taken.
            if (gain > best.gain) {
                best.found = true;
                best.feature = f;
                best.threshold = thr;
                best.gain = gain;
            }
        }
    }
    return best;
}

int build_tree(const TrainingSet& set, std::vector<std::size_t> idx, std::size_t depth,
               const Hyperparams& hp, std::vector<TreeNode>& nodes) {
    const int self = static_cast<int>(nodes.size());
    nodes.emplace_back();

    std::size_t pos = 0;
    for (std::size_t i : idx) pos += static_cast<std::size_t>(set.y[i]);
    const bool pure = pos == 0 || pos == idx.size();

    SplitChoice split;
    if (!pure && depth < hp.tree_max_depth && idx.size() >= 2 * hp.tree_min_leaf) {
        split = best_split(set, idx, hp.tree_min_leaf);
    }
    if (!split.found) {
        nodes[self].leaf_label = majority_label(set, idx);
        return self;
    }

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx) {
        ((*set.x[i])[split.feature] <= split.threshold ? left : right).push_back(i);
    }
    nodes[self].feature = static_cast<int>(split.feature);
    nodes[self].threshold = split.threshold;
    idx.clear();
    idx.shrink_to_fit();
    const int l = build_tree(set, std::move(left), depth + 1, hp, nodes);
    const int r = build_tree(set, std::move(right), depth + 1, hp, nodes);
    nodes[self].left = l;
    nodes[self].right = r;
    return self;
}

DecisionTreeParams train_tree(const TrainingSet& set, const Hyperparams& hp) {
    DecisionTreeParams p;
    std::vector<std::size_t> all(set.y.size());
    std::iota(all.begin(), all.end(), 0);
    build_tree(set, std::move(all), 0, hp, p.nodes);
    return p;
}

KnnParams train_knn(const TrainingSet& set, const Hyperparams& hp) {
    KnnParams p;
    p.k = hp.knn_k;
    p.points.reserve(set.x.size());
    for (const FeatureVector* v : set.x) p.points.push_back(*v);
    p.labels = set.y;
    return p;
}

/*!
 * Sub-gradient descent on the L2-regularized hinge loss with the 1/(lambda*t)
 * step schedule. The visiting order is reshuffled each epoch from a seeded
 * generator, so training is reproducible bit for bit.
 */
SvmParams train_svm(const TrainingSet& set, const Hyperparams& hp) {
    SvmParams p;
    p.weights.assign(set.dimension, 0.0);
    p.bias = 0.0;

    std::mt19937 gen(hp.seed);
    std::vector<std::size_t> order(set.y.size());
    std::iota(order.begin(), order.end(), 0);

    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < hp.svm_epochs; ++epoch) {
        seeded_shuffle(order, gen);
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (hp.svm_lambda * static_cast<double>(t));
            const double y = set.y[i] == 1 ? 1.0 : -1.0;
            const FeatureVector& x = *set.x[i];
            const double margin = y * (dot(p.weights, x) - p.bias);

            const double keep = 1.0 - eta * hp.svm_lambda;
            for (double& w : p.weights) w *= keep;
            if (margin < 1.0) {
                for (std::size_t f = 0; f < set.dimension; ++f) {
                    p.weights[f] += eta * y * x[f];
                }
                p.bias -= eta * y;
            }
        }
    }
    return p;
}

// ---- prediction ----------------------------------------------------------

bool predict_naive_bayes(const NaiveBayesParams& p, const FeatureVector& x) {
    const auto log_posterior = [&](const GaussianStats& g) {
        double s = std::log(g.prior);
        for (std::size_t f = 0; f < x.size(); ++f) {
            const double d = x[f] - g.mean[f];
            s += -0.5 * std::log(2.0 * M_PI * g.variance[f]) - d * d / (2.0 * g.variance[f]);
        }
        return s;
    };
    return log_posterior(p.positive) >= log_posterior(p.negative);
}

bool predict_tree(const DecisionTreeParams& p, const FeatureVector& x) {
    int node = 0;
    while (p.nodes[static_cast<std::size_t>(node)].feature >= 0) {
        const TreeNode& n = p.nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return p.nodes[static_cast<std::size_t>(node)].leaf_label == 1;
}

bool predict_knn(const KnnParams& p, const FeatureVector& x) {
    std::vector<std::pair<double, std::size_t>> dist(p.points.size());
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        dist[i] = {euclidean(p.points[i], x), i};
    }
    const std::size_t k = std::min(p.k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    std::size_t votes[2] = {0, 0};
    double summed[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < k; ++i) {
        const int label = p.labels[dist[i].second];
        ++votes[label];
        summed[label] += dist[i].first;
    }
    if (votes[1] != votes[0]) return votes[1] > votes[0];
    if (summed[1] != summed[0]) return summed[1] < summed[0]; // nearer class wins
    return true;                                              // last resort: positive
}

bool predict_svm(const SvmParams& p, const FeatureVector& x) {
    return dot(p.weights, x) - p.bias > 0.0;
}

} // namespace

// ---- label plumbing --------------------------------------------------------

std::string to_string(Orientation o) {
    return o == Orientation::Horizontal ? "horizontal" : "vertical";
}

std::string to_string(Task t) {
    return t == Task::Genuineness ? "genuineness" : "orientation";
}

std::string to_string(Family f) {
    switch (f) {
    case Family::NaiveBayes: return "naive-bayes";
    case Family::DecisionTree: return "tree";
    case Family::Knn: return "knn";
    case Family::Svm: return "svm";
    }
    return "naive-bayes";
}

Orientation orientation_from_string(const std::string& s) {
    if (s == "horizontal") return Orientation::Horizontal;
    if (s == "vertical") return Orientation::Vertical;
    throw InvalidConfig("unknown orientation: " + s);
}

Task task_from_string(const std::string& s) {
    if (s == "genuineness") return Task::Genuineness;
    if (s == "orientation") return Task::Orientation;
    throw InvalidConfig("unknown task: " + s);
}

Family family_from_string(const std::string& s) {
    if (s == "naive-bayes" || s == "bayes" || s == "nb") return Family::NaiveBayes;
    if (s == "tree" || s == "decision-tree" || s == "cart") return Family::DecisionTree;
    if (s == "knn") return Family::Knn;
    if (s == "svm") return Family::Svm;
    throw InvalidConfig("unknown classifier family: " + s);
}

int sample_label(const LabeledSample& sample, Task task) {
    if (task == Task::Genuineness) return sample.genuine ? 1 : 0;
    if (!sample.genuine || !sample.orientation.has_value()) {
        throw TrainingError("orientation task requires genuine samples with orientation labels");
    }
    return *sample.orientation == Orientation::Horizontal ? 1 : 0;
}

std::string label_name(Task task, bool positive) {
    if (task == Task::Genuineness) return positive ? "genuine" : "non-genuine";
    return positive ? "horizontal" : "vertical";
}

EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn,
                              const std::string& positive_class) {
    EvalReport r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.tn = tn;
    r.positive_class = positive_class;

    const auto ratio = [](std::size_t num, std::size_t denom) {
        return denom == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(denom);
    };
    r.precision = ratio(tp, tp + fp);
    r.recall = ratio(tp, tp + fn);
    r.f_measure =
        r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    r.accuracy = ratio(tp + tn, tp + fp + fn + tn);
    return r;
}

// ---- public API ------------------------------------------------------------

Model train(Family family, Task task, const std::vector<LabeledSample>& samples,
            const Hyperparams& hp) {
    const TrainingSet set = collect(task, samples);

    Model model;
    model.family = family;
    model.task = task;
    model.dimension = set.dimension;

    switch (family) {
    case Family::NaiveBayes: model.params = train_naive_bayes(set); break;
    case Family::DecisionTree: model.params = train_tree(set, hp); break;
    case Family::Knn: model.params = train_knn(set, hp); break;
    case Family::Svm: model.params = train_svm(set, hp); break;
    }
    return model;
}

bool predict(const Model& model, const FeatureVector& x) {
    if (x.size() != model.dimension) {
        throw DimensionMismatch("query length " + std::to_string(x.size()) +
                                " != model dimension " + std::to_string(model.dimension));
    }
    return std::visit(
        [&](const auto& params) -> bool {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, NaiveBayesParams>) return predict_naive_bayes(params, x);
            else if constexpr (std::is_same_v<T, DecisionTreeParams>) return predict_tree(params, x);
            else if constexpr (std::is_same_v<T, KnnParams>) return predict_knn(params, x);
            else return predict_svm(params, x);
        },
        model.params);
}

EvalReport evaluate(const Model& model, const std::vector<LabeledSample>& test) {
    if (test.empty()) throw EmptyTestSet("empty test set");

    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const LabeledSample& s : test) {
        const bool actual = sample_label(s, model.task) == 1;
        const bool predicted = predict(model, s.features);
        if (actual && predicted) ++tp;
        else if (!actual && predicted) ++fp;
        else if (actual && !predicted) ++fn;
        else ++tn;
    }
    return report_from_counts(tp, fp, fn, tn, label_name(model.task, true));
}

EvalReport cross_validate(Family family, Task task, const std::vector<LabeledSample>& samples,
                          std::size_t folds, const Hyperparams& hp, unsigned seed) {
    if (folds < 2) throw TooFewSamples("cross-validation needs at least 2 folds");

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        (sample_label(samples[i], task) == 1 ? pos : neg).push_back(i);
    }
    if (pos.size() < folds || neg.size() < folds) {
        throw TooFewSamples("each class needs at least one sample per fold (" +
                            std::to_string(pos.size()) + " positive, " +
                            std::to_string(neg.size()) + " negative, " + std::to_string(folds) +
                            " folds)");
    }

    // Shuffle within each class, then deal round-robin so every fold gets a
    // proportional share of both classes.
    std::mt19937 gen(seed);
    seeded_shuffle(pos, gen);
    seeded_shuffle(neg, gen);
    std::vector<std::size_t> fold_of(samples.size(), 0);
    for (std::size_t i = 0; i < pos.size(); ++i) fold_of[pos[i]] = i % folds;
    for (std::size_t i = 0; i < neg.size(); ++i) fold_of[neg[i]] = i % folds;

    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<LabeledSample> train_set, test_set;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            (fold_of[i] == f ? test_set : train_set).push_back(samples[i]);
        }
        const Model model = train(family, task, train_set, hp);
        const EvalReport fold = evaluate(model, test_set);
        tp += fold.tp;
        fp += fold.fp;
        fn += fold.fn;
        tn += fold.tn;
    }
    return report_from_counts(tp, fp, fn, tn, label_name(task, true));
}

} // namespace tablesense
