#ifndef TABLESENSE_CLASSIFIERS_HPP
#define TABLESENSE_CLASSIFIERS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tablesense/text_metrics.hpp"

namespace tablesense {

//! Feature vector consumed by the classifiers (length 4 for table traces).
using FeatureVector = std::vector<double>;

//! Whether a table's header tuple is its first row or its first column.
enum class Orientation { Horizontal, Vertical };

//! The two binary decisions the pipeline makes for each table.
enum class Task { Genuineness, Orientation };

//! The four classifier families.
enum class Family { NaiveBayes, DecisionTree, Knn, Svm };

std::string to_string(Orientation o);
std::string to_string(Task t);
std::string to_string(Family f);
Orientation orientation_from_string(const std::string& s);
Task task_from_string(const std::string& s);
Family family_from_string(const std::string& s);

/*!
 * One labeled training/evaluation example. The orientation label exists
 * exactly when the table is genuine; layout tables have no orientation.
 */
struct LabeledSample {
    FeatureVector features;
    bool genuine = false;
    std::optional<Orientation> orientation;
};

//! Training knobs. Every algorithm is deterministic under a fixed seed.
struct Hyperparams {
    unsigned seed = 42;            //!< RNG seed (SVM epoch shuffling)
    std::size_t knn_k = 5;         //!< neighbors consulted by the vote
    std::size_t tree_max_depth = 8;
    std::size_t tree_min_leaf = 2; //!< minimum samples on each side of a split
    std::size_t svm_epochs = 500;
    double svm_lambda = 0.01;      //!< L2 regularization strength
};

//! Per-class Gaussian statistics for naive Bayes.
struct GaussianStats {
    std::vector<double> mean;
    std::vector<double> variance; //!< floored at 1e-9 to survive constant features
    double prior = 0.0;
};

struct NaiveBayesParams {
    GaussianStats negative;
    GaussianStats positive;
};

/*!
 * One node of the decision tree, stored in a flat vector. Internal nodes
 * route x[feature] <= threshold to `left`, otherwise to `right`; leaves
 * have feature == -1 and carry the predicted label in `leaf_label`.
 */
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf_label = -1; //!< 1 = positive class, 0 = negative
};

struct DecisionTreeParams {
    std::vector<TreeNode> nodes; //!< nodes[0] is the root
};

struct KnnParams {
    std::vector<FeatureVector> points;
    std::vector<int> labels; //!< parallel to points; 1 = positive
    std::size_t k = 5;
};

//! Linear decision rule: positive iff <x, weights> - bias > 0.
struct SvmParams {
    std::vector<double> weights;
    double bias = 0.0;
};

/*!
 * A trained classifier. `task` fixes the label vocabulary: the positive
 * class is "genuine" for the genuineness task and "horizontal" for the
 * orientation task. `metric` records the configuration the training traces
 * were computed under so the pipeline can reject mismatched inputs.
 */
struct Model {
    Family family = Family::NaiveBayes;
    Task task = Task::Genuineness;
    std::size_t dimension = 0;
    MetricConfig metric;
    std::variant<NaiveBayesParams, DecisionTreeParams, KnnParams, SvmParams> params;
};

/*!
 * Evaluation summary for one binary task. All ratios are derived from the
 * confusion counts, so f_measure * (precision + recall) == 2 * precision *
 * recall holds exactly (0/0 ratios collapse to 0).
 */
struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    double accuracy = 0.0;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::string positive_class;
};

//! Builds an EvalReport from raw confusion counts (the single source of truth
//! for the precision/recall/F conventions used everywhere in the project).
EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn,
                              const std::string& positive_class);

//! The binary label a sample carries for the given task (1 = positive class).
//! For the orientation task the sample must be genuine and carry a label.
int sample_label(const LabeledSample& sample, Task task);

//! Name of the positive / negative class for a task ("genuine"/"non-genuine",
//! "horizontal"/"vertical").
std::string label_name(Task task, bool positive);

/*!
 * Trains one model. Requires at least one sample of each class (throws
 * EmptyTrainingSet / SingleClassTraining otherwise) and consistent feature
 * dimensions (DimensionMismatch). Deterministic under hp.seed.
 */
Model train(Family family, Task task, const std::vector<LabeledSample>& samples,
            const Hyperparams& hp = {});

//! Predicts whether x belongs to the task's positive class.
//! Throws DimensionMismatch when x's length differs from the model's.
bool predict(const Model& model, const FeatureVector& x);

//! Runs the model over a labeled test set and tallies the confusion matrix.
//! Throws EmptyTestSet on an empty input.
EvalReport evaluate(const Model& model, const std::vector<LabeledSample>& test);

/*!
 * Stratified k-fold cross-validation. Samples of each class are shuffled
 * (seeded) and dealt round-robin into folds, so every fold holds both
 * classes; each fold is scored by a model trained on the remaining folds
 * and the per-fold confusion matrices are pooled into one report. Throws
 * TooFewSamples when either class has fewer members than `folds`.
 */
EvalReport cross_validate(Family family, Task task, const std::vector<LabeledSample>& samples,
                          std::size_t folds, const Hyperparams& hp, unsigned seed);

//! Serializes a model to the versioned plain-text format (round-trips exactly).
std::string write_model(const Model& model);

//! Parses write_model output. Throws ModelFormatError on malformed input.
Model read_model(const std::string& text);

} // namespace tablesense

#endif // TABLESENSE_CLASSIFIERS_HPP
