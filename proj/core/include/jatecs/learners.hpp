#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "jatecs/index.hpp"
#include "jatecs/projection.hpp"

namespace jatecs {

enum class LearnerKind { NaiveBayes, Rocchio, Knn, AdaBoostMH };

// Every learner decides positive when score >= threshold.

// Multinomial naive Bayes on raw counts, Laplace smoothing `alpha`,
// scored as the log-odds against the complement model.
struct NaiveBayesParams {
  double alpha = 1.0;
  double threshold = 0.0;
};

// Rocchio profiles on the weighting DB, negative components clipped.
// Decides positive when the cosine is strictly above `threshold`.
struct RocchioParams {
  double beta = 16.0;
  double gamma = 4.0;
  double threshold = 0.0;
};

// Exact cosine k-nearest neighbours on the weighting DB. The score of a
// category is the similarity mass of neighbours carrying it over the
// total similarity of the k neighbours.
struct KnnParams {
  std::uint32_t k = 30;
  double threshold = 0.5;
};

// Real AdaBoost.MH with one-feature presence stumps, one weight
// distribution per category.
struct BoostParams {
  std::uint32_t iterations = 100;
  double threshold = 0.0;
};

using LearnerParams = std::variant<NaiveBayesParams, RocchioParams, KnnParams, BoostParams>;

LearnerKind learner_kind(const LearnerParams& params);
// "nb", "rocchio", "knn", "boost".
std::string_view learner_name(LearnerKind kind);
LearnerKind parse_learner_kind(std::string_view name);
LearnerParams default_params(LearnerKind kind);

// Hyperparameter keys: nb alpha, threshold; rocchio beta, gamma,
// threshold; knn k, threshold; boost iterations, threshold. Unknown keys
// and out-of-range values throw UsageError.
void set_param(LearnerParams& params, std::string_view key, std::string_view value);
void validate(const LearnerParams& params);
std::vector<std::pair<std::string, std::string>> describe_params(const LearnerParams& params);

// ------------------------------------------------------------- payloads

struct NaiveBayesModel {
  std::vector<double> bias;                // log P(c) - log P(not c)
  std::vector<std::vector<double>> delta;  // [c][f] log theta(f|c) - log theta(f|not c)
};

struct RocchioModel {
  std::vector<SparseVector> profiles;
  std::vector<double> profileNorms;
};

struct KnnModel {
  std::vector<SparseVector> documents;  // training weight vectors
  std::vector<double> norms;
  std::vector<std::vector<CategoryId>> labels;
  // Local domain only: norms[c][n] of training vectors restricted to the
  // features valid in c.
  std::vector<std::vector<double>> localNorms;
  // Derived: feature -> (training doc, weight). Rebuilt on load.
  std::vector<std::vector<std::pair<DocId, double>>> postings;
};

struct BoostRound {
  FeatureId feature;
  double c0;  // output when the feature is absent
  double c1;  // output when present
};

struct BoostModel {
  double epsilon = 0.0;
  std::vector<std::vector<BoostRound>> rounds;  // [c][t]
  std::vector<std::vector<double>> z;           // [c][t] normalizer of round t
};

using ModelPayload = std::variant<NaiveBayesModel, RocchioModel, KnnModel, BoostModel>;

/// A trained multilabel classifier: one binary problem per category.
///
/// Holds a snapshot of the training feature space; an index in another
/// feature space is matched by feature text, unknown features ignored.
/// A category without training positives always scores the lowest double
/// and is listed in `degenerate`. Immutable after training and safe to
/// share between threads.
struct TrainedClassifier {
  LearnerParams params;
  std::vector<std::string> categories;
  std::shared_ptr<const FeatureDb> features;
  DomainDb domain;
  std::vector<double> thresholds;  // effective, per category
  std::vector<CategoryId> degenerate;
  ModelPayload model;

  std::uint32_t categoryCount() const noexcept { return static_cast<std::uint32_t>(categories.size()); }
  LearnerKind kind() const { return learner_kind(params); }
};

// Throws UsageError without documents or categories.
TrainedClassifier train(const LearnerParams& params, const Index& index);

// Fills KnnModel::postings; `train` and model loading call it.
void build_knn_postings(KnnModel& model, std::uint32_t featureCount);

struct ClassificationResult {
  std::vector<double> scores;
  std::vector<bool> decisions;
};

struct CategoryDecision {
  double score;
  bool decision;

  bool operator==(const CategoryDecision&) const = default;
};

/// Binds a classifier to an index; resolves the feature mapping once.
class DocumentScorer {
 public:
  DocumentScorer(const TrainedClassifier& classifier, const Index& index);

  ClassificationResult document(DocId doc) const;
  CategoryDecision cell(DocId doc, CategoryId category) const;

 private:
  struct Vector;
  Vector vectorize(DocId doc) const;

  const TrainedClassifier& classifier_;
  const Index& index_;
  std::vector<std::int64_t> map_;  // index fID -> model fID or -1
  bool identity_ = false;
};

ClassificationResult classify_document(const TrainedClassifier& classifier, const Index& index, DocId doc);
std::vector<CategoryDecision> classify_category(const TrainedClassifier& classifier, const Index& index,
                                                CategoryId category);

// Highest score, ties to the lower cID.
CategoryId argmax_category(std::span<const double> scores);
CategoryId one_vs_all_predict(const TrainedClassifier& classifier, const Index& index, DocId doc);

// Scores and decisions for every (document, category), documents in
// parallel.
struct ScoreTable {
  std::uint32_t documents = 0;
  std::uint32_t categories = 0;
  std::vector<double> scores;      // [d * categories + c]
  std::vector<std::uint8_t> decisions;

  double score(DocId d, CategoryId c) const { return scores[static_cast<std::size_t>(d) * categories + c]; }
  bool decision(DocId d, CategoryId c) const { return decisions[static_cast<std::size_t>(d) * categories + c] != 0; }
};

ScoreTable classify_all(const TrainedClassifier& classifier, const Index& index);
ClassificationDb decisions_to_db(const ScoreTable& table);

}  // namespace jatecs
