#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "jatecs/experiments.hpp"
#include "jatecs/index.hpp"
#include "jatecs/learners.hpp"

namespace jatecs {

// 1 / (1 + exp(-slope * x)).
struct LogisticScaling {
  double slope = 1.0;
};

double scale_score(const LogisticScaling& scaling, double score);

enum class Quantifier { CC, ACC, MAX, PCC, PACC, PMAX };
inline constexpr std::array<Quantifier, 6> kQuantifiers{Quantifier::CC,  Quantifier::ACC,  Quantifier::MAX,
                                                         Quantifier::PCC, Quantifier::PACC, Quantifier::PMAX};
std::string_view quantifier_name(Quantifier quantifier);

struct RatePoint {
  double threshold;
  double tpr;
  double fpr;
};

/// Classifier behaviour on held-out documents of one category.
///
/// PCC/PACC probabilities are the logistic of the raw score, so they do
/// not depend on any threshold. PMAX uses the logistic centred on the MAX
/// threshold.
struct RatesEstimate {
  // False when the held-out data has no positives or no negatives; all
  // adjusted quantifiers then fall back to their unadjusted form.
  bool estimable = false;
  double threshold = 0.0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  std::uint64_t truePositives = 0;
  std::uint64_t falsePositives = 0;
  double tpr = 0.0;
  double fpr = 0.0;
  double tprProb = 0.0;
  double fprProb = 0.0;

  // One point per distinct score, ascending; rates count score >= threshold.
  std::vector<RatePoint> curve;
  // Curve point maximizing tpr - fpr (first one in ascending order).
  double maxThreshold = 0.0;
  std::uint64_t maxTruePositives = 0;
  std::uint64_t maxFalsePositives = 0;
  double maxTprProb = 0.0;
  double maxFprProb = 0.0;
};

// truth[i] != 0 marks a positive. Decisions are score >= threshold.
RatesEstimate estimate_rates(std::span<const double> scores, std::span<const std::uint8_t> truth, double threshold,
                             const LogisticScaling& scaling);

// clip((p - fpr) / (tpr - fpr)) to [0, 1]; p itself when |tpr - fpr| < 1e-9.
double adjusted_count(double p, double tpr, double fpr);
// Same correction from raw counts, evaluated as one rational division:
// p = predicted / total, tpr = tp / positives, fpr = fp / negatives.
double adjusted_count(std::uint64_t predicted, std::uint64_t total, std::uint64_t tp, std::uint64_t positives,
                      std::uint64_t fp, std::uint64_t negatives);

// The six estimates (in kQuantifiers order) for one category of a test set.
std::array<double, 6> quantify_scores(const RatesEstimate& rates, std::span<const double> scores,
                                      const LogisticScaling& scaling);

struct QuantifierPool {
  TrainedClassifier classifier;
  LogisticScaling scaling;
  std::uint32_t folds = 0;
  FoldMode mode = FoldMode::Stratified;
  std::vector<RatesEstimate> rates;  // by cID
};

/// Estimates rates from out-of-fold scores of a k-fold run over `training`
/// (k clamped to the document count; stratified unless a category has
/// fewer than two positives, then simple with a warning), and trains the
/// final classifier on all of `training`.
QuantifierPool learn_quantifiers(const LearnerParams& params, const Index& training, std::uint32_t folds = 50,
                                 LogisticScaling scaling = {}, std::uint64_t seed = 0);

struct PrevalenceEstimate {
  std::vector<std::array<double, 6>> values;  // [cID][quantifier]
};

// Uses only the documents' features; labels in `test` are never read.
PrevalenceEstimate quantify(const QuantifierPool& pool, const Index& test);

// |c| / D per category.
std::vector<double> true_prevalences(const Index& index);

struct QuantificationError {
  double ae = 0.0;
  double rae = 0.0;
  double kld = 0.0;
};

// AE = |p^ - p|, RAE = AE / max(p, eps), KLD(p || p^) over the binary
// distributions after smoothing both with (x + eps) / (1 + 2 eps), where
// eps = 1 / (2 testSize).
QuantificationError quantification_error(double estimate, double truth, std::size_t testSize);

struct QuantificationReport {
  std::vector<std::array<QuantificationError, 6>> perCategory;
  std::array<QuantificationError, 6> mean{};
};

QuantificationReport evaluate_quantification(const PrevalenceEstimate& estimate, std::span<const double> truth,
                                             std::size_t testSize);

}  // namespace jatecs
