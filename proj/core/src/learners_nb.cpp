#include <cmath>
#include <limits>

#include "jatecs/parallel.hpp"
#include "learners_internal.hpp"

namespace jatecs::detail {

NaiveBayesModel train_naive_bayes(const NaiveBayesParams& params, const Index& index) {
  const auto F = index.featureCount();
  const auto C = index.categoryCount();
  const auto D = index.documentCount();
  const auto& content = index.content();
  const auto& domain = index.domain();

  std::vector<double> totalCounts(F, 0.0);
  for (DocId d = 0; d < D; ++d)
    for (const auto& e : content.documentFeatures(d)) totalCounts[e.feature] += e.count;

  NaiveBayesModel model;
  model.bias.assign(C, 0.0);
  model.delta.assign(C, {});
  parallel_for(C, [&](std::size_t ci) {
    const auto c = static_cast<CategoryId>(ci);
    const auto positives = index.classification().categoryDocuments(c);
    auto& delta = model.delta[c];
    delta.assign(F, 0.0);
    const double pos = static_cast<double>(positives.size());
    const double neg = static_cast<double>(D) - pos;
    if (positives.empty()) return;
    if (neg == 0.0) {
      model.bias[c] = std::numeric_limits<double>::max();
      return;
    }

    std::vector<double> posCounts(F, 0.0);
    for (DocId d : positives)
      for (const auto& e : content.documentFeatures(d)) posCounts[e.feature] += e.count;

    double posTotal = 0.0, negTotal = 0.0, vocabulary = 0.0;
    for (FeatureId f = 0; f < F; ++f) {
      if (!domain.valid(f, c)) continue;
      posTotal += posCounts[f];
      negTotal += totalCounts[f] - posCounts[f];
      vocabulary += 1.0;
    }
    const double alpha = params.alpha;
    const double posNorm = std::log(posTotal + alpha * vocabulary);
    const double negNorm = std::log(negTotal + alpha * vocabulary);
    for (FeatureId f = 0; f < F; ++f) {
      if (!domain.valid(f, c)) continue;
      const double negCount = totalCounts[f] - posCounts[f];
      delta[f] = (std::log(posCounts[f] + alpha) - posNorm) - (std::log(negCount + alpha) - negNorm);
    }
    model.bias[c] = std::log(pos) - std::log(neg);
  });
  return model;
}

double score_naive_bayes(const NaiveBayesModel& model, const ModelVector& v, CategoryId c) {
  double score = model.bias[c];
  if (score == std::numeric_limits<double>::max()) return score;
  const auto& delta = model.delta[c];
  for (std::size_t i = 0; i < v.features.size(); ++i) score += v.counts[i] * delta[v.features[i]];
  return score;
}

}  // namespace jatecs::detail
