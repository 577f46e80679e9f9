#pragma once

#include <optional>
#include <vector>

#include "jatecs/learners.hpp"

namespace jatecs::detail {

// Training views: documents of the training index in its own feature space.
struct TrainingRow {
  std::span<const ContentEntry> content;
  std::span<const WeightEntry> weights;
};

inline TrainingRow training_row(const Index& index, DocId doc) {
  return {index.content().documentFeatures(doc), index.weighting().documentWeights(doc)};
}

// A document expressed in the model feature space, sorted by feature.
struct ModelVector {
  std::vector<FeatureId> features;
  std::vector<std::uint32_t> counts;
  std::vector<double> weights;
};

NaiveBayesModel train_naive_bayes(const NaiveBayesParams& params, const Index& index);
RocchioModel train_rocchio(const RocchioParams& params, const Index& index);
KnnModel train_knn(const KnnParams& params, const Index& index);
BoostModel train_boost(const BoostParams& params, const Index& index);

double score_naive_bayes(const NaiveBayesModel& model, const ModelVector& v, CategoryId c);
double score_rocchio(const RocchioModel& model, const DomainDb& domain, const ModelVector& v, CategoryId c);
double score_boost(const BoostModel& model, const ModelVector& v, CategoryId c);

struct Neighbor {
  DocId doc;
  double similarity;
};

// The k most similar training documents, ties to the lower training ID.
// With `local` set, similarities use only features valid in that category.
std::vector<Neighbor> knn_neighbors(const KnnModel& model, const DomainDb& domain, std::uint32_t k,
                                    const ModelVector& v, std::optional<CategoryId> local);
double knn_score(const KnnModel& model, const std::vector<Neighbor>& neighbors, CategoryId c);

}  // namespace jatecs::detail
