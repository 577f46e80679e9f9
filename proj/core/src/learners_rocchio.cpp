#include <algorithm>
#include <cmath>

#include "jatecs/parallel.hpp"
#include "learners_internal.hpp"

namespace jatecs::detail {

RocchioModel train_rocchio(const RocchioParams& params, const Index& index) {
  const auto F = index.featureCount();
  const auto C = index.categoryCount();
  const auto D = index.documentCount();
  const auto& domain = index.domain();

  RocchioModel model;
  model.profiles.assign(C, {});
  model.profileNorms.assign(C, 0.0);
  parallel_for(C, [&](std::size_t ci) {
    const auto c = static_cast<CategoryId>(ci);
    const auto& classification = index.classification();
    const double pos = static_cast<double>(classification.categoryDocuments(c).size());
    const double neg = static_cast<double>(D) - pos;
    if (pos == 0.0) return;
    std::vector<double> posSum(F, 0.0), negSum(F, 0.0);
    for (DocId d = 0; d < D; ++d) {
      auto& target = classification.contains(d, c) ? posSum : negSum;
      for (const auto& w : index.weighting().documentWeights(d)) target[w.feature] += w.weight;
    }
    auto& profile = model.profiles[c];
    double squared = 0.0;
    for (FeatureId f = 0; f < F; ++f) {
      if (!domain.valid(f, c)) continue;
      double value = params.beta / pos * posSum[f];
      if (neg > 0.0) value -= params.gamma / neg * negSum[f];
      if (value <= 0.0) continue;
      profile.emplace_back(f, value);
      squared += value * value;
    }
    model.profileNorms[c] = std::sqrt(squared);
  });
  return model;
}

double score_rocchio(const RocchioModel& model, const DomainDb& domain, const ModelVector& v, CategoryId c) {
  const auto& profile = model.profiles[c];
  double dot = 0.0, squared = 0.0;
  std::size_t p = 0;
  for (std::size_t i = 0; i < v.features.size(); ++i) {
    const FeatureId f = v.features[i];
    if (!domain.valid(f, c)) continue;
    squared += v.weights[i] * v.weights[i];
    while (p < profile.size() && profile[p].first < f) ++p;
    if (p < profile.size() && profile[p].first == f) dot += profile[p].second * v.weights[i];
  }
  const double norm = std::sqrt(squared) * model.profileNorms[c];
  // Rounding can push a self-similarity a hair past 1.
  return norm > 0.0 ? std::clamp(dot / norm, -1.0, 1.0) : 0.0;
}

}  // namespace jatecs::detail
