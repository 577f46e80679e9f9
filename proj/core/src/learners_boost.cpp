#include <algorithm>
#include <cmath>
#include <limits>

#include "jatecs/parallel.hpp"
#include "learners_internal.hpp"

namespace jatecs::detail {

BoostModel train_boost(const BoostParams& params, const Index& index) {
  const auto F = index.featureCount();
  const auto C = index.categoryCount();
  const auto D = index.documentCount();
  const auto& content = index.content();
  const auto& domain = index.domain();

  BoostModel model;
  model.epsilon = 1.0 / D;
  model.rounds.assign(C, {});
  model.z.assign(C, {});
  const double eps = model.epsilon;

  parallel_for(C, [&](std::size_t ci) {
    const auto c = static_cast<CategoryId>(ci);
    const auto& classification = index.classification();
    if (classification.categoryDocuments(c).empty()) return;

    std::vector<bool> positive(D);
    for (DocId d = 0; d < D; ++d) positive[d] = classification.contains(d, c);
    std::vector<FeatureId> candidates;
    for (FeatureId f = 0; f < F; ++f)
      if (domain.valid(f, c)) candidates.push_back(f);
    if (candidates.empty()) return;

    std::vector<double> weight(D, 1.0 / D);
    std::vector<double> posPresent(F), negPresent(F);
    auto& rounds = model.rounds[c];
    auto& zs = model.z[c];
    for (std::uint32_t t = 0; t < params.iterations; ++t) {
      std::fill(posPresent.begin(), posPresent.end(), 0.0);
      std::fill(negPresent.begin(), negPresent.end(), 0.0);
      double posMass = 0.0, negMass = 0.0;
      for (DocId d = 0; d < D; ++d) {
        auto& present = positive[d] ? posPresent : negPresent;
        (positive[d] ? posMass : negMass) += weight[d];
        for (const auto& e : content.documentFeatures(d)) present[e.feature] += weight[d];
      }

      BoostRound best{candidates.front(), 0.0, 0.0};
      double bestZ = std::numeric_limits<double>::infinity();
      for (FeatureId f : candidates) {
        const double p1 = posPresent[f], n1 = negPresent[f];
        const double p0 = std::max(0.0, posMass - p1), n0 = std::max(0.0, negMass - n1);
        const double c1 = 0.5 * std::log((p1 + eps) / (n1 + eps));
        const double c0 = 0.5 * std::log((p0 + eps) / (n0 + eps));
        const double z = p1 * std::exp(-c1) + n1 * std::exp(c1) + p0 * std::exp(-c0) + n0 * std::exp(c0);
        if (z < bestZ) {
          bestZ = z;
          best = {f, c0, c1};
        }
      }

      double mass = 0.0;
      for (DocId d = 0; d < D; ++d) {
        const auto row = content.documentFeatures(d);
        const bool has = std::binary_search(row.begin(), row.end(), ContentEntry{best.feature, 0},
                                            [](const ContentEntry& a, const ContentEntry& b) { return a.feature < b.feature; });
        const double h = has ? best.c1 : best.c0;
        weight[d] *= std::exp(positive[d] ? -h : h);
        mass += weight[d];
      }
      for (auto& w : weight) w /= mass;
      rounds.push_back(best);
      zs.push_back(bestZ / (posMass + negMass));
    }
  });
  return model;
}

double score_boost(const BoostModel& model, const ModelVector& v, CategoryId c) {
  double score = 0.0;
  for (const auto& round : model.rounds[c]) {
    const bool has = std::binary_search(v.features.begin(), v.features.end(), round.feature);
    score += has ? round.c1 : round.c0;
  }
  return score;
}

}  // namespace jatecs::detail
