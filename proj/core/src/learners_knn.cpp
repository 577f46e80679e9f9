#include <algorithm>
#include <cmath>

#include "learners_internal.hpp"

namespace jatecs::detail {

KnnModel train_knn(const KnnParams&, const Index& index) {
  const auto D = index.documentCount();
  const auto C = index.categoryCount();
  const auto& domain = index.domain();
  KnnModel model;
  model.documents.resize(D);
  model.norms.resize(D);
  model.labels.resize(D);
  for (DocId d = 0; d < D; ++d) {
    double squared = 0.0;
    for (const auto& w : index.weighting().documentWeights(d)) {
      if (w.weight == 0.0) continue;
      model.documents[d].emplace_back(w.feature, w.weight);
      squared += w.weight * w.weight;
    }
    model.norms[d] = std::sqrt(squared);
    auto labels = index.classification().documentCategories(d);
    model.labels[d].assign(labels.begin(), labels.end());
  }
  if (domain.isLocal()) {
    model.localNorms.assign(C, std::vector<double>(D, 0.0));
    for (CategoryId c = 0; c < C; ++c) {
      for (DocId d = 0; d < D; ++d) {
        double squared = 0.0;
        for (const auto& [f, w] : model.documents[d])
          if (domain.valid(f, c)) squared += w * w;
        model.localNorms[c][d] = std::sqrt(squared);
      }
    }
  }
  build_knn_postings(model, index.featureCount());
  return model;
}

std::vector<Neighbor> knn_neighbors(const KnnModel& model, const DomainDb& domain, std::uint32_t k,
                                    const ModelVector& v, std::optional<CategoryId> local) {
  const auto N = model.documents.size();
  std::vector<double> dots(N, 0.0);
  double squared = 0.0;
  for (std::size_t i = 0; i < v.features.size(); ++i) {
    const FeatureId f = v.features[i];
    if (local && !domain.valid(f, *local)) continue;
    const double w = v.weights[i];
    if (w == 0.0) continue;
    squared += w * w;
    if (f >= model.postings.size()) continue;
    for (const auto& [doc, weight] : model.postings[f]) dots[doc] += w * weight;
  }
  const double norm = std::sqrt(squared);
  const auto& norms = local ? model.localNorms[*local] : model.norms;

  std::vector<Neighbor> all(N);
  for (DocId n = 0; n < N; ++n) {
    const double denominator = norm * norms[n];
    all[n] = {n, denominator > 0.0 ? dots[n] / denominator : 0.0};
  }
  const auto keep = std::min<std::size_t>(k, N);
  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.doc < b.doc;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
  all.resize(keep);
  return all;
}

double knn_score(const KnnModel& model, const std::vector<Neighbor>& neighbors, CategoryId c) {
  double total = 0.0, matching = 0.0;
  for (const auto& n : neighbors) {
    total += n.similarity;
    const auto& labels = model.labels[n.doc];
    if (std::binary_search(labels.begin(), labels.end(), c)) matching += n.similarity;
  }
  return total > 0.0 ? matching / total : 0.0;
}

}  // namespace jatecs::detail

namespace jatecs {

void build_knn_postings(KnnModel& model, std::uint32_t featureCount) {
  model.postings.assign(featureCount, {});
  for (DocId d = 0; d < model.documents.size(); ++d)
    for (const auto& [f, w] : model.documents[d]) model.postings[f].emplace_back(d, w);
}

}  // namespace jatecs
