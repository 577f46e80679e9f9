#include "jatecs/weighting.hpp"

#include <cmath>

#include "jatecs/error.hpp"
#include "jatecs/parallel.hpp"

namespace jatecs {
namespace {

const CorpusStats& pick_stats(const Index& index, const CorpusStats* reference, CorpusStats& own) {
  if (!reference) {
    own = recompute_stats(index);
    return own;
  }
  if (reference->documentFrequency.size() != index.featureCount())
    throw UsageError("reference statistics come from a different feature space");
  return *reference;
}

}  // namespace

CorpusStats recompute_stats(const Index& index) {
  const auto& content = index.content();
  CorpusStats stats;
  stats.documentCount = index.documentCount();
  stats.documentFrequency.resize(index.featureCount());
  for (FeatureId f = 0; f < index.featureCount(); ++f) stats.documentFrequency[f] = content.documentFrequency(f);
  stats.documentLength.resize(stats.documentCount);
  std::uint64_t total = 0;
  for (DocId d = 0; d < stats.documentCount; ++d) {
    stats.documentLength[d] = content.documentLength(d);
    total += stats.documentLength[d];
  }
  if (stats.documentCount > 0 && total > 0) {
    stats.averageLength = static_cast<double>(total) / stats.documentCount;
    stats.hasAverageLength = true;
  }
  return stats;
}

Index tfidf_normalized(const Index& index, const CorpusStats* reference) {
  CorpusStats own;
  const auto& stats = pick_stats(index, reference, own);
  const double N = stats.documentCount;
  const auto D = index.documentCount();
  std::vector<std::vector<WeightEntry>> rows(D);
  parallel_for(D, [&](std::size_t d) {
    auto& row = rows[d];
    double squared = 0.0;
    for (const auto& e : index.content().documentFeatures(static_cast<DocId>(d))) {
      const auto df = stats.documentFrequency[e.feature];
      const double weight = df == 0 ? 0.0 : e.count * std::log(N / df);
      row.push_back({e.feature, weight});
      squared += weight * weight;
    }
    if (squared > 0.0) {
      const double norm = std::sqrt(squared);
      for (auto& w : row) w.weight /= norm;
    }
  });
  return index.withWeighting(WeightingDb(std::move(rows)));
}

Index bm25(const Index& index, Bm25Params params, const CorpusStats* reference) {
  if (!(params.k1 > 0.0) || !std::isfinite(params.k1)) throw UsageError("BM25 k1 must be positive");
  if (!(params.b >= 0.0 && params.b <= 1.0)) throw UsageError("BM25 b must lie in [0, 1]");
  CorpusStats own;
  const auto& stats = pick_stats(index, reference, own);
  const double N = stats.documentCount;
  const auto D = index.documentCount();
  std::vector<std::vector<WeightEntry>> rows(D);
  parallel_for(D, [&](std::size_t d) {
    const auto entries = index.content().documentFeatures(static_cast<DocId>(d));
    const double length = static_cast<double>(index.content().documentLength(static_cast<DocId>(d)));
    const double relative = stats.hasAverageLength ? length / stats.averageLength : 1.0;
    const double norm = params.k1 * (1.0 - params.b + params.b * relative);
    auto& row = rows[d];
    row.reserve(entries.size());
    for (const auto& e : entries) {
      const double df = stats.documentFrequency[e.feature];
      const double idf = std::max(0.0, std::log((N - df + 0.5) / (df + 0.5)));
      const double tf = e.count;
      row.push_back({e.feature, idf * tf / (tf + norm)});
    }
  });
  return index.withWeighting(WeightingDb(std::move(rows)));
}

Index apply_weighting(const Index& index, WeightingScheme scheme, Bm25Params params, const CorpusStats* reference) {
  switch (scheme) {
    case WeightingScheme::TfIdf: return tfidf_normalized(index, reference);
    case WeightingScheme::Bm25: return bm25(index, params, reference);
  }
  throw InvariantError("unhandled weighting scheme");
}

}  // namespace jatecs
