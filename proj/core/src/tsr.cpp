#include "jatecs/tsr.hpp"

#include <algorithm>
#include <cmath>

#include "jatecs/error.hpp"
#include "jatecs/parallel.hpp"

namespace jatecs {
namespace {

// n/N * log2(n N / (row col)), with the 0 log 0 = 0 convention.
double ig_cell(double n, double N, double row, double col) {
  if (n == 0.0) return 0.0;
  return (n / N) * std::log2((n * N) / (row * col));
}

void sort_ranking(std::vector<RankedFeature>& entries) {
  std::sort(entries.begin(), entries.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.feature < b.feature;
  });
}

// scores[f][c] for every feature and category.
std::vector<std::vector<double>> score_matrix(const Index& index, TsrFunction function) {
  const auto F = index.featureCount();
  const auto C = index.categoryCount();
  const auto N = index.documentCount();
  const auto& content = index.content();
  const auto& classification = index.classification();
  std::vector<std::uint64_t> categorySize(C);
  for (CategoryId c = 0; c < C; ++c) categorySize[c] = classification.categoryDocuments(c).size();

  std::vector<std::vector<double>> scores(F);
  parallel_for(F, [&](std::size_t f) {
    std::vector<std::uint64_t> a(C, 0);
    const auto docs = content.featureDocuments(static_cast<FeatureId>(f));
    for (DocId d : docs)
      for (CategoryId c : classification.documentCategories(d)) ++a[c];
    auto& row = scores[f];
    row.resize(C);
    const std::uint64_t df = docs.size();
    for (CategoryId c = 0; c < C; ++c) {
      CooccurrenceCounts counts;
      counts.a = a[c];
      counts.b = df - a[c];
      counts.c = categorySize[c] - a[c];
      counts.d = N - counts.a - counts.b - counts.c;
      row[c] = tsr_score(counts, function);
    }
  });
  return scores;
}

}  // namespace

double tsr_score(const CooccurrenceCounts& counts, TsrFunction function) {
  const double A = static_cast<double>(counts.a);
  const double B = static_cast<double>(counts.b);
  const double C = static_cast<double>(counts.c);
  const double D = static_cast<double>(counts.d);
  const double N = A + B + C + D;
  if (counts.total() == 0) throw DataError("TSR score on an empty collection");

  switch (function) {
    case TsrFunction::InformationGain: {
      const double t = A + B, nt = C + D, c = A + C, nc = B + D;
      return ig_cell(A, N, t, c) + ig_cell(B, N, t, nc) + ig_cell(C, N, nt, c) + ig_cell(D, N, nt, nc);
    }
    case TsrFunction::ChiSquare: {
      const double denominator = (A + C) * (B + D) * (A + B) * (C + D);
      if (denominator == 0.0) return 0.0;
      const double diff = A * D - C * B;
      return N * diff * diff / denominator;
    }
    case TsrFunction::PointwiseMutualInformation:
      if (counts.a == 0) return 0.0;
      return std::log2((A * N) / ((A + B) * (A + C)));
    case TsrFunction::OddsRatio:
      return std::log(((A + 0.5) * (D + 0.5)) / ((B + 0.5) * (C + 0.5)));
  }
  throw InvariantError("unhandled TSR function");
}

FeatureRanking rank_features(const Index& index, TsrFunction function, CategoryId category) {
  if (category >= index.categoryCount()) throw UsageError("unknown category ID " + std::to_string(category));
  auto all = rank_all_categories(index, function);
  return std::move(all[category]);
}

std::vector<FeatureRanking> rank_all_categories(const Index& index, TsrFunction function) {
  const auto scores = score_matrix(index, function);
  const auto C = index.categoryCount();
  std::vector<FeatureRanking> rankings(C);
  parallel_for(C, [&](std::size_t c) {
    auto& ranking = rankings[c];
    ranking.category = static_cast<CategoryId>(c);
    ranking.entries.reserve(scores.size());
    for (FeatureId f = 0; f < scores.size(); ++f) ranking.entries.push_back({f, scores[f][c]});
    sort_ranking(ranking.entries);
  });
  return rankings;
}

FeatureRanking combine_rankings(std::span<const FeatureRanking> perCategory, std::span<const double> categoryWeights,
                                GlobalPolicy policy) {
  if (policy == GlobalPolicy::Weighted && categoryWeights.size() != perCategory.size())
    throw UsageError("weighted policy needs one weight per category");
  // Features absent from a ranking contribute nothing to it.
  std::vector<double> combined;
  std::vector<bool> seen;
  for (std::size_t c = 0; c < perCategory.size(); ++c) {
    for (const auto& [feature, score] : perCategory[c].entries) {
      if (feature >= combined.size()) {
        combined.resize(feature + 1, 0.0);
        seen.resize(feature + 1, false);
      }
      switch (policy) {
        case GlobalPolicy::Max:
          combined[feature] = seen[feature] ? std::max(combined[feature], score) : score;
          break;
        case GlobalPolicy::Sum:
          combined[feature] += score;
          break;
        case GlobalPolicy::Weighted:
          combined[feature] += categoryWeights[c] * score;
          break;
      }
      seen[feature] = true;
    }
  }
  FeatureRanking out;
  for (FeatureId f = 0; f < combined.size(); ++f)
    if (seen[f]) out.entries.push_back({f, combined[f]});
  sort_ranking(out.entries);
  return out;
}

FeatureRanking rank_features_global(const Index& index, TsrFunction function, GlobalPolicy policy) {
  const auto perCategory = rank_all_categories(index, function);
  std::vector<double> weights(index.categoryCount(), 0.0);
  const double D = index.documentCount();
  if (D > 0)
    for (CategoryId c = 0; c < weights.size(); ++c)
      weights[c] = static_cast<double>(index.classification().categoryDocuments(c).size()) / D;
  auto out = combine_rankings(perCategory, weights, policy);
  if (perCategory.empty())
    for (FeatureId f = 0; f < index.featureCount(); ++f) out.entries.push_back({f, 0.0});
  return out;
}

std::vector<FeatureId> select_round_robin(std::span<const FeatureRanking> rankings, std::size_t k) {
  if (k == 0) throw UsageError("number of features to select must be at least 1");
  std::vector<FeatureId> selected;
  std::vector<bool> taken;
  std::vector<std::size_t> cursor(rankings.size(), 0);
  auto isTaken = [&](FeatureId f) { return f < taken.size() && taken[f]; };
  bool progress = true;
  while (selected.size() < k && progress) {
    progress = false;
    for (std::size_t r = 0; r < rankings.size() && selected.size() < k; ++r) {
      const auto& entries = rankings[r].entries;
      auto& pos = cursor[r];
      while (pos < entries.size() && isTaken(entries[pos].feature)) ++pos;
      if (pos == entries.size()) continue;
      const FeatureId f = entries[pos++].feature;
      if (f >= taken.size()) taken.resize(f + 1, false);
      taken[f] = true;
      selected.push_back(f);
      progress = true;
    }
  }
  return selected;
}

std::vector<FeatureId> select_top(const FeatureRanking& ranking, std::size_t k) {
  if (k == 0) throw UsageError("number of features to select must be at least 1");
  std::vector<FeatureId> out;
  for (std::size_t i = 0; i < ranking.entries.size() && i < k; ++i) out.push_back(ranking.entries[i].feature);
  return out;
}

std::vector<std::vector<FeatureId>> select_local(std::span<const FeatureRanking> rankings, std::size_t k) {
  std::vector<std::vector<FeatureId>> out;
  out.reserve(rankings.size());
  for (const auto& ranking : rankings) out.push_back(select_top(ranking, k));
  return out;
}

Index apply_selection(const Index& index, std::span<const FeatureId> selected) {
  if (selected.empty()) throw UsageError("empty feature selection");
  return subset_features(index, selected);
}

Index apply_local_selection(const Index& index, const std::vector<std::vector<FeatureId>>& perCategory) {
  if (perCategory.size() != index.categoryCount())
    throw UsageError("local selection needs one feature set per category");
  std::vector<FeatureId> all;
  for (const auto& features : perCategory) all.insert(all.end(), features.begin(), features.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.empty()) throw UsageError("empty feature selection");

  Index reduced = subset_features(index, all);
  std::vector<std::pair<FeatureId, CategoryId>> pairs;
  for (CategoryId c = 0; c < perCategory.size(); ++c) {
    for (FeatureId old : perCategory[c]) {
      auto pos = std::lower_bound(all.begin(), all.end(), old);
      pairs.emplace_back(static_cast<FeatureId>(pos - all.begin()), c);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return reduced.withDomain(DomainDb::local(reduced.featureCount(), reduced.categoryCount(), std::move(pairs)));
}

}  // namespace jatecs
