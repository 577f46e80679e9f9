#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jatecs/cooccurrence.hpp"
#include "jatecs/index.hpp"

namespace jatecs {

enum class TsrFunction { InformationGain, ChiSquare, PointwiseMutualInformation, OddsRatio };

// A = docs with f and c, B = f without c, C = c without f, D = neither.
//   IG   sum over the four cells of P(t',c') log2(P(t',c') / (P(t') P(c'))), 0 log 0 = 0
//   Chi2 N (AD - CB)^2 / ((A+C)(B+D)(A+B)(C+D)), 0 when a marginal is 0
//   PMI  log2(A N / ((A+B)(A+C))), 0 when A = 0
//   OR   ln((A+.5)(D+.5) / ((B+.5)(C+.5)))
// Throws DataError when N = 0.
double tsr_score(const CooccurrenceCounts& counts, TsrFunction function);

struct RankedFeature {
  FeatureId feature;
  double score;

  bool operator==(const RankedFeature&) const = default;
};

// Sorted by descending score, ties by ascending feature ID. `category` is
// empty for a global ranking.
struct FeatureRanking {
  std::optional<CategoryId> category;
  std::vector<RankedFeature> entries;

  bool operator==(const FeatureRanking&) const = default;
};

enum class GlobalPolicy { Max, Sum, Weighted };

// Scores of every feature for one category.
FeatureRanking rank_features(const Index& index, TsrFunction function, CategoryId category);
// One ranking per category, in cID order. Features are scored in parallel.
std::vector<FeatureRanking> rank_all_categories(const Index& index, TsrFunction function);
// Combines per-category scores: max_c, sum_c, or sum_c P(c) f(t,c) with
// P(c) = |c| / D.
FeatureRanking rank_features_global(const Index& index, TsrFunction function, GlobalPolicy policy);
FeatureRanking combine_rankings(std::span<const FeatureRanking> perCategory, std::span<const double> categoryWeights,
                                GlobalPolicy policy);

// Round robin over the rankings in the given order: each turn a ranking
// contributes its best feature not selected yet. Stops after k features
// or when every ranking is exhausted. Returned in selection order.
std::vector<FeatureId> select_round_robin(std::span<const FeatureRanking> rankings, std::size_t k);
std::vector<FeatureId> select_top(const FeatureRanking& ranking, std::size_t k);
// Top k of each category ranking.
std::vector<std::vector<FeatureId>> select_local(std::span<const FeatureRanking> rankings, std::size_t k);

// Global selection: keeps only the selected features. Local selection:
// keeps the union and switches the domain to Local with the given sets.
// Both throw UsageError on an empty selection.
Index apply_selection(const Index& index, std::span<const FeatureId> selected);
Index apply_local_selection(const Index& index, const std::vector<std::vector<FeatureId>>& perCategory);

}  // namespace jatecs
