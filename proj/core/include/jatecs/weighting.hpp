#pragma once

#include <cstdint>
#include <vector>

#include "jatecs/index.hpp"

namespace jatecs {

struct CorpusStats {
  std::uint32_t documentCount = 0;
  std::vector<std::uint32_t> documentFrequency;  // by fID
  std::vector<std::uint64_t> documentLength;     // by dID, sum of counts
  double averageLength = 0.0;
  // False when no document has any feature; averageLength is then 0.
  bool hasAverageLength = false;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

enum class WeightingScheme { TfIdf, Bm25 };

CorpusStats recompute_stats(const Index& index);

// tf * ln(N / df), then each document scaled to unit Euclidean norm.
// Documents whose weights are all zero stay zero.
//
// `reference` supplies N, df and the average length from another
// collection in the same feature space (a training set when weighting a
// test set); features with df = 0 there get weight 0. Without it the
// index's own statistics are used.
Index tfidf_normalized(const Index& index, const CorpusStats* reference = nullptr);

// idf(t) * tf / (tf + k1 (1 - b + b |d| / avgdl)) with
// idf(t) = max(0, ln((N - df + 0.5) / (df + 0.5))).
Index bm25(const Index& index, Bm25Params params = {}, const CorpusStats* reference = nullptr);

Index apply_weighting(const Index& index, WeightingScheme scheme, Bm25Params params = {},
                      const CorpusStats* reference = nullptr);

}  // namespace jatecs
