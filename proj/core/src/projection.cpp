#include "jatecs/projection.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "jatecs/error.hpp"
#include "jatecs/parallel.hpp"
#include "jatecs/random.hpp"

namespace jatecs {
namespace {

// Signs: the first ceil(n/2) picks positive, then sorted by position.
SparseVector signed_vector(const std::vector<std::uint32_t>& positions) {
  const std::size_t n = positions.size();
  const double magnitude = 1.0 / std::sqrt(static_cast<double>(n));
  SparseVector out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(positions[i], i < (n + 1) / 2 ? magnitude : -magnitude);
  std::sort(out.begin(), out.end());
  return out;
}

// `count` distinct positions in [0, dim) by a partial Fisher-Yates over a
// sparse swap table.
std::vector<std::uint32_t> distinct_positions(Xoshiro256& rng, std::uint32_t dim, std::uint32_t count) {
  std::vector<std::uint32_t> out;
  out.reserve(count);
  std::unordered_map<std::uint32_t, std::uint32_t> swapped;
  auto at = [&](std::uint32_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(dim - i));
    const auto vi = at(i), vj = at(j);
    swapped[j] = vi;
    out.push_back(vj);
  }
  return out;
}

std::vector<SparseVector> random_indexing(std::uint32_t F, std::uint32_t dim, std::uint32_t nonzeros,
                                          std::uint64_t seed) {
  std::vector<SparseVector> vectors(F);
  parallel_for(F, [&](std::size_t f) {
    auto rng = Xoshiro256::for_stream(seed, f);
    vectors[f] = signed_vector(distinct_positions(rng, dim, nonzeros));
  });
  return vectors;
}

std::vector<SparseVector> lightweight_ri(std::uint32_t F, std::uint32_t dim, std::uint32_t nonzeros,
                                         std::uint64_t seed) {
  std::vector<SparseVector> vectors(F);
  if (F == 0) return vectors;
  Xoshiro256 rng(seed);
  std::vector<std::uint32_t> permutation(dim);
  std::size_t used = dim;  // consumed part of `permutation`
  auto refill = [&] {
    for (std::uint32_t i = 0; i < dim; ++i) permutation[i] = i;
    shuffle(std::span<std::uint32_t>(permutation), rng);
    used = 0;
  };

  std::vector<bool> inFeature(dim, false);
  for (std::uint32_t f = 0; f < F; ++f) {
    std::vector<std::uint32_t> picks;
    picks.reserve(nonzeros);
    while (picks.size() < nonzeros) {
      if (used == dim) refill();
      if (inFeature[permutation[used]]) {
        // Across a permutation boundary the same dimension can come up twice;
        // swap in the next unused one from the current permutation instead.
        std::size_t other = used + 1;
        while (inFeature[permutation[other]]) ++other;
        std::swap(permutation[used], permutation[other]);
      }
      const auto position = permutation[used++];
      inFeature[position] = true;
      picks.push_back(position);
    }
    for (auto p : picks) inFeature[p] = false;
    auto signs = Xoshiro256::for_stream(seed, f);
    shuffle(std::span<std::uint32_t>(picks), signs);
    vectors[f] = signed_vector(picks);
  }
  return vectors;
}

std::vector<SparseVector> achlioptas(std::uint32_t F, std::uint32_t dim, std::uint64_t seed) {
  const double magnitude = std::sqrt(3.0);
  std::vector<SparseVector> vectors(F);
  parallel_for(F, [&](std::size_t f) {
    auto rng = Xoshiro256::for_stream(seed, f);
    auto& v = vectors[f];
    for (std::uint32_t j = 0; j < dim; ++j) {
      const auto draw = rng.below(6);
      if (draw == 0) v.emplace_back(j, magnitude);
      else if (draw == 1) v.emplace_back(j, -magnitude);
    }
  });
  return vectors;
}

}  // namespace

bool ProjectionModel::operator==(const ProjectionModel& other) const {
  const bool sameFeatures = features == other.features || (features && other.features && *features == *other.features);
  return kind == other.kind && dim == other.dim && nonzeros == other.nonzeros && seed == other.seed && sameFeatures &&
         indexVectors == other.indexVectors;
}

ProjectionModel build_projection(const Index& index, ProjectionKind kind, std::uint32_t dim, std::uint32_t nonzeros,
                                 std::uint64_t seed) {
  if (dim == 0) throw UsageError("projection dimension must be at least 1");
  if (kind != ProjectionKind::Achlioptas) {
    if (nonzeros == 0) throw UsageError("random indexing needs at least one nonzero per vector");
    if (nonzeros > dim) throw UsageError("nonzeros cannot exceed the projection dimension");
  }
  ProjectionModel model;
  model.kind = kind;
  model.dim = dim;
  model.nonzeros = kind == ProjectionKind::Achlioptas ? 0 : nonzeros;
  model.seed = seed;
  model.features = index.featureDbPtr();
  const auto F = index.featureCount();
  switch (kind) {
    case ProjectionKind::RandomIndexing: model.indexVectors = random_indexing(F, dim, nonzeros, seed); break;
    case ProjectionKind::LightweightRI: model.indexVectors = lightweight_ri(F, dim, nonzeros, seed); break;
    case ProjectionKind::Achlioptas: model.indexVectors = achlioptas(F, dim, seed); break;
  }
  return model;
}

DenseMatrix project(const ProjectionModel& model, const Index& index) {
  const auto F = index.featureCount();
  std::vector<std::uint32_t> map(F);
  const bool identity = model.features == index.featureDbPtr() || (model.features && *model.features == index.features());
  for (FeatureId f = 0; f < F; ++f) {
    if (identity) {
      map[f] = f;
      continue;
    }
    auto found = model.features ? model.features->find(index.features().name(f)) : std::nullopt;
    if (!found) throw DataError("feature '" + index.features().name(f) + "' is unknown to the projection model");
    map[f] = *found;
  }

  DenseMatrix out;
  out.rows = index.documentCount();
  out.cols = model.dim;
  out.data.assign(out.rows * out.cols, 0.0);
  parallel_for(out.rows, [&](std::size_t d) {
    double* row = out.data.data() + d * out.cols;
    for (const auto& w : index.weighting().documentWeights(static_cast<DocId>(d)))
      for (const auto& [j, value] : model.indexVectors[map[w.feature]]) row[j] += w.weight * value;
  });
  return out;
}

Index to_latent_index(const DenseMatrix& matrix, const Index& source) {
  if (matrix.rows != source.documentCount()) throw UsageError("latent matrix does not match the document count");
  auto features = std::make_shared<FeatureDb>();
  for (std::size_t j = 0; j < matrix.cols; ++j) features->add("latent" + std::to_string(j));
  std::vector<std::vector<ContentEntry>> rows(matrix.rows);
  std::vector<std::vector<WeightEntry>> weights(matrix.rows);
  for (std::size_t d = 0; d < matrix.rows; ++d) {
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      const double value = matrix.at(d, j);
      if (value == 0.0) continue;
      rows[d].push_back({static_cast<FeatureId>(j), 1});
      weights[d].push_back({static_cast<FeatureId>(j), value});
    }
  }
  const auto F = features->size();
  return Index::assemble(source.categoryDbPtr(), std::move(features), source.documentDbPtr(),
                         std::make_shared<const ContentDb>(F, std::move(rows)), source.classificationDbPtr(),
                         std::make_shared<const DomainDb>(), std::make_shared<const WeightingDb>(std::move(weights)));
}

}  // namespace jatecs
