#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "jatecs/index.hpp"

namespace jatecs {

enum class ProjectionKind { RandomIndexing, LightweightRI, Achlioptas };

using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

/// Random projection of the feature space into `dim` latent dimensions.
///
/// RandomIndexing: each feature gets `nonzeros` distinct random positions,
/// ceil(nonzeros/2) of them +1/sqrt(nonzeros), the rest -1/sqrt(nonzeros).
/// LightweightRI: same values, but positions are dealt from a stream of
/// concatenated random permutations of the dimensions, so every dimension
/// is used floor or ceil of F*nonzeros/dim times.
/// Achlioptas: dense entries +sqrt(3), 0, -sqrt(3) with probabilities
/// 1/6, 2/3, 1/6 (zeros not stored); `nonzeros` is unused.
///
/// Index vectors are sorted by position. Generation uses Xoshiro256 with
/// one stream per feature, so the model depends only on F, the settings
/// and the seed.
struct ProjectionModel {
  ProjectionKind kind = ProjectionKind::RandomIndexing;
  std::uint32_t dim = 0;
  std::uint32_t nonzeros = 0;
  std::uint64_t seed = 0;
  std::shared_ptr<const FeatureDb> features;
  std::vector<SparseVector> indexVectors;  // by fID

  bool operator==(const ProjectionModel& other) const;
};

// Row-major D x cols matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
};

ProjectionModel build_projection(const Index& index, ProjectionKind kind, std::uint32_t dim, std::uint32_t nonzeros,
                                 std::uint64_t seed);

// row(d) = sum_f weight(d, f) * indexVector(f). Features of `index` are
// matched to the model by text; a feature the model lacks is a DataError.
DenseMatrix project(const ProjectionModel& model, const Index& index);

// Latent index: features "latent<j>", one entry per nonzero cell with
// count 1 and the cell value as weight. Documents, categories and labels
// are shared with `source`.
Index to_latent_index(const DenseMatrix& matrix, const Index& source);

}  // namespace jatecs
