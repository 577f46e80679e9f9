#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jatecs/evaluation.hpp"
#include "jatecs/index.hpp"
#include "jatecs/learners.hpp"

namespace jatecs {

enum class FoldMode { Simple, Stratified };

/// Fold assignment of every document.
///
/// Simple: documents shuffled with the seed, then dealt round robin.
/// Stratified: documents shuffled, then for each category in cID order its
/// still unassigned positives go one by one to the fold holding the fewest
/// positives of that category (then the smallest fold, then the lowest
/// index); unlabeled documents finally fill the smallest folds. With
/// single-label data the per-category counts of any two folds differ by at
/// most one.
struct FoldPlan {
  std::uint32_t k = 0;
  FoldMode mode = FoldMode::Simple;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> assignment;  // by dID

  std::vector<DocId> testDocuments(std::uint32_t fold) const;
  std::vector<DocId> trainingDocuments(std::uint32_t fold) const;
};

// Throws UsageError unless 2 <= k <= D. k = D is leave-one-out.
FoldPlan make_folds(const Index& index, std::uint32_t k, FoldMode mode, std::uint64_t seed);
FoldPlan leave_one_out(const Index& index);

struct KFoldResult {
  ContingencyTableSet total;            // cellwise sum over folds
  std::vector<ContingencyTableSet> perFold;
};

// Trains on each fold's complement and evaluates on the fold. Folds whose
// training part has no positives of a category produce a warning.
KFoldResult kfold_evaluate(const LearnerParams& params, const Index& index, const FoldPlan& plan);

enum class Objective { MacroF1, MicroF1, Accuracy };

Objective parse_objective(const std::string& name);
std::string objective_name(Objective objective);
double objective_value(const ContingencyTableSet& tables, Objective objective);

struct ParamGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  Objective objective = Objective::MacroF1;
};

struct GridPoint {
  std::vector<std::pair<std::string, std::string>> assignment;
  double objective = 0.0;
};

// Points enumerate the Cartesian product with the last axis varying
// fastest. `best` is the first point reaching the maximum.
struct GridResult {
  std::size_t best = 0;
  std::vector<GridPoint> points;
};

// Every point is validated before any training starts (UsageError).
GridResult grid_search(LearnerKind kind, const ParamGrid& grid, const Index& index, const FoldPlan& plan);

}  // namespace jatecs
