#include "jatecs/experiments.hpp"

#include <numeric>

#include "jatecs/error.hpp"
#include "jatecs/log.hpp"
#include "jatecs/random.hpp"

namespace jatecs {

std::vector<DocId> FoldPlan::testDocuments(std::uint32_t fold) const {
  std::vector<DocId> out;
  for (DocId d = 0; d < assignment.size(); ++d)
    if (assignment[d] == fold) out.push_back(d);
  return out;
}

std::vector<DocId> FoldPlan::trainingDocuments(std::uint32_t fold) const {
  std::vector<DocId> out;
  for (DocId d = 0; d < assignment.size(); ++d)
    if (assignment[d] != fold) out.push_back(d);
  return out;
}

FoldPlan make_folds(const Index& index, std::uint32_t k, FoldMode mode, std::uint64_t seed) {
  const auto D = index.documentCount();
  if (k < 2) throw UsageError("k must be at least 2");
  if (k > D) throw UsageError("k = " + std::to_string(k) + " exceeds the " + std::to_string(D) + " documents");

  FoldPlan plan;
  plan.k = k;
  plan.mode = mode;
  plan.seed = seed;
  std::vector<DocId> order(D);
  std::iota(order.begin(), order.end(), 0);
  Xoshiro256 rng(seed);
  shuffle(std::span<DocId>(order), rng);

  if (mode == FoldMode::Simple) {
    plan.assignment.resize(D);
    for (std::size_t i = 0; i < D; ++i) plan.assignment[order[i]] = static_cast<std::uint32_t>(i % k);
    return plan;
  }

  constexpr std::uint32_t kUnassigned = 0xffffffffU;
  plan.assignment.assign(D, kUnassigned);
  std::vector<std::uint64_t> size(k, 0);
  const auto& classification = index.classification();
  for (CategoryId c = 0; c < index.categoryCount(); ++c) {
    std::vector<std::uint64_t> positives(k, 0);
    for (DocId d = 0; d < D; ++d)
      if (plan.assignment[d] != kUnassigned && classification.contains(d, c)) ++positives[plan.assignment[d]];
    for (DocId d : order) {
      if (plan.assignment[d] != kUnassigned || !classification.contains(d, c)) continue;
      std::uint32_t best = 0;
      for (std::uint32_t f = 1; f < k; ++f) {
        if (positives[f] < positives[best] || (positives[f] == positives[best] && size[f] < size[best])) best = f;
      }
      plan.assignment[d] = best;
      ++positives[best];
      ++size[best];
    }
  }
  for (DocId d : order) {
    if (plan.assignment[d] != kUnassigned) continue;
    std::uint32_t best = 0;
    for (std::uint32_t f = 1; f < k; ++f)
      if (size[f] < size[best]) best = f;
    plan.assignment[d] = best;
    ++size[best];
  }
  return plan;
}

FoldPlan leave_one_out(const Index& index) {
  return make_folds(index, index.documentCount(), FoldMode::Simple, 0);
}

KFoldResult kfold_evaluate(const LearnerParams& params, const Index& index, const FoldPlan& plan) {
  if (plan.assignment.size() != index.documentCount()) throw UsageError("fold plan does not match the index");
  validate(params);
  KFoldResult result;
  result.total.perCategory.resize(index.categoryCount());
  for (std::uint32_t fold = 0; fold < plan.k; ++fold) {
    const auto testDocs = plan.testDocuments(fold);
    const auto trainDocs = plan.trainingDocuments(fold);
    if (testDocs.empty() || trainDocs.empty()) throw UsageError("fold " + std::to_string(fold) + " is empty");
    const Index training = subset_documents(index, trainDocs);
    const Index test = subset_documents(index, testDocs);
    for (CategoryId c = 0; c < index.categoryCount(); ++c)
      if (training.classification().categoryDocuments(c).empty() && !test.classification().categoryDocuments(c).empty())
        warn("fold " + std::to_string(fold) + ": no training positives for category '" +
             index.categories().name(c) + "'");
    const auto classifier = train(params, training);
    auto tables = compare(decisions_to_db(classify_all(classifier, test)), test.classification());
    result.total += tables;
    result.perFold.push_back(std::move(tables));
  }
  return result;
}

Objective parse_objective(const std::string& name) {
  if (name == "macrof1") return Objective::MacroF1;
  if (name == "microf1") return Objective::MicroF1;
  if (name == "accuracy") return Objective::Accuracy;
  throw UsageError("unknown objective '" + name + "' (expected macrof1, microf1 or accuracy)");
}

std::string objective_name(Objective objective) {
  switch (objective) {
    case Objective::MacroF1: return "macrof1";
    case Objective::MicroF1: return "microf1";
    case Objective::Accuracy: return "accuracy";
  }
  throw InvariantError("unhandled objective");
}

double objective_value(const ContingencyTableSet& tables, Objective objective) {
  const auto m = micro_macro(tables);
  switch (objective) {
    case Objective::MacroF1: return m.macroF1;
    case Objective::MicroF1: return m.microF1;
    case Objective::Accuracy: return m.microAccuracy;
  }
  throw InvariantError("unhandled objective");
}

GridResult grid_search(LearnerKind kind, const ParamGrid& grid, const Index& index, const FoldPlan& plan) {
  if (grid.axes.empty()) throw UsageError("parameter grid has no axes");
  std::size_t count = 1;
  for (const auto& [name, values] : grid.axes) {
    if (values.empty()) throw UsageError("grid axis '" + name + "' has no values");
    count *= values.size();
  }

  GridResult result;
  std::vector<LearnerParams> params;
  for (std::size_t i = 0; i < count; ++i) {
    GridPoint point;
    LearnerParams p = default_params(kind);
    std::size_t rest = i;
    std::vector<std::size_t> digits(grid.axes.size());
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      digits[a] = rest % grid.axes[a].second.size();
      rest /= grid.axes[a].second.size();
    }
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
      const auto& [name, values] = grid.axes[a];
      set_param(p, name, values[digits[a]]);
      point.assignment.emplace_back(name, values[digits[a]]);
    }
    params.push_back(std::move(p));
    result.points.push_back(std::move(point));
  }

  for (std::size_t i = 0; i < count; ++i) {
    result.points[i].objective = objective_value(kfold_evaluate(params[i], index, plan).total, grid.objective);
    if (result.points[i].objective > result.points[result.best].objective) result.best = i;
  }
  return result;
}

}  // namespace jatecs
