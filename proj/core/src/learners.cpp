#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jatecs/error.hpp"
#include "jatecs/log.hpp"
#include "jatecs/parallel.hpp"
#include "jatecs/text_format.hpp"
#include "learners_internal.hpp"

namespace jatecs {
namespace {

constexpr double kLowest = std::numeric_limits<double>::lowest();

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

double parse_real(std::string_view key, std::string_view value) {
  auto parsed = parse_double(value);
  if (!parsed || !std::isfinite(*parsed))
    throw UsageError("parameter " + std::string(key) + ": '" + std::string(value) + "' is not a finite number");
  return *parsed;
}

std::uint32_t parse_count(std::string_view key, std::string_view value) {
  auto parsed = parse_uint(value);
  if (!parsed || *parsed == 0 || *parsed > 0xffffffffULL)
    throw UsageError("parameter " + std::string(key) + ": '" + std::string(value) + "' is not a positive integer");
  return static_cast<std::uint32_t>(*parsed);
}

[[noreturn]] void unknown_param(LearnerKind kind, std::string_view key) {
  throw UsageError("unknown parameter '" + std::string(key) + "' for learner " + std::string(learner_name(kind)));
}

double effective_threshold(const LearnerParams& params) {
  return std::visit(Overloaded{
                        [](const NaiveBayesParams& p) { return p.threshold; },
                        // Strictly above the configured similarity.
                        [](const RocchioParams& p) {
                          return std::nextafter(p.threshold, std::numeric_limits<double>::infinity());
                        },
                        [](const KnnParams& p) { return p.threshold; },
                        [](const BoostParams& p) { return p.threshold; },
                    },
                    params);
}

}  // namespace

LearnerKind learner_kind(const LearnerParams& params) {
  return std::visit(Overloaded{
                        [](const NaiveBayesParams&) { return LearnerKind::NaiveBayes; },
                        [](const RocchioParams&) { return LearnerKind::Rocchio; },
                        [](const KnnParams&) { return LearnerKind::Knn; },
                        [](const BoostParams&) { return LearnerKind::AdaBoostMH; },
                    },
                    params);
}

std::string_view learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::NaiveBayes: return "nb";
    case LearnerKind::Rocchio: return "rocchio";
    case LearnerKind::Knn: return "knn";
    case LearnerKind::AdaBoostMH: return "boost";
  }
  throw InvariantError("unhandled learner kind");
}

LearnerKind parse_learner_kind(std::string_view name) {
  if (name == "nb") return LearnerKind::NaiveBayes;
  if (name == "rocchio") return LearnerKind::Rocchio;
  if (name == "knn") return LearnerKind::Knn;
  if (name == "boost") return LearnerKind::AdaBoostMH;
  throw UsageError("unknown learner '" + std::string(name) + "' (expected nb, rocchio, knn or boost)");
}

LearnerParams default_params(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::NaiveBayes: return NaiveBayesParams{};
    case LearnerKind::Rocchio: return RocchioParams{};
    case LearnerKind::Knn: return KnnParams{};
    case LearnerKind::AdaBoostMH: return BoostParams{};
  }
  throw InvariantError("unhandled learner kind");
}

void set_param(LearnerParams& params, std::string_view key, std::string_view value) {
  const auto kind = learner_kind(params);
  std::visit(Overloaded{
                 [&](NaiveBayesParams& p) {
                   if (key == "alpha") p.alpha = parse_real(key, value);
                   else if (key == "threshold") p.threshold = parse_real(key, value);
                   else unknown_param(kind, key);
                 },
                 [&](RocchioParams& p) {
                   if (key == "beta") p.beta = parse_real(key, value);
                   else if (key == "gamma") p.gamma = parse_real(key, value);
                   else if (key == "threshold") p.threshold = parse_real(key, value);
                   else unknown_param(kind, key);
                 },
                 [&](KnnParams& p) {
                   if (key == "k") p.k = parse_count(key, value);
                   else if (key == "threshold") p.threshold = parse_real(key, value);
                   else unknown_param(kind, key);
                 },
                 [&](BoostParams& p) {
                   if (key == "iterations") p.iterations = parse_count(key, value);
                   else if (key == "threshold") p.threshold = parse_real(key, value);
                   else unknown_param(kind, key);
                 },
             },
             params);
  validate(params);
}

void validate(const LearnerParams& params) {
  std::visit(Overloaded{
                 [](const NaiveBayesParams& p) {
                   if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw UsageError("nb alpha must be positive");
                   if (!std::isfinite(p.threshold)) throw UsageError("threshold must be finite");
                 },
                 [](const RocchioParams& p) {
                   if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) throw UsageError("rocchio beta must be >= 0");
                   if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) throw UsageError("rocchio gamma must be >= 0");
                   if (!std::isfinite(p.threshold)) throw UsageError("threshold must be finite");
                 },
                 [](const KnnParams& p) {
                   if (p.k == 0) throw UsageError("knn k must be at least 1");
                   if (!std::isfinite(p.threshold)) throw UsageError("threshold must be finite");
                 },
                 [](const BoostParams& p) {
                   if (p.iterations == 0) throw UsageError("boost iterations must be at least 1");
                   if (!std::isfinite(p.threshold)) throw UsageError("threshold must be finite");
                 },
             },
             params);
}

std::vector<std::pair<std::string, std::string>> describe_params(const LearnerParams& params) {
  return std::visit(Overloaded{
                        [](const NaiveBayesParams& p) -> std::vector<std::pair<std::string, std::string>> {
                          return {{"alpha", format_double(p.alpha)}, {"threshold", format_double(p.threshold)}};
                        },
                        [](const RocchioParams& p) -> std::vector<std::pair<std::string, std::string>> {
                          return {{"beta", format_double(p.beta)},
                                  {"gamma", format_double(p.gamma)},
                                  {"threshold", format_double(p.threshold)}};
                        },
                        [](const KnnParams& p) -> std::vector<std::pair<std::string, std::string>> {
                          return {{"k", std::to_string(p.k)}, {"threshold", format_double(p.threshold)}};
                        },
                        [](const BoostParams& p) -> std::vector<std::pair<std::string, std::string>> {
                          return {{"iterations", std::to_string(p.iterations)},
                                  {"threshold", format_double(p.threshold)}};
                        },
                    },
                    params);
}

// ---------------------------------------------------------------- train

TrainedClassifier train(const LearnerParams& params, const Index& index) {
  validate(params);
  if (index.documentCount() == 0) throw UsageError("cannot train on an empty index");
  if (index.categoryCount() == 0) throw UsageError("cannot train without categories");

  TrainedClassifier out;
  out.params = params;
  out.categories = index.categories().names();
  out.features = index.featureDbPtr();
  out.domain = index.domain();
  out.thresholds.assign(index.categoryCount(), effective_threshold(params));
  for (CategoryId c = 0; c < index.categoryCount(); ++c) {
    if (index.classification().categoryDocuments(c).empty()) {
      out.degenerate.push_back(c);
      warn("category '" + index.categories().name(c) + "' has no training positives; it will never be assigned");
    }
  }

  out.model = std::visit(Overloaded{
                             [&](const NaiveBayesParams& p) -> ModelPayload { return detail::train_naive_bayes(p, index); },
                             [&](const RocchioParams& p) -> ModelPayload { return detail::train_rocchio(p, index); },
                             [&](const KnnParams& p) -> ModelPayload { return detail::train_knn(p, index); },
                             [&](const BoostParams& p) -> ModelPayload { return detail::train_boost(p, index); },
                         },
                         params);
  return out;
}

// ------------------------------------------------------------- classify

struct DocumentScorer::Vector : detail::ModelVector {};

DocumentScorer::DocumentScorer(const TrainedClassifier& classifier, const Index& index)
    : classifier_(classifier), index_(index) {
  identity_ = classifier.features == index.featureDbPtr() ||
              (classifier.features && *classifier.features == index.features());
  if (!identity_) {
    map_.assign(index.featureCount(), -1);
    for (FeatureId f = 0; f < index.featureCount(); ++f)
      if (auto found = classifier.features->find(index.features().name(f))) map_[f] = *found;
  }
}

DocumentScorer::Vector DocumentScorer::vectorize(DocId doc) const {
  if (doc >= index_.documentCount()) throw UsageError("unknown document ID " + std::to_string(doc));
  const auto content = index_.content().documentFeatures(doc);
  const auto weights = index_.weighting().documentWeights(doc);
  Vector v;
  v.features.reserve(content.size());
  v.counts.reserve(content.size());
  v.weights.reserve(content.size());
  std::size_t w = 0;
  for (const auto& e : content) {
    while (w < weights.size() && weights[w].feature < e.feature) ++w;
    const double weight = (w < weights.size() && weights[w].feature == e.feature) ? weights[w].weight : 0.0;
    std::int64_t target = identity_ ? static_cast<std::int64_t>(e.feature) : map_[e.feature];
    if (target < 0) continue;
    v.features.push_back(static_cast<FeatureId>(target));
    v.counts.push_back(e.count);
    v.weights.push_back(weight);
  }
  if (!identity_) {
    std::vector<std::size_t> order(v.features.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v.features[a] < v.features[b]; });
    Vector sorted;
    for (auto i : order) {
      sorted.features.push_back(v.features[i]);
      sorted.counts.push_back(v.counts[i]);
      sorted.weights.push_back(v.weights[i]);
    }
    v = std::move(sorted);
  }
  return v;
}

namespace {

bool is_degenerate(const TrainedClassifier& classifier, CategoryId c) {
  return std::binary_search(classifier.degenerate.begin(), classifier.degenerate.end(), c);
}

// Score of one category given the document vector; KNN neighbours are
// passed in so a whole-document pass computes them once.
double category_score(const TrainedClassifier& classifier, const detail::ModelVector& v, CategoryId c,
                      const std::vector<detail::Neighbor>* sharedNeighbors) {
  if (is_degenerate(classifier, c)) return kLowest;
  return std::visit(
      Overloaded{
          [&](const NaiveBayesModel& m) { return detail::score_naive_bayes(m, v, c); },
          [&](const RocchioModel& m) { return detail::score_rocchio(m, classifier.domain, v, c); },
          [&](const KnnModel& m) {
            const auto k = std::get<KnnParams>(classifier.params).k;
            if (sharedNeighbors && !classifier.domain.isLocal()) return detail::knn_score(m, *sharedNeighbors, c);
            const auto local = classifier.domain.isLocal() ? std::optional<CategoryId>(c) : std::nullopt;
            return detail::knn_score(m, detail::knn_neighbors(m, classifier.domain, k, v, local), c);
          },
          [&](const BoostModel& m) { return detail::score_boost(m, v, c); },
      },
      classifier.model);
}

}  // namespace

ClassificationResult DocumentScorer::document(DocId doc) const {
  const auto v = vectorize(doc);
  const auto C = classifier_.categoryCount();
  std::vector<detail::Neighbor> neighbors;
  const std::vector<detail::Neighbor>* shared = nullptr;
  if (const auto* knn = std::get_if<KnnModel>(&classifier_.model); knn && !classifier_.domain.isLocal()) {
    neighbors = detail::knn_neighbors(*knn, classifier_.domain, std::get<KnnParams>(classifier_.params).k, v,
                                      std::nullopt);
    shared = &neighbors;
  }
  ClassificationResult result;
  result.scores.resize(C);
  result.decisions.resize(C);
  for (CategoryId c = 0; c < C; ++c) {
    result.scores[c] = category_score(classifier_, v, c, shared);
    result.decisions[c] = !is_degenerate(classifier_, c) && result.scores[c] >= classifier_.thresholds[c];
  }
  return result;
}

CategoryDecision DocumentScorer::cell(DocId doc, CategoryId category) const {
  if (category >= classifier_.categoryCount()) throw UsageError("unknown category ID " + std::to_string(category));
  const auto v = vectorize(doc);
  const double score = category_score(classifier_, v, category, nullptr);
  return {score, !is_degenerate(classifier_, category) && score >= classifier_.thresholds[category]};
}

ClassificationResult classify_document(const TrainedClassifier& classifier, const Index& index, DocId doc) {
  return DocumentScorer(classifier, index).document(doc);
}

std::vector<CategoryDecision> classify_category(const TrainedClassifier& classifier, const Index& index,
                                                CategoryId category) {
  if (category >= classifier.categoryCount()) throw UsageError("unknown category ID " + std::to_string(category));
  DocumentScorer scorer(classifier, index);
  std::vector<CategoryDecision> out(index.documentCount(), CategoryDecision{0.0, false});
  parallel_for(out.size(), [&](std::size_t d) { out[d] = scorer.cell(static_cast<DocId>(d), category); });
  return out;
}

CategoryId argmax_category(std::span<const double> scores) {
  if (scores.empty()) throw UsageError("argmax over zero categories");
  CategoryId best = 0;
  for (CategoryId c = 1; c < scores.size(); ++c)
    if (scores[c] > scores[best]) best = c;
  return best;
}

CategoryId one_vs_all_predict(const TrainedClassifier& classifier, const Index& index, DocId doc) {
  return argmax_category(classify_document(classifier, index, doc).scores);
}

ScoreTable classify_all(const TrainedClassifier& classifier, const Index& index) {
  DocumentScorer scorer(classifier, index);
  ScoreTable table;
  table.documents = index.documentCount();
  table.categories = classifier.categoryCount();
  table.scores.resize(static_cast<std::size_t>(table.documents) * table.categories);
  table.decisions.resize(table.scores.size());
  parallel_for(table.documents, [&](std::size_t d) {
    const auto result = scorer.document(static_cast<DocId>(d));
    for (CategoryId c = 0; c < table.categories; ++c) {
      table.scores[d * table.categories + c] = result.scores[c];
      table.decisions[d * table.categories + c] = result.decisions[c] ? 1 : 0;
    }
  });
  return table;
}

ClassificationDb decisions_to_db(const ScoreTable& table) {
  std::vector<std::pair<DocId, CategoryId>> pairs;
  for (DocId d = 0; d < table.documents; ++d)
    for (CategoryId c = 0; c < table.categories; ++c)
      if (table.decision(d, c)) pairs.emplace_back(d, c);
  return ClassificationDb(table.documents, table.categories, std::move(pairs));
}

}  // namespace jatecs
