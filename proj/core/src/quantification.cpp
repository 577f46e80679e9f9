#include "jatecs/quantification.hpp"

#include <algorithm>
#include <cmath>

#include "jatecs/error.hpp"
#include "jatecs/log.hpp"

namespace jatecs {
namespace {

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

double mean_scaled(std::span<const double> scores, double centre, const LogisticScaling& scaling) {
  if (scores.empty()) return 0.0;
  double sum = 0.0;
  for (double s : scores) sum += scale_score(scaling, s - centre);
  return sum / static_cast<double>(scores.size());
}


}  // namespace

double scale_score(const LogisticScaling& scaling, double score) {
  return 1.0 / (1.0 + std::exp(-scaling.slope * score));
}

std::string_view quantifier_name(Quantifier quantifier) {
  switch (quantifier) {
    case Quantifier::CC: return "CC";
    case Quantifier::ACC: return "ACC";
    case Quantifier::MAX: return "MAX";
    case Quantifier::PCC: return "PCC";
    case Quantifier::PACC: return "PACC";
    case Quantifier::PMAX: return "PMAX";
  }
  throw InvariantError("unhandled quantifier");
}

double adjusted_count(double p, double tpr, double fpr) {
  if (std::abs(tpr - fpr) < 1e-9) return clip01(p);
  return clip01((p - fpr) / (tpr - fpr));
}

double adjusted_count(std::uint64_t predicted, std::uint64_t total, std::uint64_t tp, std::uint64_t positives,
                      std::uint64_t fp, std::uint64_t negatives) {
  if (total == 0 || positives == 0 || negatives == 0) throw UsageError("adjusted count needs non-empty populations");
  const double tpr = static_cast<double>(tp) / static_cast<double>(positives);
  const double fpr = static_cast<double>(fp) / static_cast<double>(negatives);
  const double p = static_cast<double>(predicted) / static_cast<double>(total);
  if (std::abs(tpr - fpr) < 1e-9) return clip01(p);
  // (predicted/total - fp/neg) / (tp/pos - fp/neg)
  //   = (predicted*neg - fp*total) * pos / (total * (tp*neg - fp*pos))
  __extension__ using Wide = __int128;
  const Wide numerator = (static_cast<Wide>(predicted) * negatives - static_cast<Wide>(fp) * total) * positives;
  const Wide denominator = static_cast<Wide>(total) * (static_cast<Wide>(tp) * negatives - static_cast<Wide>(fp) * positives);
  return clip01(static_cast<double>(static_cast<long double>(numerator) / static_cast<long double>(denominator)));
}

RatesEstimate estimate_rates(std::span<const double> scores, std::span<const std::uint8_t> truth, double threshold,
                             const LogisticScaling& scaling) {
  if (scores.size() != truth.size()) throw UsageError("scores and truth differ in length");
  RatesEstimate r;
  r.threshold = threshold;
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < scores.size(); ++i) (truth[i] ? pos : neg).push_back(scores[i]);
  r.positives = pos.size();
  r.negatives = neg.size();
  for (double s : pos) r.truePositives += s >= threshold;
  for (double s : neg) r.falsePositives += s >= threshold;
  r.estimable = r.positives > 0 && r.negatives > 0;
  if (!r.estimable) {
    r.maxThreshold = threshold;
    return r;
  }
  const double P = static_cast<double>(r.positives), N = static_cast<double>(r.negatives);
  r.tpr = r.truePositives / P;
  r.fpr = r.falsePositives / N;
  r.tprProb = mean_scaled(pos, 0.0, scaling);
  r.fprProb = mean_scaled(neg, 0.0, scaling);

  // Sweep thresholds from the highest score down, counting scores >= t.
  std::vector<std::pair<double, std::uint8_t>> sorted;
  sorted.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) sorted.emplace_back(scores[i], truth[i] ? 1 : 0);
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;  // (tp, fp) per point, descending
  std::uint64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double t = sorted[i].first;
    while (i < sorted.size() && sorted[i].first == t) {
      (sorted[i].second ? tp : fp) += 1;
      ++i;
    }
    r.curve.push_back({t, tp / P, fp / N});
    counts.emplace_back(tp, fp);
  }
  std::reverse(r.curve.begin(), r.curve.end());
  std::reverse(counts.begin(), counts.end());

  std::size_t best = 0;
  for (std::size_t i = 1; i < r.curve.size(); ++i)
    if (r.curve[i].tpr - r.curve[i].fpr > r.curve[best].tpr - r.curve[best].fpr) best = i;
  r.maxThreshold = r.curve[best].threshold;
  r.maxTruePositives = counts[best].first;
  r.maxFalsePositives = counts[best].second;
  r.maxTprProb = mean_scaled(pos, r.maxThreshold, scaling);
  r.maxFprProb = mean_scaled(neg, r.maxThreshold, scaling);
  return r;
}

std::array<double, 6> quantify_scores(const RatesEstimate& rates, std::span<const double> scores,
                                      const LogisticScaling& scaling) {
  if (scores.empty()) throw DataError("cannot quantify an empty test set");
  const std::uint64_t n = scores.size();
  std::uint64_t predicted = 0, predictedAtMax = 0;
  for (double s : scores) {
    predicted += s >= rates.threshold;
    predictedAtMax += s >= rates.maxThreshold;
  }
  const double cc = static_cast<double>(predicted) / static_cast<double>(n);
  const double pcc = mean_scaled(scores, 0.0, scaling);

  std::array<double, 6> out{};
  out[static_cast<int>(Quantifier::CC)] = cc;
  out[static_cast<int>(Quantifier::PCC)] = pcc;
  if (!rates.estimable) {
    out[static_cast<int>(Quantifier::ACC)] = cc;
    out[static_cast<int>(Quantifier::MAX)] = cc;
    out[static_cast<int>(Quantifier::PACC)] = pcc;
    out[static_cast<int>(Quantifier::PMAX)] = pcc;
    return out;
  }
  out[static_cast<int>(Quantifier::ACC)] =
      adjusted_count(predicted, n, rates.truePositives, rates.positives, rates.falsePositives, rates.negatives);
  out[static_cast<int>(Quantifier::MAX)] = adjusted_count(predictedAtMax, n, rates.maxTruePositives, rates.positives,
                                                          rates.maxFalsePositives, rates.negatives);
  out[static_cast<int>(Quantifier::PACC)] = adjusted_count(pcc, rates.tprProb, rates.fprProb);
  out[static_cast<int>(Quantifier::PMAX)] = adjusted_count(
      mean_scaled(scores, rates.maxThreshold, scaling), rates.maxTprProb, rates.maxFprProb);
  return out;
}

QuantifierPool learn_quantifiers(const LearnerParams& params, const Index& training, std::uint32_t folds,
                                 LogisticScaling scaling, std::uint64_t seed) {
  if (folds < 2) throw UsageError("quantification needs at least 2 folds");
  if (!(scaling.slope > 0.0) || !std::isfinite(scaling.slope)) throw UsageError("logistic slope must be positive");
  const auto D = training.documentCount();
  const auto C = training.categoryCount();
  if (D < 2) throw UsageError("quantification needs at least 2 training documents");

  QuantifierPool pool;
  pool.scaling = scaling;
  pool.folds = std::min(folds, D);
  pool.mode = FoldMode::Stratified;
  for (CategoryId c = 0; c < C; ++c) {
    if (training.classification().categoryDocuments(c).size() < 2) {
      warn("category '" + training.categories().name(c) +
           "' has fewer than 2 positives; using simple folds for rate estimation");
      pool.mode = FoldMode::Simple;
      break;
    }
  }
  const auto plan = make_folds(training, pool.folds, pool.mode, seed);

  std::vector<double> scores(static_cast<std::size_t>(D) * C, 0.0);
  for (std::uint32_t fold = 0; fold < plan.k; ++fold) {
    const auto testDocs = plan.testDocuments(fold);
    const auto classifier = train(params, subset_documents(training, plan.trainingDocuments(fold)));
    const auto table = classify_all(classifier, subset_documents(training, testDocs));
    for (std::size_t i = 0; i < testDocs.size(); ++i)
      for (CategoryId c = 0; c < C; ++c) scores[static_cast<std::size_t>(testDocs[i]) * C + c] = table.score(i, c);
  }

  pool.classifier = train(params, training);
  pool.rates.resize(C);
  std::vector<double> column(D);
  std::vector<std::uint8_t> truth(D);
  for (CategoryId c = 0; c < C; ++c) {
    for (DocId d = 0; d < D; ++d) {
      column[d] = scores[static_cast<std::size_t>(d) * C + c];
      truth[d] = training.classification().contains(d, c) ? 1 : 0;
    }
    pool.rates[c] = estimate_rates(column, truth, pool.classifier.thresholds[c], scaling);
  }
  return pool;
}

PrevalenceEstimate quantify(const QuantifierPool& pool, const Index& test) {
  if (test.documentCount() == 0) throw DataError("cannot quantify an empty test set");
  const auto table = classify_all(pool.classifier, test);
  PrevalenceEstimate out;
  std::vector<double> column(test.documentCount());
  for (CategoryId c = 0; c < pool.classifier.categoryCount(); ++c) {
    for (DocId d = 0; d < test.documentCount(); ++d) column[d] = table.score(d, c);
    out.values.push_back(quantify_scores(pool.rates[c], column, pool.scaling));
  }
  return out;
}

std::vector<double> true_prevalences(const Index& index) {
  std::vector<double> out(index.categoryCount(), 0.0);
  if (index.documentCount() == 0) return out;
  for (CategoryId c = 0; c < out.size(); ++c)
    out[c] = static_cast<double>(index.classification().categoryDocuments(c).size()) / index.documentCount();
  return out;
}

QuantificationError quantification_error(double estimate, double truth, std::size_t testSize) {
  if (testSize == 0) throw UsageError("test size must be positive");
  const double eps = 1.0 / (2.0 * static_cast<double>(testSize));
  QuantificationError e;
  e.ae = std::abs(estimate - truth);
  e.rae = e.ae / std::max(truth, eps);
  const double p = (truth + eps) / (1.0 + 2.0 * eps);
  const double q = (estimate + eps) / (1.0 + 2.0 * eps);
  e.kld = p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return e;
}

QuantificationReport evaluate_quantification(const PrevalenceEstimate& estimate, std::span<const double> truth,
                                             std::size_t testSize) {
  if (estimate.values.size() != truth.size()) throw UsageError("estimates and true prevalences cover different categories");
  QuantificationReport report;
  for (std::size_t c = 0; c < truth.size(); ++c) {
    std::array<QuantificationError, 6> row{};
    for (std::size_t q = 0; q < kQuantifiers.size(); ++q) {
      row[q] = quantification_error(estimate.values[c][q], truth[c], testSize);
      report.mean[q].ae += row[q].ae;
      report.mean[q].rae += row[q].rae;
      report.mean[q].kld += row[q].kld;
    }
    report.perCategory.push_back(row);
  }
  if (!truth.empty()) {
    for (auto& m : report.mean) {
      m.ae /= static_cast<double>(truth.size());
      m.rae /= static_cast<double>(truth.size());
      m.kld /= static_cast<double>(truth.size());
    }
  }
  return report;
}

}  // namespace jatecs
