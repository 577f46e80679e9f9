#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "jatecs/error.hpp"
#include "jatecs/log.hpp"
#include "jatecs/quantification.hpp"
#include "synthetic.hpp"

using namespace jatecs;
using namespace jatecs::testing;

namespace {

constexpr int kCC = static_cast<int>(Quantifier::CC);
constexpr int kACC = static_cast<int>(Quantifier::ACC);
constexpr int kMAX = static_cast<int>(Quantifier::MAX);
constexpr int kPCC = static_cast<int>(Quantifier::PCC);
constexpr int kPACC = static_cast<int>(Quantifier::PACC);

struct QuietWarnings {
  std::vector<std::string> seen;
  QuietWarnings() {
    set_warning_handler([this](const std::string& m) { seen.push_back(m); });
  }
  ~QuietWarnings() { set_warning_handler(nullptr); }
};

double gaussian(Xoshiro256& rng) {
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// Positives ~ N(1, 1), negatives ~ N(-1, 1).
std::vector<double> gaussian_scores(std::size_t positives, std::size_t negatives, Xoshiro256& rng,
                                    std::vector<std::uint8_t>& truth) {
  std::vector<double> scores;
  truth.clear();
  for (std::size_t i = 0; i < positives; ++i) {
    scores.push_back(1.0 + gaussian(rng));
    truth.push_back(1);
  }
  for (std::size_t i = 0; i < negatives; ++i) {
    scores.push_back(-1.0 + gaussian(rng));
    truth.push_back(0);
  }
  return scores;
}

double kld_oracle(double truth, double estimate, double eps) {
  const double p[2] = {(truth + eps) / (1 + 2 * eps), (1 - truth + eps) / (1 + 2 * eps)};
  const double q[2] = {(estimate + eps) / (1 + 2 * eps), (1 - estimate + eps) / (1 + 2 * eps)};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) sum += p[i] * std::log(p[i] / q[i]);
  return sum;
}

}  // namespace

TEST_CASE("logistic scaling") {
  CHECK(scale_score({}, 0.0) == 0.5);
  CHECK(scale_score({}, std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(scale_score({2.0}, std::log(3.0) / 2) == doctest::Approx(0.75).epsilon(1e-15));
  double previous = 0.0;
  for (double x = -40; x <= 40; x += 0.5) {
    const double y = scale_score({}, x);
    CHECK(y >= previous);
    CHECK(y <= 1.0);
    previous = y;
  }
}

TEST_CASE("adjusted count") {
  // (0.5 - 0.2) / (0.8 - 0.2)
  CHECK(adjusted_count(1000, 2000, 800, 1000, 200, 1000) == 0.5);
  CHECK(adjusted_count(0.5, 0.8, 0.2) == doctest::Approx(0.5).epsilon(1e-15));
  // (0.1 - 0.2) / 0.6 = -1/6 clips to 0.
  CHECK(adjusted_count(0.1, 0.8, 0.2) == 0.0);
  CHECK(adjusted_count(100, 1000, 800, 1000, 200, 1000) == 0.0);
  CHECK(adjusted_count(0.95, 0.8, 0.2) == 1.0);
  // No separation: the unadjusted value.
  CHECK(adjusted_count(0.37, 0.4, 0.4) == 0.37);
  CHECK(adjusted_count(0.37, 0.4, 0.4 + 1e-12) == 0.37);
  CHECK(adjusted_count(37, 100, 4, 10, 4, 10) == 0.37);
  // A perfect classifier needs no correction.
  CHECK(adjusted_count(0.3, 1.0, 0.0) == 0.3);
  CHECK(adjusted_count(3, 10, 7, 7, 0, 5) == 0.3);

  CHECK_THROWS_AS(adjusted_count(1, 0, 1, 1, 0, 1), UsageError);
  CHECK_THROWS_AS(adjusted_count(1, 2, 1, 0, 0, 1), UsageError);
  CHECK_THROWS_AS(adjusted_count(1, 2, 1, 1, 0, 0), UsageError);
}

TEST_CASE("rate estimation") {
  //            pos  pos  pos  neg  neg  neg  neg
  const std::vector<double> scores{0.9, 0.4, -0.2, 0.6, -0.1, -0.5, -0.8};
  const std::vector<std::uint8_t> truth{1, 1, 1, 0, 0, 0, 0};
  const auto r = estimate_rates(scores, truth, 0.0, {});
  CHECK(r.estimable);
  CHECK(r.positives == 3);
  CHECK(r.negatives == 4);
  CHECK(r.tpr == doctest::Approx(2.0 / 3));
  CHECK(r.fpr == 0.25);
  CHECK(r.tprProb == doctest::Approx((scale_score({}, 0.9) + scale_score({}, 0.4) + scale_score({}, -0.2)) / 3));
  CHECK(r.curve.size() == 7);
  CHECK(r.curve.front().threshold == -0.8);
  CHECK(r.curve.front().tpr == 1.0);
  CHECK(r.curve.front().fpr == 1.0);
  for (std::size_t i = 1; i < r.curve.size(); ++i) {
    CHECK(r.curve[i].threshold > r.curve[i - 1].threshold);
    CHECK(r.curve[i].tpr <= r.curve[i - 1].tpr);
    CHECK(r.curve[i].fpr <= r.curve[i - 1].fpr);
  }
  // tpr - fpr: 1/2 at t = -0.2, 5/12 at t = 0.4, 1/3 at t = 0.9.
  CHECK(r.maxThreshold == -0.2);
  CHECK(r.maxTruePositives == 3);
  CHECK(r.maxFalsePositives == 2);

  SUBCASE("one-sided held-out data") {
    const auto none = estimate_rates(std::vector<double>{0.3, 0.1}, std::vector<std::uint8_t>{1, 1}, 0.0, {});
    CHECK_FALSE(none.estimable);
    const auto est = quantify_scores(none, std::vector<double>{0.5, -0.5, -1.0, 2.0}, {});
    CHECK(est[kACC] == est[kCC]);
    CHECK(est[kMAX] == est[kCC]);
    CHECK(est[kPACC] == est[kPCC]);
  }
  CHECK_THROWS_AS(estimate_rates(scores, std::vector<std::uint8_t>{1, 0}, 0.0, {}), UsageError);
}

TEST_CASE("a perfect classifier") {
  std::vector<double> scores;
  std::vector<std::uint8_t> truth;
  for (int i = 0; i < 100; ++i) {
    scores.push_back(i < 30 ? 1.0 : -1.0);
    truth.push_back(i < 30);
  }
  const auto rates = estimate_rates(scores, truth, 0.0, {});
  CHECK(rates.tpr == 1.0);
  CHECK(rates.fpr == 0.0);
  const auto est = quantify_scores(rates, scores, {});
  CHECK(est[kCC] == 0.3);
  CHECK(est[kACC] == 0.3);
  CHECK(est[kMAX] == 0.3);
  CHECK_THROWS_AS(quantify_scores(rates, std::vector<double>{}, {}), DataError);
}

TEST_CASE("estimates stay in the unit interval") {
  Xoshiro256 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = 2 + rng.below(60);
    std::vector<double> held(n), test(1 + rng.below(60));
    std::vector<std::uint8_t> truth(n);
    for (auto& s : held) s = (rng.uniform01() - 0.5) * 20;
    for (auto& t : truth) t = rng.uniform01() < 0.4;
    for (auto& s : test) s = (rng.uniform01() - 0.5) * 20;
    const double threshold = (rng.uniform01() - 0.5) * 4;
    const LogisticScaling scaling{0.1 + rng.uniform01() * 3};
    const auto rates = estimate_rates(held, truth, threshold, scaling);
    for (double v : quantify_scores(rates, test, scaling)) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("threshold and rescaling invariants") {
  Xoshiro256 rng(5);
  std::vector<std::uint8_t> truth;
  const auto held = gaussian_scores(200, 300, rng, truth);
  const auto test = gaussian_scores(150, 50, rng, truth);
  std::vector<std::uint8_t> heldTruth(500);
  for (std::size_t i = 0; i < 200; ++i) heldTruth[i] = 1;

  const double pcc = quantify_scores(estimate_rates(held, heldTruth, 0.0, {}), test, {})[kPCC];
  for (double t : {-2.0, -0.3, 0.5, 1.7}) {
    const auto rates = estimate_rates(held, heldTruth, t, {});
    CHECK(quantify_scores(rates, test, {})[kPCC] == pcc);
    CHECK(rates.tprProb == estimate_rates(held, heldTruth, 0.0, {}).tprProb);
  }

  // s -> 3 s^3 keeps the sign, so CC at threshold 0 cannot change.
  std::vector<double> cubed;
  for (double s : test) cubed.push_back(3 * s * s * s);
  const double cc = quantify_scores(estimate_rates(held, heldTruth, 0.0, {}), test, {})[kCC];
  CHECK(quantify_scores(estimate_rates(held, heldTruth, 0.0, {}), cubed, {})[kCC] == cc);
}

TEST_CASE("correction beats plain counting for a biased classifier") {
  Xoshiro256 rng(77);
  // Threshold shifted well above the midpoint: many positives are missed.
  const double threshold = 0.8;
  std::vector<std::uint8_t> truth;
  const auto held = gaussian_scores(2000, 2000, rng, truth);
  const auto rates = estimate_rates(held, truth, threshold, {});
  CHECK(rates.tpr < 0.7);

  double ccError = 0.0, accError = 0.0;
  for (int step = 1; step <= 9; ++step) {
    const double p = step / 10.0;
    const auto positives = static_cast<std::size_t>(std::llround(p * 2000));
    const auto test = gaussian_scores(positives, 2000 - positives, rng, truth);
    const auto est = quantify_scores(rates, test, {});
    ccError += std::abs(est[kCC] - p) / 9;
    accError += std::abs(est[kACC] - p) / 9;
  }
  CHECK(accError < ccError);
  CHECK(accError < 0.03);
}

TEST_CASE("quantification errors") {
  const auto e = quantification_error(0.2, 0.1, 100);
  CHECK(e.ae == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(e.rae == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e.kld == doctest::Approx(kld_oracle(0.1, 0.2, 1.0 / 200)).epsilon(1e-12));

  // Zero truth: RAE divides by eps, KLD stays finite.
  const auto zero = quantification_error(0.05, 0.0, 10);
  CHECK(zero.rae == doctest::Approx(0.05 / (1.0 / 20)));
  CHECK(std::isfinite(quantification_error(1.0, 0.0, 10).kld));
  CHECK(quantification_error(0.4, 0.4, 7).kld == doctest::Approx(0.0));

  Xoshiro256 rng(12);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform01(), b = rng.uniform01();
    const auto n = 1 + rng.below(1000);
    CHECK(quantification_error(a, b, n).kld >= -1e-15);
    CHECK(quantification_error(a, b, n).kld == doctest::Approx(kld_oracle(b, a, 1.0 / (2.0 * n))).epsilon(1e-10));
  }
  CHECK_THROWS_AS(quantification_error(0.1, 0.1, 0), UsageError);

  PrevalenceEstimate est;
  est.values = {{0.2, 0.2, 0.2, 0.2, 0.2, 0.2}, {0.5, 0.4, 0.5, 0.5, 0.5, 0.5}};
  const std::vector<double> truth{0.1, 0.5};
  const auto report = evaluate_quantification(est, truth, 100);
  CHECK(report.perCategory.size() == 2);
  CHECK(report.mean[kCC].ae == doctest::Approx(0.05));
  CHECK(report.mean[kACC].ae == doctest::Approx(0.1));
  CHECK_THROWS_AS(evaluate_quantification(est, std::vector<double>{0.1}, 100), UsageError);
}

TEST_CASE("learning quantifiers") {
  SUBCASE("separable data") {
    const auto training = separable_index(2, 30, 10, 3);
    const auto pool = learn_quantifiers(NaiveBayesParams{}, training, 10, {}, 4);
    CHECK(pool.folds == 10);
    CHECK(pool.mode == FoldMode::Stratified);
    REQUIRE(pool.rates.size() == 2);
    for (const auto& r : pool.rates) {
      CHECK(r.tpr == 1.0);
      CHECK(r.fpr == 0.0);
      CHECK(r.positives == 30);
    }
    const auto test = separable_index(2, 20, 10, 9);
    const auto est = quantify(pool, test);
    const auto truth = true_prevalences(test);
    CHECK(truth == std::vector<double>{0.5, 0.5});
    for (std::size_t c = 0; c < 2; ++c) {
      CHECK(est.values[c][kCC] == 0.5);
      CHECK(est.values[c][kACC] == 0.5);
    }
    CHECK_THROWS_AS(quantify(pool, subset_documents(test, std::vector<DocId>{})), DataError);
  }
  SUBCASE("fold count clamped to the documents") {
    const auto training = separable_index(2, 3, 5, 1);
    CHECK(learn_quantifiers(NaiveBayesParams{}, training, 50).folds == 6);
  }
  SUBCASE("same seed, same pool") {
    const auto training = noisy_index(80, 0.1, 2);
    const auto a = learn_quantifiers(RocchioParams{}, training, 5, {}, 17);
    const auto b = learn_quantifiers(RocchioParams{}, training, 5, {}, 17);
    for (std::size_t c = 0; c < a.rates.size(); ++c) {
      CHECK(a.rates[c].tpr == b.rates[c].tpr);
      CHECK(a.rates[c].fprProb == b.rates[c].fprProb);
      CHECK(a.rates[c].maxThreshold == b.rates[c].maxThreshold);
    }
  }
  SUBCASE("a category with one positive") {
    QuietWarnings quiet;
    const auto training =
        build_index({{"d0", {{"a", 1}}}, {"d1", {{"b", 1}}}, {"d2", {{"a", 1}}}, {"d3", {{"b", 1}}}},
                    {{"d0", {"x"}}, {"d1", {"y"}}, {"d3", {"y"}}}, {"x", "y"});
    const auto pool = learn_quantifiers(NaiveBayesParams{}, training, 2);
    CHECK(pool.mode == FoldMode::Simple);
    bool named = false;
    for (const auto& m : quiet.seen) named |= m.find("'x'") != std::string::npos && m.find("simple folds") != std::string::npos;
    CHECK(named);
  }
  SUBCASE("argument checks") {
    const auto training = separable_index(2, 3, 5, 1);
    CHECK_THROWS_AS(learn_quantifiers(NaiveBayesParams{}, training, 1), UsageError);
    CHECK_THROWS_AS(learn_quantifiers(NaiveBayesParams{}, training, 5, {0.0}), UsageError);
    CHECK_THROWS_AS(learn_quantifiers(NaiveBayesParams{}, subset_documents(training, std::vector<DocId>{0}), 5), UsageError);
  }
}
