// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes.
//
//   jatecs_acceptance --cli <path to jatecs> --toy <toy corpus dir> --golden <golden dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "golden.hpp"
#include "jatecs/corpus_io.hpp"
#include "jatecs/evaluation.hpp"
#include "jatecs/experiments.hpp"
#include "jatecs/index_io.hpp"
#include "jatecs/learners.hpp"
#include "jatecs/model_io.hpp"
#include "jatecs/projection.hpp"
#include "jatecs/quantification.hpp"
#include "jatecs/tsr.hpp"
#include "jatecs/weighting.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace jatecs;
using namespace jatecs::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Paths {
  fs::path cli;
  fs::path toy;
  fs::path golden;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

// 1 ------------------------------------------------------------------------
Outcome index_round_trip() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  TempDir tmp("accept-index");
  Xoshiro256 rng(20240601);
  for (int i = 0; i < 200 && out.pass; ++i) {
    const auto index = random_index(rng, 100);
    const auto first = tmp / ("a" + std::to_string(i));
    const auto second = tmp / ("b" + std::to_string(i));
    save_index(index, first);
    const auto loaded = load_index(first);
    save_index(loaded, second);
    if (!(loaded == index)) out.fail("corpus " + std::to_string(i) + ": reloaded index differs");
    if (auto diff = diff_trees(first, second); !diff.empty())
      out.fail("corpus " + std::to_string(i) + ": " + diff);
    fs::remove_all(first);
    fs::remove_all(second);
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) out.fail("took " + fmt(elapsed) + " s");
  if (out.pass) out.detail = "200 corpora, " + fmt(elapsed) + " s";
  return out;
}

// 2 ------------------------------------------------------------------------
Outcome parser_golden(const Paths& paths) {
  Outcome out;
  const auto outcomes = check_golden_files(paths.golden);
  if (outcomes.size() < 10) out.fail("only " + std::to_string(outcomes.size()) + " golden files");
  for (const auto& o : outcomes)
    if (!o.ok) out.fail(o.file + ": " + o.detail);

  Xoshiro256 rng(77);
  const auto instances = random_instances(rng, 100);
  std::stringstream buffer;
  write_libsvm(instances, buffer);
  const auto parsed = parse_libsvm(buffer, "round-trip");
  if (parsed != instances) out.fail("write then parse of 100 random instances is not the identity");
  std::stringstream again;
  write_libsvm(parsed, again);
  if (again.str() != buffer.str()) out.fail("second write differs from the first");
  if (out.pass) out.detail = std::to_string(outcomes.size()) + " golden files, 100 random instances";
  return out;
}

// 3 ------------------------------------------------------------------------
Outcome tsr_oracles() {
  Outcome out;
  const TsrFunction functions[] = {TsrFunction::InformationGain, TsrFunction::ChiSquare,
                                   TsrFunction::PointwiseMutualInformation, TsrFunction::OddsRatio};
  std::size_t tuples = 0;
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (std::uint64_t a = 0; a <= n; ++a) {
      for (std::uint64_t b = 0; a + b <= n; ++b) {
        for (std::uint64_t c = 0; a + b + c <= n; ++c) {
          const std::uint64_t d = n - a - b - c;
          ++tuples;
          for (auto f : functions) {
            const double got = tsr_score({a, b, c, d}, f);
            const double want = oracle_tsr(a, b, c, d, f);
            worst = std::max(worst, std::abs(got - want));
            if (!(std::abs(got - want) <= 1e-9))
              out.fail("f" + std::to_string(static_cast<int>(f)) + " (" + std::to_string(a) + "," + std::to_string(b) +
                       "," + std::to_string(c) + "," + std::to_string(d) + "): " + fmt(got) + " vs " + fmt(want));
          }
          // Exact independence: A N = (A + B)(A + C).
          if (a * n == (a + b) * (a + c)) {
            for (auto f : {TsrFunction::InformationGain, TsrFunction::ChiSquare,
                           TsrFunction::PointwiseMutualInformation})
              if (std::abs(tsr_score({a, b, c, d}, f)) > 1e-9) out.fail("nonzero score under independence");
          }
        }
      }
    }
  }
  for (std::uint64_t half = 1; half <= 6; ++half) {
    for (auto counts : {CooccurrenceCounts{half, 0, 0, half}, CooccurrenceCounts{0, half, half, 0}}) {
      const double n = static_cast<double>(2 * half);
      if (std::abs(tsr_score(counts, TsrFunction::ChiSquare) - n) > 1e-9) out.fail("chi2 != N on perfect association");
      if (std::abs(tsr_score(counts, TsrFunction::InformationGain) - 1.0) > 1e-9)
        out.fail("IG != 1 bit on perfect association");
    }
  }
  if (out.pass) out.detail = std::to_string(tuples) + " tuples, max deviation " + fmt(worst);
  return out;
}

// 4 ------------------------------------------------------------------------
Outcome round_robin() {
  Outcome out;
  Xoshiro256 rng(4);
  std::size_t checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FeatureRanking> rankings(3);
    for (CategoryId c = 0; c < 3; ++c) {
      rankings[c].category = c;
      for (FeatureId j = 0; j < 3; ++j) {
        // Scores with frequent ties across categories.
        const double score = trial == 0 ? 1.0 : static_cast<double>(rng.below(4));
        rankings[c].entries.push_back({c * 3 + j, score});
      }
      std::stable_sort(rankings[c].entries.begin(), rankings[c].entries.end(),
                       [](const RankedFeature& x, const RankedFeature& y) {
                         return x.score != y.score ? x.score > y.score : x.feature < y.feature;
                       });
    }
    for (std::size_t k = 1; k <= 9; ++k) {
      ++checks;
      const auto selected = select_round_robin(rankings, k);
      if (selected.size() != k) out.fail("k=" + std::to_string(k) + ": selected " + std::to_string(selected.size()));
      std::size_t per[3] = {0, 0, 0};
      for (auto f : selected) ++per[f / 3];
      for (std::size_t c = 0; c < 3; ++c)
        if (per[c] != k / 3 && per[c] != (k + 2) / 3)
          out.fail("k=" + std::to_string(k) + ": category " + std::to_string(c) + " got " + std::to_string(per[c]));
    }
  }
  if (out.pass) out.detail = std::to_string(checks) + " selections";
  return out;
}

// 5 ------------------------------------------------------------------------
Outcome weighting() {
  Outcome out;
  Xoshiro256 rng(5);
  std::vector<std::string> categories{"c0"};
  IndexBuilder builder(categories);
  for (int d = 0; d < 500; ++d) {
    DocumentInput input;
    input.name = "d" + std::to_string(d);
    input.features.emplace_back("everywhere", 1 + static_cast<std::uint32_t>(rng.below(3)));
    const auto length = rng.below(20);
    for (std::size_t t = 0; t < length; ++t)
      input.features.emplace_back("w" + std::to_string(rng.below(400)), 1 + static_cast<std::uint32_t>(rng.below(4)));
    builder.add(std::move(input));
  }
  const auto index = std::move(builder).build();
  const auto weighted = tfidf_normalized(index);
  const FeatureId everywhere = *index.features().find("everywhere");
  double worst = 0.0;
  std::size_t checked = 0;
  for (DocId d = 0; d < weighted.documentCount(); ++d) {
    double sum = 0.0;
    for (const auto& e : weighted.weighting().documentWeights(d)) sum += e.weight * e.weight;
    if (weighted.weighting().weight(d, everywhere) != 0.0) out.fail("ubiquitous term has nonzero weight");
    if (sum == 0.0) continue;  // only the ubiquitous term: all idf are 0
    ++checked;
    worst = std::max(worst, std::abs(std::sqrt(sum) - 1.0));
  }
  if (worst > 1e-9) out.fail("norm deviates by " + fmt(worst));
  if (checked < 400) out.fail("too few non-degenerate documents");

  // Ten documents of length 4, so |d| = avgdl for every document.
  IndexBuilder bmBuilder(categories);
  for (int d = 0; d < 10; ++d) {
    DocumentInput input;
    input.name = "b" + std::to_string(d);
    if (d == 0) input.features = {{"t", 3}, {"u", 1}};
    else if (d == 1) input.features = {{"t", 1}, {"u", 3}};
    else input.features = {{"filler" + std::to_string(d), 4}};
    bmBuilder.add(std::move(input));
  }
  const auto bmIndex = std::move(bmBuilder).build();
  const auto bm = bm25(bmIndex, {1.2, 0.75});
  const double expected = std::log((10.0 - 2.0 + 0.5) / (2.0 + 0.5)) * 3.0 / (3.0 + 1.2);
  const double got = bm.weighting().weight(0, *bmIndex.features().find("t"));
  if (std::abs(got - expected) > 1e-12) out.fail("BM25 " + fmt(got) + " vs " + fmt(expected));
  if (out.pass) out.detail = std::to_string(checked) + " unit documents, max norm error " + fmt(worst);
  return out;
}

// 6 ------------------------------------------------------------------------
Outcome learners_separable() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto index = tfidf_normalized(separable_index(2, 100, 25, 6, 15, 40));
  const auto plan = make_folds(index, 10, FoldMode::Stratified, 6);
  std::string summary;
  for (auto kind : {LearnerKind::NaiveBayes, LearnerKind::Rocchio, LearnerKind::Knn, LearnerKind::AdaBoostMH}) {
    const auto params = default_params(kind);
    const auto result = kfold_evaluate(params, index, plan);
    const double macroF1 = micro_macro(result.total).macroF1;
    summary += std::string(learner_name(kind)) + "=" + fmt(macroF1) + " ";
    if (macroF1 != 1.0) out.fail(std::string(learner_name(kind)) + " macro-F1 " + fmt(macroF1));

    const auto classifier = train(params, index);
    for (CategoryId c = 0; c < classifier.categoryCount(); ++c) {
      const auto column = classify_category(classifier, index, c);
      for (DocId d = 0; d < index.documentCount(); ++d) {
        const auto row = classify_document(classifier, index, d);
        if (row.scores[c] != column[d].score || row.decisions[c] != column[d].decision)
          out.fail(std::string(learner_name(kind)) + ": classify paths disagree at (" + std::to_string(d) + "," +
                   std::to_string(c) + ")");
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) out.fail("took " + fmt(elapsed) + " s");
  if (out.pass) out.detail = summary + fmt(elapsed) + " s";
  return out;
}

// 7 ------------------------------------------------------------------------
Outcome boosting_z() {
  Outcome out;
  const auto index = noisy_index(300, 0.15, 7);
  BoostParams params;
  params.iterations = 50;
  const auto classifier = train(params, index);
  const auto& model = std::get<BoostModel>(classifier.model);
  for (CategoryId c = 0; c < classifier.categoryCount(); ++c) {
    if (model.z[c].size() != 50) out.fail("expected 50 rounds");
    double product = 1.0;
    for (std::size_t t = 0; t < model.z[c].size(); ++t) {
      const double next = product * model.z[c][t];
      if (next > product) out.fail("product increases at round " + std::to_string(t));
      product = next;
    }
    if (out.pass) out.detail += "c" + std::to_string(c) + " bound " + fmt(product) + " ";
  }
  return out;
}

// 8 ------------------------------------------------------------------------
Outcome evaluation_identities() {
  Outcome out;
  Xoshiro256 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t D = 1 + static_cast<std::uint32_t>(rng.below(60));
    const std::uint32_t C = 1 + static_cast<std::uint32_t>(rng.below(6));
    std::vector<std::pair<DocId, CategoryId>> pred, gold;
    for (DocId d = 0; d < D; ++d) {
      for (CategoryId c = 0; c < C; ++c) {
        if (rng.below(3) == 0) pred.emplace_back(d, c);
        if (rng.below(3) == 0) gold.emplace_back(d, c);
      }
    }
    // Pooled counts straight from the pairs.
    std::uint64_t tp = 0;
    for (const auto& p : pred)
      if (std::find(gold.begin(), gold.end(), p) != gold.end()) ++tp;
    const std::uint64_t fp = pred.size() - tp;
    const std::uint64_t fn = gold.size() - tp;
    const double pooledP = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double pooledR = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double pooledF1 = pooledP + pooledR == 0 ? 0.0 : 2 * pooledP * pooledR / (pooledP + pooledR);

    const auto tables = compare(ClassificationDb(D, C, pred), ClassificationDb(D, C, gold));
    const double microF1 = micro_macro(tables).microF1;
    if (std::abs(microF1 - pooledF1) > 1e-12) out.fail("micro-F1 " + fmt(microF1) + " vs pooled " + fmt(pooledF1));
  }

  const auto m = measures({2, 0, 1, 1});
  for (double v : {m.precision, m.recall, m.f1})
    if (std::abs(v - 2.0 / 3.0) > 1e-12) out.fail("hand example: " + fmt(v) + " != 2/3");
  if (m.accuracy != 0.5) out.fail("hand example accuracy");

  const auto empty = measures({});
  if (empty.precision != 1 || empty.recall != 1 || empty.f1 != 1 || empty.accuracy != 1)
    out.fail("all-zero table conventions");
  if (measures({0, 0, 3, 0}).precision != 0) out.fail("tp=0, fp=3 must give P=0");
  if (measures({0, 5, 2, 0}).recall != 1) out.fail("no gold positives must give R=1");
  if (measures({0, 0, 1, 1}).f1 != 0) out.fail("P+R=0 must give F1=0");
  if (out.pass) out.detail = "100 random table sets";
  return out;
}

// 9 ------------------------------------------------------------------------
std::vector<double> planted_scores(std::size_t positives, std::size_t negatives, std::size_t truePositives,
                                   std::size_t falsePositives, Xoshiro256& rng, std::vector<std::uint8_t>& truth) {
  std::vector<std::pair<double, std::uint8_t>> cells;
  for (std::size_t i = 0; i < positives; ++i) cells.emplace_back(i < truePositives ? 1.0 : -1.0, 1);
  for (std::size_t i = 0; i < negatives; ++i) cells.emplace_back(i < falsePositives ? 1.0 : -1.0, 0);
  shuffle(std::span(cells), rng);
  std::vector<double> scores;
  truth.clear();
  for (const auto& [s, t] : cells) {
    scores.push_back(s);
    truth.push_back(t);
  }
  return scores;
}

Outcome quantification() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  Xoshiro256 rng(9);
  const LogisticScaling scaling{};

  // Held-out behaviour of the planted classifier: tpr 0.8, fpr 0.2.
  std::vector<std::uint8_t> truth;
  const auto heldOut = planted_scores(1000, 1000, 800, 200, rng, truth);
  const auto rates = estimate_rates(heldOut, truth, 0.0, scaling);
  if (rates.tpr != 0.8 || rates.fpr != 0.2) out.fail("planted rates not recovered");

  double ccError = 0.0, accError = 0.0;
  for (int step = 1; step <= 9; ++step) {
    const double p = step / 10.0;
    const auto positives = static_cast<std::size_t>(std::llround(p * 2000));
    const auto negatives = 2000 - positives;
    const auto scores = planted_scores(positives, negatives, static_cast<std::size_t>(std::llround(0.8 * positives)),
                                       static_cast<std::size_t>(std::llround(0.2 * negatives)), rng, truth);
    const auto estimates = quantify_scores(rates, scores, scaling);
    const double cc = estimates[static_cast<int>(Quantifier::CC)];
    const double acc = estimates[static_cast<int>(Quantifier::ACC)];
    ccError += std::abs(cc - p) / 9.0;
    accError += std::abs(acc - p) / 9.0;
    if (std::abs(acc - p) > 0.02) out.fail("ACC " + fmt(acc) + " at prevalence " + fmt(p));
  }
  if (!(ccError > accError)) out.fail("CC error " + fmt(ccError) + " not above ACC error " + fmt(accError));

  // p_CC = 1000/2000 = 0.5 with the planted rates.
  if (adjusted_count(1000, 2000, 800, 1000, 200, 1000) != 0.5) out.fail("(0.5-0.2)/(0.8-0.2) is not exactly 0.5");
  {
    const auto scores = planted_scores(1000, 1000, 800, 200, rng, truth);
    // 800 + 200 = 1000 predicted positives out of 2000.
    if (quantify_scores(rates, scores, scaling)[static_cast<int>(Quantifier::ACC)] != 0.5)
      out.fail("ACC at p_CC = 0.5 is not exactly 0.5");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) out.fail("took " + fmt(elapsed) + " s");
  if (out.pass) out.detail = "mean AE CC " + fmt(ccError) + ", ACC " + fmt(accError);
  return out;
}

// 10 -----------------------------------------------------------------------
Outcome projection() {
  Outcome out;
  const auto index = zipf_documents(50, 10);
  const auto model = build_projection(index, ProjectionKind::RandomIndexing, 1024, 10, 10);
  const auto latent = project(model, index);

  std::vector<double> original, projected;
  for (DocId i = 0; i < 50; ++i) {
    for (DocId j = i + 1; j < 50; ++j) {
      double dot = 0;
      for (const auto& e : index.weighting().documentWeights(i)) dot += e.weight * index.weighting().weight(j, e.feature);
      double latentDot = 0;
      for (std::size_t k = 0; k < latent.cols; ++k) latentDot += latent.at(i, k) * latent.at(j, k);
      original.push_back(dot);
      projected.push_back(latentDot);
    }
  }
  const double r = pearson(original, projected);
  if (!(r > 0.9)) out.fail("Pearson " + fmt(r));

  // Linearity: document 2 carries alpha * x + beta * y.
  Xoshiro256 rng(11);
  const double alpha = 1.75, beta = -0.5;
  IndexBuilder builder({"c"});
  std::vector<std::vector<WeightEntry>> rows(3);
  for (int d = 0; d < 3; ++d) {
    DocumentInput input;
    input.name = "l" + std::to_string(d);
    for (int f = 0; f < 40; ++f) input.features.emplace_back("f" + std::to_string(f), 1);
    builder.add(std::move(input));
  }
  auto linear = std::move(builder).build();
  for (FeatureId f = 0; f < 40; ++f) {
    const double x = rng.below(3) == 0 ? 0.0 : rng.uniform01() * 4 - 2;
    const double y = rng.below(3) == 0 ? 0.0 : rng.uniform01() * 4 - 2;
    rows[0].push_back({f, x});
    rows[1].push_back({f, y});
    rows[2].push_back({f, alpha * x + beta * y});
  }
  linear = linear.withWeighting(WeightingDb(std::move(rows)));
  for (auto kind : {ProjectionKind::RandomIndexing, ProjectionKind::LightweightRI, ProjectionKind::Achlioptas}) {
    const auto m = build_projection(linear, kind, 64, 4, 12);
    const auto rowsOut = project(m, linear);
    for (std::size_t k = 0; k < rowsOut.cols; ++k) {
      const double combined = alpha * rowsOut.at(0, k) + beta * rowsOut.at(1, k);
      if (std::abs(rowsOut.at(2, k) - combined) > 1e-9) out.fail("projection not linear");
    }
    const auto again = build_projection(linear, kind, 64, 4, 12);
    if (serialize_projection(m) != serialize_projection(again)) out.fail("same seed gave different model bytes");
  }
  if (serialize_projection(model) != serialize_projection(build_projection(index, ProjectionKind::RandomIndexing, 1024, 10, 10)))
    out.fail("same seed gave different model bytes");
  if (out.pass) out.detail = "Pearson " + fmt(r);
  return out;
}

// 11 -----------------------------------------------------------------------
std::string quote(const fs::path& path) { return "'" + path.string() + "'"; }

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

Outcome cli_smoke(const Paths& paths) {
  Outcome out;
  if (!fs::exists(paths.cli)) {
    out.fail("CLI binary not found: " + paths.cli.string());
    return out;
  }
  TempDir tmp("accept-cli");
  for (const char* run : {"run1", "run2"}) {
    const auto root = tmp / run;
    const std::string command = quote(paths.cli) + " pipeline --stages index,tsr,weight,train,classify,eval" +
                                " --reader csv --separator tab --input " + quote(paths.toy / "train.csv") +
                                " --test-input " + quote(paths.toy / "test.csv") + " --categories " +
                                quote(paths.toy / "categories.txt") +
                                " --extractor chargrams --ngram 4 --stoplist en --stem en" +
                                " --func ig --policy rr --k 500 --scheme tfidf --learner nb --out " + quote(root) +
                                " > " + quote(tmp / (std::string(run) + ".log")) + " 2>&1";
    const int code = run_command(command);
    if (code != 0) out.fail(std::string(run) + " exited with " + std::to_string(code));
    if (!fs::exists(root / "eval" / "eval.tsv")) out.fail(std::string(run) + " produced no eval.tsv");
  }
  if (out.pass) {
    if (auto diff = diff_trees(tmp / "run1", tmp / "run2"); !diff.empty()) out.fail("runs differ: " + diff);
    if (read_file(tmp / "run1.log") != read_file(tmp / "run2.log")) out.fail("console output differs");
  }
  if (out.pass) {
    std::size_t files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(tmp / "run1")) files += entry.is_regular_file();
    out.detail = std::to_string(files) + " identical files";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Paths paths;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") paths.cli = argv[i + 1];
    else if (flag == "--toy") paths.toy = argv[i + 1];
    else if (flag == "--golden") paths.golden = argv[i + 1];
    else {
      std::cerr << "unknown argument " << flag << '\n';
      return 1;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"index round trip", index_round_trip},
      {"parser golden files", [&] { return parser_golden(paths); }},
      {"TSR oracles", tsr_oracles},
      {"round robin", round_robin},
      {"weighting", weighting},
      {"learners on separable data", learners_separable},
      {"AdaBoost.MH Z product", boosting_z},
      {"evaluation identities", evaluation_identities},
      {"quantification", quantification},
      {"random projection", projection},
      {"CLI pipeline smoke", [&] { return cli_smoke(paths); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    failures += !outcome.pass;
    std::cout << "criterion " << (i + 1) << ": " << (outcome.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
    if (!outcome.detail.empty()) std::cout << " (" << outcome.detail << ")";
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
