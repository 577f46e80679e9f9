#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <string>

#include "jatecs/evaluation.hpp"
#include "jatecs/learners.hpp"
#include "jatecs/projection.hpp"
#include "jatecs/quantification.hpp"
#include "jatecs/random.hpp"
#include "jatecs/textproc.hpp"
#include "jatecs/tsr.hpp"
#include "jatecs/weighting.hpp"

using namespace jatecs;

namespace {

// Zipf-distributed documents over `vocabulary` words, 8 categories. Each
// category boosts its own slice of the vocabulary.
Index corpus(std::uint32_t docs, std::uint32_t vocabulary, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<double> cumulative(vocabulary);
  double total = 0;
  for (std::uint32_t r = 0; r < vocabulary; ++r) cumulative[r] = (total += 1.0 / (r + 1.0));
  constexpr std::uint32_t C = 8;
  std::vector<std::string> categories;
  for (std::uint32_t c = 0; c < C; ++c) categories.push_back("c" + std::to_string(c));

  std::vector<std::pair<std::string, FeatureCounts>> documents;
  std::vector<std::pair<std::string, std::vector<std::string>>> labels;
  for (std::uint32_t d = 0; d < docs; ++d) {
    const auto name = "d" + std::to_string(d);
    const auto c = static_cast<std::uint32_t>(rng.below(C));
    std::map<std::string, std::uint32_t> counts;
    const auto length = 50 + rng.below(150);
    for (std::uint64_t t = 0; t < length; ++t) {
      auto rank = static_cast<std::uint32_t>(std::lower_bound(cumulative.begin(), cumulative.end(),
                                                              rng.uniform01() * total) -
                                             cumulative.begin());
      if (t % 4 == 0) rank = c * (vocabulary / C) + rank % (vocabulary / C);
      ++counts["w" + std::to_string(rank)];
    }
    documents.push_back({name, FeatureCounts(counts.begin(), counts.end())});
    labels.push_back({name, {categories[c]}});
  }
  return build_index(documents, labels, categories);
}

const Index& shared_corpus() {
  static const Index index = corpus(2000, 20000, 1);
  return index;
}

const Index& weighted_corpus() {
  static const Index index = tfidf_normalized(shared_corpus());
  return index;
}

void BM_Tokenize(benchmark::State& state) {
  std::string text;
  Xoshiro256 rng(2);
  for (int i = 0; i < 2000; ++i) text += "Word" + std::to_string(rng.below(500)) + (i % 13 ? " " : ". ");
  TokenOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(extract_bow(text, options));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize);

void BM_CharNGrams(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 2000; ++i) text += "token" + std::to_string(i % 97) + " ";
  for (auto _ : state) benchmark::DoNotOptimize(extract_char_ngrams(text, 4, false));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_CharNGrams);

void BM_InformationGainAllCategories(benchmark::State& state) {
  const auto& index = shared_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(rank_all_categories(index, TsrFunction::InformationGain));
}
BENCHMARK(BM_InformationGainAllCategories)->Unit(benchmark::kMillisecond);

void BM_RoundRobinSelection(benchmark::State& state) {
  const auto rankings = rank_all_categories(shared_corpus(), TsrFunction::InformationGain);
  for (auto _ : state) benchmark::DoNotOptimize(select_round_robin(rankings, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_RoundRobinSelection)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_TfIdf(benchmark::State& state) {
  const auto& index = shared_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(tfidf_normalized(index));
}
BENCHMARK(BM_TfIdf)->Unit(benchmark::kMillisecond);

void BM_Bm25(benchmark::State& state) {
  const auto& index = shared_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(bm25(index));
}
BENCHMARK(BM_Bm25)->Unit(benchmark::kMillisecond);

void BM_RandomIndexing(benchmark::State& state) {
  const auto& index = weighted_corpus();
  const auto dim = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    const auto model = build_projection(index, ProjectionKind::RandomIndexing, dim, std::max(1u, dim / 100), 3);
    benchmark::DoNotOptimize(project(model, index));
  }
}
BENCHMARK(BM_RandomIndexing)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

template <typename Params>
void BM_Train(benchmark::State& state) {
  const auto& index = weighted_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(train(Params{}, index));
}
BENCHMARK(BM_Train<NaiveBayesParams>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Train<RocchioParams>)->Unit(benchmark::kMillisecond);

void BM_TrainBoost(benchmark::State& state) {
  const auto& index = weighted_corpus();
  BoostParams params;
  params.iterations = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(train(params, index));
}
BENCHMARK(BM_TrainBoost)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

template <typename Params>
void BM_Classify(benchmark::State& state) {
  const auto& index = weighted_corpus();
  const auto model = train(Params{}, index);
  const auto test = tfidf_normalized(corpus(500, 20000, 9));
  for (auto _ : state) benchmark::DoNotOptimize(classify_all(model, test));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * test.documentCount()));
}
BENCHMARK(BM_Classify<NaiveBayesParams>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify<RocchioParams>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify<KnnParams>)->Unit(benchmark::kMillisecond);

void BM_Compare(benchmark::State& state) {
  const auto& index = shared_corpus();
  const auto& gold = index.classification();
  for (auto _ : state) benchmark::DoNotOptimize(micro_macro(compare(gold, gold)));
}
BENCHMARK(BM_Compare);

void BM_QuantifyScores(benchmark::State& state) {
  Xoshiro256 rng(4);
  std::vector<double> held(10000), test(10000);
  std::vector<std::uint8_t> truth(held.size());
  for (std::size_t i = 0; i < held.size(); ++i) {
    truth[i] = rng.uniform01() < 0.3;
    held[i] = (truth[i] ? 1.0 : -1.0) + (rng.uniform01() - 0.5) * 3;
    test[i] = (rng.uniform01() - 0.5) * 4;
  }
  for (auto _ : state) {
    const auto rates = estimate_rates(held, truth, 0.0, {});
    benchmark::DoNotOptimize(quantify_scores(rates, test, {}));
  }
}
BENCHMARK(BM_QuantifyScores)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
