#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "jatecs/error.hpp"
#include "jatecs/evaluation.hpp"
#include "jatecs/random.hpp"

using namespace jatecs;

namespace {

ClassificationDb random_db(Xoshiro256& rng, std::uint32_t docs, std::uint32_t categories, double density) {
  std::vector<std::pair<DocId, CategoryId>> pairs;
  for (DocId d = 0; d < docs; ++d)
    for (CategoryId c = 0; c < categories; ++c)
      if (rng.uniform01() < density) pairs.push_back({d, c});
  return {docs, categories, pairs};
}

}  // namespace

TEST_CASE("comparing classifications") {
  const ClassificationDb gold(4, 2, {{0, 0}, {1, 0}, {2, 1}, {3, 1}});

  SUBCASE("identical") {
    for (const auto& t : compare(gold, gold).perCategory) {
      CHECK(t.fp == 0);
      CHECK(t.fn == 0);
    }
  }
  SUBCASE("empty predictions") {
    const auto set = compare(ClassificationDb(4, 2, {}), gold);
    CHECK(set.perCategory[0] == ContingencyTable{0, 2, 0, 2});
    CHECK(set.perCategory[1] == ContingencyTable{0, 2, 0, 2});
  }
  SUBCASE("one false positive and one false negative") {
    // d1 loses c0 (fn), d0 gains c1 (fp).
    const ClassificationDb predicted(4, 2, {{0, 0}, {0, 1}, {2, 1}, {3, 1}});
    const auto set = compare(predicted, gold);
    CHECK(set.perCategory[0] == ContingencyTable{1, 2, 0, 1});
    CHECK(set.perCategory[1] == ContingencyTable{2, 1, 1, 0});
    CHECK(set.global() == ContingencyTable{3, 3, 1, 1});
  }
  SUBCASE("universe mismatch") {
    CHECK_THROWS_AS(compare(ClassificationDb(3, 2, {}), gold), DataError);
    CHECK_THROWS_AS(compare(ClassificationDb(4, 3, {}), gold), DataError);
  }
}

TEST_CASE("measures") {
  const auto m = measures({2, 0, 1, 1});
  CHECK(m.precision == doctest::Approx(2.0 / 3));
  CHECK(m.recall == doctest::Approx(2.0 / 3));
  CHECK(m.f1 == doctest::Approx(2.0 / 3));
  CHECK(m.accuracy == 0.5);

  const auto zero = measures({});
  CHECK(zero.precision == 1.0);
  CHECK(zero.recall == 1.0);
  CHECK(zero.f1 == 1.0);
  CHECK(zero.accuracy == 1.0);

  CHECK(measures({0, 0, 3, 0}).precision == 0.0);
  // P = 0 and R = 0.
  CHECK(measures({0, 5, 2, 2}).f1 == 0.0);
  // No gold positives and no predictions: all conventions at 1.
  CHECK(measures({0, 9, 0, 0}).f1 == 1.0);
}

TEST_CASE("micro and macro averages") {
  SUBCASE("hand example") {
    ContingencyTableSet set{{{1, 0, 1, 0}, {1, 0, 0, 0}}};
    const auto mm = micro_macro(set);
    CHECK(mm.microPrecision == doctest::Approx(2.0 / 3));
    CHECK(mm.macroPrecision == doctest::Approx(3.0 / 4));
  }
  SUBCASE("one category") {
    ContingencyTableSet set{{{3, 4, 1, 2}}};
    const auto mm = micro_macro(set);
    CHECK(mm.microF1 == mm.macroF1);
    CHECK(mm.microPrecision == mm.macroPrecision);
    CHECK(mm.microRecall == mm.macroRecall);
  }
  SUBCASE("perfect") {
    const ClassificationDb gold(5, 3, {{0, 0}, {1, 2}, {4, 1}});
    const auto mm = micro_macro(compare(gold, gold));
    for (double v : {mm.microPrecision, mm.microRecall, mm.microF1, mm.macroPrecision, mm.macroRecall, mm.macroF1})
      CHECK(v == 1.0);
  }
  CHECK_THROWS_AS(micro_macro(ContingencyTableSet{}), UsageError);
}

TEST_CASE("evaluation properties") {
  Xoshiro256 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto docs = 1 + static_cast<std::uint32_t>(rng.below(30));
    const auto cats = 1 + static_cast<std::uint32_t>(rng.below(6));
    const auto gold = random_db(rng, docs, cats, 0.3);
    const auto pred = random_db(rng, docs, cats, 0.3);
    const auto set = compare(pred, gold);

    ContingencyTable sum;
    for (const auto& t : set.perCategory) {
      CHECK(t.total() == docs);
      sum += t;
    }
    CHECK(set.global() == sum);

    // Micro-F1 from the pooled tp, fp, fn.
    const double tp = sum.tp, fp = sum.fp, fn = sum.fn;
    const double p = tp + fp == 0 ? 1.0 : tp / (tp + fp);
    const double r = tp + fn == 0 ? 1.0 : tp / (tp + fn);
    const double f1 = p + r == 0 ? 0.0 : 2 * p * r / (p + r);
    const auto mm = micro_macro(set);
    CHECK(mm.microF1 == doctest::Approx(f1).epsilon(1e-12));

    // Swapping predictions and gold swaps fp and fn.
    const auto swapped = compare(gold, pred);
    for (std::size_t c = 0; c < cats; ++c) {
      CHECK(swapped.perCategory[c].fp == set.perCategory[c].fn);
      CHECK(swapped.perCategory[c].fn == set.perCategory[c].fp);
    }

    // Macro-F1 does not depend on category order.
    auto permuted = set;
    shuffle(std::span<ContingencyTable>(permuted.perCategory), rng);
    CHECK(micro_macro(permuted).macroF1 == doctest::Approx(mm.macroF1).epsilon(1e-12));
  }
}

TEST_CASE("table sets add cellwise") {
  ContingencyTableSet a{{{1, 2, 3, 4}, {0, 1, 0, 1}}};
  const ContingencyTableSet b{{{1, 1, 1, 1}, {2, 0, 0, 0}}};
  a += b;
  CHECK(a.perCategory[0] == ContingencyTable{2, 3, 4, 5});
  CHECK(a.perCategory[1] == ContingencyTable{2, 1, 0, 1});
  CHECK_THROWS_AS(a += ContingencyTableSet{{{}}}, UsageError);
}

TEST_CASE("confusion matrix") {
  SUBCASE("perfect predictions") {
    const std::map<DocId, CategoryId> gold{{0, 0}, {1, 1}, {2, 2}, {3, 1}};
    const auto m = confusion(gold, gold, 3);
    CHECK(m.trace() == 4);
    CHECK(m.total() == 4);
    for (CategoryId g = 0; g < 3; ++g)
      for (CategoryId p = 0; p < 3; ++p)
        if (g != p) CHECK(m.at(g, p) == 0);
  }
  SUBCASE("everything predicted as c0") {
    const std::map<DocId, CategoryId> gold{{0, 0}, {1, 1}, {2, 2}};
    const std::map<DocId, CategoryId> pred{{0, 0}, {1, 0}, {2, 0}};
    const auto m = confusion(pred, gold, 3);
    CHECK(m.at(0, 0) + m.at(1, 0) + m.at(2, 0) == 3);
  }
  SUBCASE("five documents by hand") {
    const std::map<DocId, CategoryId> gold{{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 2}};
    const std::map<DocId, CategoryId> pred{{0, 0}, {1, 1}, {2, 1}, {3, 2}, {4, 2}};
    const auto m = confusion(pred, gold, 3);
    CHECK(m.cells == std::vector<std::uint64_t>{1, 1, 0, 0, 1, 1, 0, 0, 1});
    CHECK(m.trace() == 3);
  }
  SUBCASE("key mismatch") {
    CHECK_THROWS_AS(confusion({{0, 0}}, {{1, 0}}, 1), DataError);
    CHECK_THROWS_AS(confusion({{0, 0}}, {{0, 0}, {1, 0}}, 1), DataError);
    CHECK_THROWS_AS(confusion({{0, 4}}, {{0, 0}}, 2), DataError);
  }
}

TEST_CASE("confusion trace matches single-label accuracy") {
  Xoshiro256 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t C = 2 + static_cast<std::uint32_t>(rng.below(4));
    const std::uint32_t D = 1 + static_cast<std::uint32_t>(rng.below(40));
    std::map<DocId, CategoryId> gold, pred;
    std::vector<std::pair<DocId, CategoryId>> goldPairs, predPairs;
    for (DocId d = 0; d < D; ++d) {
      gold[d] = static_cast<CategoryId>(rng.below(C));
      pred[d] = static_cast<CategoryId>(rng.below(C));
      goldPairs.push_back({d, gold[d]});
      predPairs.push_back({d, pred[d]});
    }
    const auto m = confusion(pred, gold, C);
    CHECK(m.total() == D);
    std::uint64_t correct = 0;
    for (DocId d = 0; d < D; ++d) correct += gold[d] == pred[d];
    CHECK(m.trace() == correct);
    // With one label per document, pooled tp is the number of correct documents.
    const auto set = compare(ClassificationDb(D, C, predPairs), ClassificationDb(D, C, goldPairs));
    CHECK(set.global().tp == m.trace());
  }
}
