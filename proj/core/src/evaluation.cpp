#include "jatecs/evaluation.hpp"

#include <string>

#include "jatecs/error.hpp"

namespace jatecs {

Measures measures(const ContingencyTable& t) {
  Measures m;
  const double tp = static_cast<double>(t.tp);
  if (t.tp + t.fp > 0) m.precision = tp / static_cast<double>(t.tp + t.fp);
  if (t.tp + t.fn > 0) m.recall = tp / static_cast<double>(t.tp + t.fn);
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
  if (t.total() > 0) m.accuracy = static_cast<double>(t.tp + t.tn) / static_cast<double>(t.total());
  return m;
}

ContingencyTable ContingencyTableSet::global() const {
  ContingencyTable sum;
  for (const auto& table : perCategory) sum += table;
  return sum;
}

ContingencyTableSet& ContingencyTableSet::operator+=(const ContingencyTableSet& other) {
  if (perCategory.empty()) perCategory.resize(other.perCategory.size());
  if (perCategory.size() != other.perCategory.size()) throw UsageError("table sets cover different categories");
  for (std::size_t c = 0; c < perCategory.size(); ++c) perCategory[c] += other.perCategory[c];
  return *this;
}

ContingencyTableSet compare(const ClassificationDb& predictions, const ClassificationDb& gold) {
  if (predictions.documentCount() != gold.documentCount() || predictions.categoryCount() != gold.categoryCount())
    throw DataError("predictions cover " + std::to_string(predictions.documentCount()) + " documents x " +
                    std::to_string(predictions.categoryCount()) + " categories, gold " +
                    std::to_string(gold.documentCount()) + " x " + std::to_string(gold.categoryCount()));
  const std::uint64_t D = gold.documentCount();
  ContingencyTableSet out;
  out.perCategory.resize(gold.categoryCount());
  for (CategoryId c = 0; c < gold.categoryCount(); ++c) {
    const auto p = predictions.categoryDocuments(c);
    const auto g = gold.categoryDocuments(c);
    std::uint64_t both = 0;
    for (std::size_t i = 0, j = 0; i < p.size() && j < g.size();) {
      if (p[i] < g[j]) ++i;
      else if (g[j] < p[i]) ++j;
      else { ++both; ++i; ++j; }
    }
    auto& t = out.perCategory[c];
    t.tp = both;
    t.fp = p.size() - both;
    t.fn = g.size() - both;
    t.tn = D - t.tp - t.fp - t.fn;
  }
  return out;
}

MicroMacro micro_macro(const ContingencyTableSet& tables) {
  if (tables.perCategory.empty()) throw UsageError("micro/macro averages need at least one category");
  MicroMacro out;
  const auto micro = measures(tables.global());
  out.microPrecision = micro.precision;
  out.microRecall = micro.recall;
  out.microF1 = micro.f1;
  out.microAccuracy = micro.accuracy;
  double p = 0, r = 0, f = 0, a = 0;
  for (const auto& table : tables.perCategory) {
    const auto m = measures(table);
    p += m.precision;
    r += m.recall;
    f += m.f1;
    a += m.accuracy;
  }
  const double n = static_cast<double>(tables.perCategory.size());
  out.macroPrecision = p / n;
  out.macroRecall = r / n;
  out.macroF1 = f / n;
  out.macroAccuracy = a / n;
  return out;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (auto v : cells) sum += v;
  return sum;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t sum = 0;
  for (std::uint32_t i = 0; i < size; ++i) sum += at(i, i);
  return sum;
}

ConfusionMatrix confusion(const std::map<DocId, CategoryId>& predictions, const std::map<DocId, CategoryId>& gold,
                          std::uint32_t categoryCount) {
  if (predictions.size() != gold.size()) throw DataError("predictions and gold cover different documents");
  ConfusionMatrix m;
  m.size = categoryCount;
  m.cells.assign(static_cast<std::size_t>(categoryCount) * categoryCount, 0);
  auto p = predictions.begin();
  for (const auto& [doc, truth] : gold) {
    if (p->first != doc) throw DataError("document " + std::to_string(doc) + " missing from predictions");
    if (truth >= categoryCount || p->second >= categoryCount)
      throw DataError("category ID out of range for document " + std::to_string(doc));
    ++m.cells[truth * categoryCount + p->second];
    ++p;
  }
  return m;
}

}  // namespace jatecs
