#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "jatecs/index.hpp"

namespace jatecs {

struct ContingencyTable {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  ContingencyTable& operator+=(const ContingencyTable& other) noexcept {
    tp += other.tp;
    tn += other.tn;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }
  bool operator==(const ContingencyTable&) const = default;
};

// Conventions for empty denominators: precision 1 with no positive
// predictions, recall 1 with no positive gold labels, F1 0 when P + R = 0,
// accuracy 1 on an empty table.
struct Measures {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  double accuracy = 1.0;
};

Measures measures(const ContingencyTable& table);

struct ContingencyTableSet {
  std::vector<ContingencyTable> perCategory;

  // Cellwise sum over categories.
  ContingencyTable global() const;
  ContingencyTableSet& operator+=(const ContingencyTableSet& other);
  bool operator==(const ContingencyTableSet&) const = default;
};

// Document and category counts must match (DataError otherwise).
ContingencyTableSet compare(const ClassificationDb& predictions, const ClassificationDb& gold);

// micro = measures of the global table, macro = mean of per-category
// measures (macro-F1 is the mean of F1 values).
struct MicroMacro {
  double microPrecision = 1.0;
  double microRecall = 1.0;
  double microF1 = 1.0;
  double microAccuracy = 1.0;
  double macroPrecision = 1.0;
  double macroRecall = 1.0;
  double macroF1 = 1.0;
  double macroAccuracy = 1.0;
};

MicroMacro micro_macro(const ContingencyTableSet& tables);

// cells[gold * size + predicted].
struct ConfusionMatrix {
  std::uint32_t size = 0;
  std::vector<std::uint64_t> cells;

  std::uint64_t at(CategoryId gold, CategoryId predicted) const { return cells[gold * size + predicted]; }
  std::uint64_t total() const;
  std::uint64_t trace() const;
};

// Both maps must cover the same documents, all IDs below categoryCount.
ConfusionMatrix confusion(const std::map<DocId, CategoryId>& predictions, const std::map<DocId, CategoryId>& gold,
                          std::uint32_t categoryCount);

}  // namespace jatecs
