#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jatecs/cooccurrence.hpp"
#include "jatecs/types.hpp"

namespace jatecs {

struct CategoryTag {
  static constexpr std::string_view kind = "category";
};
struct FeatureTag {
  static constexpr std::string_view kind = "feature";
};
struct DocumentTag {
  static constexpr std::string_view kind = "document";
};

/// Bidirectional map between dense IDs and unique, non-empty names.
///
/// Backs the three concept DBs. IDs are handed out by add() in call order
/// starting at 0, so first-seen order of the input becomes ID order.
template <class Tag>
class NameTable {
 public:
  NameTable() = default;
  explicit NameTable(std::vector<std::string> names);

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(names_.size()); }
  bool empty() const noexcept { return names_.empty(); }

  const std::string& name(std::uint32_t id) const;
  std::optional<std::uint32_t> find(std::string_view name) const;
  std::uint32_t id(std::string_view name) const;
  bool contains(std::uint32_t id) const noexcept { return id < names_.size(); }

  std::uint32_t add(std::string name);
  std::uint32_t intern(std::string_view name);

  const std::vector<std::string>& names() const noexcept { return names_; }

  bool operator==(const NameTable& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

using CategoryDb = NameTable<CategoryTag>;
using FeatureDb = NameTable<FeatureTag>;
using DocumentDb = NameTable<DocumentTag>;

struct ContentEntry {
  FeatureId feature;
  std::uint32_t count;

  bool operator==(const ContentEntry&) const = default;
};

/// Occurrence counts, stored both document-major and feature-major.
class ContentDb {
 public:
  ContentDb() = default;
  // rows[d] must be sorted by feature, features < featureCount, counts > 0.
  ContentDb(std::uint32_t featureCount, std::vector<std::vector<ContentEntry>> rows);

  std::uint32_t documentCount() const noexcept { return static_cast<std::uint32_t>(rowOffsets_.size() - 1); }
  std::uint32_t featureCount() const noexcept { return featureCount_; }
  std::size_t nonZeroCount() const noexcept { return entries_.size(); }

  std::span<const ContentEntry> documentFeatures(DocId doc) const;
  std::span<const DocId> featureDocuments(FeatureId feature) const;

  std::uint32_t count(DocId doc, FeatureId feature) const;
  std::uint32_t documentFrequency(FeatureId feature) const;
  std::uint64_t documentLength(DocId doc) const;

  bool operator==(const ContentDb& other) const {
    return featureCount_ == other.featureCount_ && rowOffsets_ == other.rowOffsets_ && entries_ == other.entries_;
  }

 private:
  std::uint32_t featureCount_ = 0;
  std::vector<std::size_t> rowOffsets_{0};
  std::vector<ContentEntry> entries_;
  std::vector<std::size_t> columnOffsets_{0};
  std::vector<DocId> columnDocs_;
};

/// Multilabel document/category assignment.
class ClassificationDb {
 public:
  ClassificationDb() = default;
  // Duplicate pairs are rejected; order does not matter.
  ClassificationDb(std::uint32_t documentCount, std::uint32_t categoryCount,
                   std::vector<std::pair<DocId, CategoryId>> pairs);

  std::uint32_t documentCount() const noexcept { return documentCount_; }
  std::uint32_t categoryCount() const noexcept { return categoryCount_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  std::span<const CategoryId> documentCategories(DocId doc) const;
  std::span<const DocId> categoryDocuments(CategoryId category) const;
  bool contains(DocId doc, CategoryId category) const;

  // All pairs sorted by (doc, category).
  const std::vector<std::pair<DocId, CategoryId>>& pairs() const noexcept { return pairs_; }

  bool operator==(const ClassificationDb& other) const {
    return documentCount_ == other.documentCount_ && categoryCount_ == other.categoryCount_ && pairs_ == other.pairs_;
  }

 private:
  std::uint32_t documentCount_ = 0;
  std::uint32_t categoryCount_ = 0;
  std::vector<std::pair<DocId, CategoryId>> pairs_;
  std::vector<std::size_t> docOffsets_{0};
  std::vector<CategoryId> docCategories_;
  std::vector<std::size_t> categoryOffsets_{0};
  std::vector<DocId> categoryDocs_;
};

/// Feature validity per category. Global mode: everything is valid.
class DomainDb {
 public:
  enum class Mode { Global, Local };

  DomainDb() = default;
  static DomainDb global() { return {}; }
  static DomainDb local(std::uint32_t featureCount, std::uint32_t categoryCount,
                        std::vector<std::pair<FeatureId, CategoryId>> pairs);

  Mode mode() const noexcept { return mode_; }
  bool isLocal() const noexcept { return mode_ == Mode::Local; }
  bool valid(FeatureId feature, CategoryId category) const;

  // Local mode only: valid features of a category, ascending.
  std::span<const FeatureId> categoryFeatures(CategoryId category) const;
  // Local mode only: (feature, category) pairs sorted by feature, then category.
  std::vector<std::pair<FeatureId, CategoryId>> pairs() const;

  bool operator==(const DomainDb& other) const {
    return mode_ == other.mode_ && perCategory_ == other.perCategory_;
  }

 private:
  Mode mode_ = Mode::Global;
  std::vector<std::vector<FeatureId>> perCategory_;
};

struct WeightEntry {
  FeatureId feature;
  double weight;

  bool operator==(const WeightEntry&) const = default;
};

/// Real-valued feature weights per document.
class WeightingDb {
 public:
  WeightingDb() = default;
  // rows[d] must be sorted by feature with finite weights.
  explicit WeightingDb(std::vector<std::vector<WeightEntry>> rows);
  static WeightingDb from_counts(const ContentDb& content);

  std::uint32_t documentCount() const noexcept { return static_cast<std::uint32_t>(rows_.size()); }
  std::span<const WeightEntry> documentWeights(DocId doc) const;
  double weight(DocId doc, FeatureId feature) const;

  bool operator==(const WeightingDb& other) const { return rows_ == other.rows_; }

 private:
  std::vector<std::vector<WeightEntry>> rows_;
};

/// Immutable container tying the concept DBs to their relations.
///
/// Parts are held through shared pointers to const, so deriving a new index
/// (re-weighting, switching the domain) shares everything that did not
/// change and the original stays valid. Safe for concurrent readers.
class Index {
 public:
  Index();

  // Validates every cross reference and throws InvariantError on mismatch.
  static Index assemble(std::shared_ptr<const CategoryDb> categories, std::shared_ptr<const FeatureDb> features,
                        std::shared_ptr<const DocumentDb> documents, std::shared_ptr<const ContentDb> content,
                        std::shared_ptr<const ClassificationDb> classification,
                        std::shared_ptr<const DomainDb> domain, std::shared_ptr<const WeightingDb> weighting);

  const CategoryDb& categories() const noexcept { return *categories_; }
  const FeatureDb& features() const noexcept { return *features_; }
  const DocumentDb& documents() const noexcept { return *documents_; }
  const ContentDb& content() const noexcept { return *content_; }
  const ClassificationDb& classification() const noexcept { return *classification_; }
  const DomainDb& domain() const noexcept { return *domain_; }
  const WeightingDb& weighting() const noexcept { return *weighting_; }

  const std::shared_ptr<const CategoryDb>& categoryDbPtr() const noexcept { return categories_; }
  const std::shared_ptr<const FeatureDb>& featureDbPtr() const noexcept { return features_; }
  const std::shared_ptr<const DocumentDb>& documentDbPtr() const noexcept { return documents_; }
  const std::shared_ptr<const ContentDb>& contentDbPtr() const noexcept { return content_; }
  const std::shared_ptr<const ClassificationDb>& classificationDbPtr() const noexcept { return classification_; }

  std::uint32_t documentCount() const noexcept { return documents_->size(); }
  std::uint32_t featureCount() const noexcept { return features_->size(); }
  std::uint32_t categoryCount() const noexcept { return categories_->size(); }

  Index withWeighting(WeightingDb weighting) const;
  Index withDomain(DomainDb domain) const;
  Index withClassification(ClassificationDb classification) const;

  bool operator==(const Index& other) const;

 private:
  std::shared_ptr<const CategoryDb> categories_;
  std::shared_ptr<const FeatureDb> features_;
  std::shared_ptr<const DocumentDb> documents_;
  std::shared_ptr<const ContentDb> content_;
  std::shared_ptr<const ClassificationDb> classification_;
  std::shared_ptr<const DomainDb> domain_;
  std::shared_ptr<const WeightingDb> weighting_;
};

struct DocumentInput {
  std::string name;
  FeatureCounts features;
  std::vector<std::string> labels;
  // Initial weights replacing the raw count for selected features; every
  // name here must also appear in `features`.
  std::vector<std::pair<std::string, double>> presetWeights;
};

/// Incremental construction of an Index.
///
/// Category IDs follow the constructor's list. Feature IDs follow
/// first-seen order across documents, unless a fixed vocabulary is given,
/// in which case the vocabulary's IDs are reused and unknown features are
/// dropped (used to put a test collection into a training feature space).
class IndexBuilder {
 public:
  explicit IndexBuilder(std::vector<std::string> categories);

  void useVocabulary(std::shared_ptr<const FeatureDb> vocabulary);
  void add(DocumentInput document);
  Index build() &&;

 private:
  std::shared_ptr<CategoryDb> categories_;
  std::shared_ptr<FeatureDb> features_;
  std::shared_ptr<const FeatureDb> vocabulary_;
  std::shared_ptr<DocumentDb> documents_;
  std::vector<std::vector<ContentEntry>> rows_;
  std::vector<std::vector<WeightEntry>> weights_;
  std::vector<std::pair<DocId, CategoryId>> labels_;
};

struct DocumentFeature {
  FeatureId feature;
  std::uint32_t count;
  double weight;

  bool operator==(const DocumentFeature&) const = default;
};

// docs: (docName, features); labels: (docName, category labels).
Index build_index(const std::vector<std::pair<std::string, FeatureCounts>>& docs,
                  const std::vector<std::pair<std::string, std::vector<std::string>>>& labels,
                  const std::vector<std::string>& categories);

std::vector<DocumentFeature> query_document_features(const Index& index, DocId doc);
std::span<const DocId> query_category_documents(const Index& index, CategoryId category);
CooccurrenceCounts cooccurrence_counts(const Index& index, FeatureId feature, CategoryId category);

// Keeps the listed documents (re-numbered in ascending old-ID order). The
// feature and category spaces are shared unchanged with the source.
Index subset_documents(const Index& index, std::span<const DocId> keep);
// Keeps the listed features (re-numbered in ascending old-ID order). All
// documents are kept, including ones left empty.
Index subset_features(const Index& index, std::span<const FeatureId> keep);
// Re-expresses `index` in the feature space of `reference`: features are
// matched by text, unknown ones dropped, IDs taken from `reference`.
Index align_features(const Index& index, std::shared_ptr<const FeatureDb> reference);

}  // namespace jatecs
