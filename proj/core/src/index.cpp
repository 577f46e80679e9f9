#include "jatecs/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "jatecs/error.hpp"

namespace jatecs {

// ---------------------------------------------------------------- NameTable

template <class Tag>
NameTable<Tag>::NameTable(std::vector<std::string> names) {
  names_.reserve(names.size());
  for (auto& name : names) add(std::move(name));
}

template <class Tag>
const std::string& NameTable<Tag>::name(std::uint32_t id) const {
  if (id >= names_.size()) throw DataError("unknown " + std::string(Tag::kind) + " id " + std::to_string(id));
  return names_[id];
}

template <class Tag>
std::optional<std::uint32_t> NameTable<Tag>::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

template <class Tag>
std::uint32_t NameTable<Tag>::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw DataError("unknown " + std::string(Tag::kind) + " '" + std::string(name) + "'");
}

template <class Tag>
std::uint32_t NameTable<Tag>::add(std::string name) {
  if (name.empty()) throw DataError("empty " + std::string(Tag::kind) + " name");
  if (names_.size() >= kMaxDocuments) throw DataError(std::string(Tag::kind) + " id space exhausted");
  auto id = static_cast<std::uint32_t>(names_.size());
  auto [it, inserted] = ids_.emplace(name, id);
  if (!inserted) throw DataError("duplicate " + std::string(Tag::kind) + " '" + name + "'");
  names_.push_back(std::move(name));
  return id;
}

template <class Tag>
std::uint32_t NameTable<Tag>::intern(std::string_view name) {
  if (auto found = find(name)) return *found;
  return add(std::string(name));
}

template class NameTable<CategoryTag>;
template class NameTable<FeatureTag>;
template class NameTable<DocumentTag>;

// ---------------------------------------------------------------- ContentDb

ContentDb::ContentDb(std::uint32_t featureCount, std::vector<std::vector<ContentEntry>> rows)
    : featureCount_(featureCount) {
  if (rows.size() > kMaxDocuments) throw DataError("too many documents");
  std::size_t total = 0;
  for (const auto& row : rows) total += row.size();
  entries_.reserve(total);
  rowOffsets_.reserve(rows.size() + 1);

  std::vector<std::size_t> columnSizes(featureCount, 0);
  for (std::size_t d = 0; d < rows.size(); ++d) {
    const auto& row = rows[d];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& entry = row[i];
      if (entry.feature >= featureCount)
        throw DataError("content references unknown feature " + std::to_string(entry.feature));
      if (entry.count == 0) throw DataError("content stores a zero count");
      if (i > 0 && row[i - 1].feature >= entry.feature) throw DataError("content row not sorted by feature");
      ++columnSizes[entry.feature];
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
    rowOffsets_.push_back(entries_.size());
  }

  columnOffsets_.assign(featureCount + 1, 0);
  for (std::uint32_t f = 0; f < featureCount; ++f) columnOffsets_[f + 1] = columnOffsets_[f] + columnSizes[f];
  columnDocs_.resize(entries_.size());
  std::vector<std::size_t> cursor(columnOffsets_.begin(), columnOffsets_.end() - 1);
  for (std::size_t d = 0; d + 1 < rowOffsets_.size(); ++d) {
    for (std::size_t i = rowOffsets_[d]; i < rowOffsets_[d + 1]; ++i)
      columnDocs_[cursor[entries_[i].feature]++] = static_cast<DocId>(d);
  }
}

std::span<const ContentEntry> ContentDb::documentFeatures(DocId doc) const {
  if (doc >= documentCount()) throw DataError("unknown document id " + std::to_string(doc));
  return {entries_.data() + rowOffsets_[doc], rowOffsets_[doc + 1] - rowOffsets_[doc]};
}

std::span<const DocId> ContentDb::featureDocuments(FeatureId feature) const {
  if (feature >= featureCount_) throw DataError("unknown feature id " + std::to_string(feature));
  return {columnDocs_.data() + columnOffsets_[feature], columnOffsets_[feature + 1] - columnOffsets_[feature]};
}

std::uint32_t ContentDb::count(DocId doc, FeatureId feature) const {
  auto row = documentFeatures(doc);
  auto it = std::lower_bound(row.begin(), row.end(), feature,
                             [](const ContentEntry& e, FeatureId f) { return e.feature < f; });
  return (it != row.end() && it->feature == feature) ? it->count : 0;
}

std::uint32_t ContentDb::documentFrequency(FeatureId feature) const {
  return static_cast<std::uint32_t>(featureDocuments(feature).size());
}

std::uint64_t ContentDb::documentLength(DocId doc) const {
  std::uint64_t length = 0;
  for (const auto& entry : documentFeatures(doc)) length += entry.count;
  return length;
}

// --------------------------------------------------------- ClassificationDb

ClassificationDb::ClassificationDb(std::uint32_t documentCount, std::uint32_t categoryCount,
                                   std::vector<std::pair<DocId, CategoryId>> pairs)
    : documentCount_(documentCount), categoryCount_(categoryCount), pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto [doc, category] = pairs_[i];
    if (doc >= documentCount) throw DataError("classification references unknown document " + std::to_string(doc));
    if (category >= categoryCount)
      throw DataError("classification references unknown category " + std::to_string(category));
    if (i > 0 && pairs_[i - 1] == pairs_[i])
      throw DataError("duplicate classification pair (" + std::to_string(doc) + ", " + std::to_string(category) + ")");
  }

  docOffsets_.assign(documentCount + 1, 0);
  categoryOffsets_.assign(categoryCount + 1, 0);
  for (const auto& [doc, category] : pairs_) {
    ++docOffsets_[doc + 1];
    ++categoryOffsets_[category + 1];
  }
  std::partial_sum(docOffsets_.begin(), docOffsets_.end(), docOffsets_.begin());
  std::partial_sum(categoryOffsets_.begin(), categoryOffsets_.end(), categoryOffsets_.begin());

  docCategories_.resize(pairs_.size());
  categoryDocs_.resize(pairs_.size());
  std::vector<std::size_t> catCursor(categoryOffsets_.begin(), categoryOffsets_.end() - 1);
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto [doc, category] = pairs_[i];
    docCategories_[i] = category;
    categoryDocs_[catCursor[category]++] = doc;
  }
}

std::span<const CategoryId> ClassificationDb::documentCategories(DocId doc) const {
  if (doc >= documentCount_) throw DataError("unknown document id " + std::to_string(doc));
  return {docCategories_.data() + docOffsets_[doc], docOffsets_[doc + 1] - docOffsets_[doc]};
}

std::span<const DocId> ClassificationDb::categoryDocuments(CategoryId category) const {
  if (category >= categoryCount_) throw DataError("unknown category id " + std::to_string(category));
  return {categoryDocs_.data() + categoryOffsets_[category], categoryOffsets_[category + 1] - categoryOffsets_[category]};
}

bool ClassificationDb::contains(DocId doc, CategoryId category) const {
  auto cats = documentCategories(doc);
  return std::binary_search(cats.begin(), cats.end(), category);
}

// ----------------------------------------------------------------- DomainDb

DomainDb DomainDb::local(std::uint32_t featureCount, std::uint32_t categoryCount,
                         std::vector<std::pair<FeatureId, CategoryId>> pairs) {
  DomainDb domain;
  domain.mode_ = Mode::Local;
  domain.perCategory_.assign(categoryCount, {});
  for (const auto& [feature, category] : pairs) {
    if (feature >= featureCount) throw DataError("domain references unknown feature " + std::to_string(feature));
    if (category >= categoryCount) throw DataError("domain references unknown category " + std::to_string(category));
    domain.perCategory_[category].push_back(feature);
  }
  for (auto& features : domain.perCategory_) {
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());
  }
  return domain;
}

bool DomainDb::valid(FeatureId feature, CategoryId category) const {
  if (mode_ == Mode::Global) return true;
  if (category >= perCategory_.size()) return false;
  const auto& features = perCategory_[category];
  return std::binary_search(features.begin(), features.end(), feature);
}

std::span<const FeatureId> DomainDb::categoryFeatures(CategoryId category) const {
  if (mode_ == Mode::Global) throw UsageError("categoryFeatures() requires a local domain");
  if (category >= perCategory_.size()) throw DataError("unknown category id " + std::to_string(category));
  return perCategory_[category];
}

std::vector<std::pair<FeatureId, CategoryId>> DomainDb::pairs() const {
  std::vector<std::pair<FeatureId, CategoryId>> out;
  for (CategoryId c = 0; c < perCategory_.size(); ++c)
    for (FeatureId f : perCategory_[c]) out.emplace_back(f, c);
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------------- WeightingDb

WeightingDb::WeightingDb(std::vector<std::vector<WeightEntry>> rows) : rows_(std::move(rows)) {
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!std::isfinite(row[i].weight)) throw DataError("non-finite weight");
      if (i > 0 && row[i - 1].feature >= row[i].feature) throw DataError("weight row not sorted by feature");
    }
  }
}

WeightingDb WeightingDb::from_counts(const ContentDb& content) {
  std::vector<std::vector<WeightEntry>> rows(content.documentCount());
  for (DocId d = 0; d < content.documentCount(); ++d) {
    auto features = content.documentFeatures(d);
    rows[d].reserve(features.size());
    for (const auto& e : features) rows[d].push_back({e.feature, static_cast<double>(e.count)});
  }
  return WeightingDb(std::move(rows));
}

std::span<const WeightEntry> WeightingDb::documentWeights(DocId doc) const {
  if (doc >= rows_.size()) throw DataError("unknown document id " + std::to_string(doc));
  return rows_[doc];
}

double WeightingDb::weight(DocId doc, FeatureId feature) const {
  auto row = documentWeights(doc);
  auto it = std::lower_bound(row.begin(), row.end(), feature,
                             [](const WeightEntry& e, FeatureId f) { return e.feature < f; });
  return (it != row.end() && it->feature == feature) ? it->weight : 0.0;
}

// -------------------------------------------------------------------- Index

Index::Index()
    : categories_(std::make_shared<const CategoryDb>()),
      features_(std::make_shared<const FeatureDb>()),
      documents_(std::make_shared<const DocumentDb>()),
      content_(std::make_shared<const ContentDb>()),
      classification_(std::make_shared<const ClassificationDb>()),
      domain_(std::make_shared<const DomainDb>()),
      weighting_(std::make_shared<const WeightingDb>()) {}

Index Index::assemble(std::shared_ptr<const CategoryDb> categories, std::shared_ptr<const FeatureDb> features,
                      std::shared_ptr<const DocumentDb> documents, std::shared_ptr<const ContentDb> content,
                      std::shared_ptr<const ClassificationDb> classification, std::shared_ptr<const DomainDb> domain,
                      std::shared_ptr<const WeightingDb> weighting) {
  if (!categories || !features || !documents || !content || !classification || !domain || !weighting)
    throw InvariantError("index part missing");

  const auto D = documents->size();
  const auto F = features->size();
  const auto C = categories->size();
  if (content->documentCount() != D || content->featureCount() != F)
    throw InvariantError("content dimensions do not match the concept DBs");
  if (classification->documentCount() != D || classification->categoryCount() != C)
    throw InvariantError("classification dimensions do not match the concept DBs");
  if (weighting->documentCount() != D) throw InvariantError("weighting dimensions do not match the document DB");
  if (domain->isLocal()) {
    for (const auto& [f, c] : domain->pairs())
      if (f >= F || c >= C) throw InvariantError("domain references unknown ids");
  }
  for (DocId d = 0; d < D; ++d) {
    auto row = content->documentFeatures(d);
    auto it = row.begin();
    for (const auto& w : weighting->documentWeights(d)) {
      while (it != row.end() && it->feature < w.feature) ++it;
      if (it == row.end() || it->feature != w.feature)
        throw InvariantError("weight stored for a (document, feature) pair without content");
    }
  }

  Index index;
  index.categories_ = std::move(categories);
  index.features_ = std::move(features);
  index.documents_ = std::move(documents);
  index.content_ = std::move(content);
  index.classification_ = std::move(classification);
  index.domain_ = std::move(domain);
  index.weighting_ = std::move(weighting);
  return index;
}

Index Index::withWeighting(WeightingDb weighting) const {
  return assemble(categories_, features_, documents_, content_, classification_, domain_,
                  std::make_shared<const WeightingDb>(std::move(weighting)));
}

Index Index::withDomain(DomainDb domain) const {
  return assemble(categories_, features_, documents_, content_, classification_,
                  std::make_shared<const DomainDb>(std::move(domain)), weighting_);
}

Index Index::withClassification(ClassificationDb classification) const {
  return assemble(categories_, features_, documents_, content_,
                  std::make_shared<const ClassificationDb>(std::move(classification)), domain_, weighting_);
}

bool Index::operator==(const Index& other) const {
  return *categories_ == *other.categories_ && *features_ == *other.features_ && *documents_ == *other.documents_ &&
         *content_ == *other.content_ && *classification_ == *other.classification_ && *domain_ == *other.domain_ &&
         *weighting_ == *other.weighting_;
}

// ------------------------------------------------------------- IndexBuilder

IndexBuilder::IndexBuilder(std::vector<std::string> categories)
    : categories_(std::make_shared<CategoryDb>(std::move(categories))),
      features_(std::make_shared<FeatureDb>()),
      documents_(std::make_shared<DocumentDb>()) {}

void IndexBuilder::useVocabulary(std::shared_ptr<const FeatureDb> vocabulary) {
  if (!rows_.empty()) throw UsageError("vocabulary must be set before adding documents");
  vocabulary_ = std::move(vocabulary);
}

void IndexBuilder::add(DocumentInput document) {
  std::map<FeatureId, std::uint64_t> counts;
  for (const auto& [text, count] : document.features) {
    if (count == 0) throw DataError("non-positive count for feature '" + text + "' in document '" + document.name + "'");
    FeatureId id;
    if (vocabulary_) {
      auto found = vocabulary_->find(text);
      if (!found) continue;
      id = *found;
    } else {
      id = features_->intern(text);
    }
    counts[id] += count;
  }

  std::vector<CategoryId> labels;
  for (const auto& label : document.labels) {
    auto category = categories_->find(label);
    if (!category) throw DataError("unknown category '" + label + "' in document '" + document.name + "'");
    labels.push_back(*category);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  const DocId doc = documents_->add(std::move(document.name));

  std::vector<ContentEntry> row;
  std::vector<WeightEntry> weights;
  row.reserve(counts.size());
  weights.reserve(counts.size());
  for (const auto& [feature, count] : counts) {
    if (count > 0xffffffffULL) throw DataError("occurrence count overflow");
    row.push_back({feature, static_cast<std::uint32_t>(count)});
    weights.push_back({feature, static_cast<double>(count)});
  }
  for (const auto& [text, weight] : document.presetWeights) {
    auto found = vocabulary_ ? vocabulary_->find(text) : features_->find(text);
    if (!found && vocabulary_) continue;
    auto it = std::lower_bound(weights.begin(), weights.end(), found.value_or(0),
                               [](const WeightEntry& e, FeatureId f) { return e.feature < f; });
    if (!found || it == weights.end() || it->feature != *found)
      throw DataError("preset weight for feature '" + text + "' that does not occur in document '" +
                      documents_->name(doc) + "'");
    if (!std::isfinite(weight)) throw DataError("non-finite preset weight for feature '" + text + "'");
    it->weight = weight;
  }

  rows_.push_back(std::move(row));
  weights_.push_back(std::move(weights));
  for (CategoryId c : labels) labels_.emplace_back(doc, c);
}

Index IndexBuilder::build() && {
  std::shared_ptr<const FeatureDb> features = vocabulary_ ? vocabulary_ : std::shared_ptr<const FeatureDb>(features_);
  const auto D = documents_->size();
  auto content = std::make_shared<const ContentDb>(features->size(), std::move(rows_));
  auto classification = std::make_shared<const ClassificationDb>(D, categories_->size(), std::move(labels_));
  return Index::assemble(categories_, std::move(features), documents_, std::move(content), std::move(classification),
                         std::make_shared<const DomainDb>(), std::make_shared<const WeightingDb>(std::move(weights_)));
}

// --------------------------------------------------------------- operations

Index build_index(const std::vector<std::pair<std::string, FeatureCounts>>& docs,
                  const std::vector<std::pair<std::string, std::vector<std::string>>>& labels,
                  const std::vector<std::string>& categories) {
  std::unordered_map<std::string, std::vector<std::string>> labelsByDoc;
  for (const auto& [name, docLabels] : labels) {
    auto& slot = labelsByDoc[name];
    slot.insert(slot.end(), docLabels.begin(), docLabels.end());
  }
  std::unordered_map<std::string, bool> known;
  for (const auto& [name, features] : docs) known.emplace(name, true);
  for (const auto& [name, docLabels] : labels)
    if (!known.contains(name)) throw DataError("labels given for unknown document '" + name + "'");

  IndexBuilder builder(categories);
  for (const auto& [name, features] : docs) {
    DocumentInput input{name, features, {}, {}};
    if (auto it = labelsByDoc.find(name); it != labelsByDoc.end()) input.labels = it->second;
    builder.add(std::move(input));
  }
  return std::move(builder).build();
}

std::vector<DocumentFeature> query_document_features(const Index& index, DocId doc) {
  auto row = index.content().documentFeatures(doc);
  auto weights = index.weighting().documentWeights(doc);
  std::vector<DocumentFeature> out;
  out.reserve(row.size());
  auto w = weights.begin();
  for (const auto& entry : row) {
    while (w != weights.end() && w->feature < entry.feature) ++w;
    double weight = (w != weights.end() && w->feature == entry.feature) ? w->weight : 0.0;
    out.push_back({entry.feature, entry.count, weight});
  }
  return out;
}

std::span<const DocId> query_category_documents(const Index& index, CategoryId category) {
  return index.classification().categoryDocuments(category);
}

CooccurrenceCounts cooccurrence_counts(const Index& index, FeatureId feature, CategoryId category) {
  auto withFeature = index.content().featureDocuments(feature);
  auto inCategory = index.classification().categoryDocuments(category);
  std::uint64_t both = 0;
  auto i = withFeature.begin();
  auto j = inCategory.begin();
  while (i != withFeature.end() && j != inCategory.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++both;
      ++i;
      ++j;
    }
  }
  CooccurrenceCounts counts;
  counts.a = both;
  counts.b = withFeature.size() - both;
  counts.c = inCategory.size() - both;
  counts.d = index.documentCount() - counts.a - counts.b - counts.c;
  return counts;
}

namespace {

template <class Id>
std::vector<Id> normalize_keep(std::span<const Id> keep, std::uint32_t limit, std::string_view what) {
  if (keep.empty()) throw DataError("empty " + std::string(what) + " keep set");
  std::vector<Id> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.back() >= limit) throw DataError("unknown " + std::string(what) + " id " + std::to_string(sorted.back()));
  return sorted;
}

}  // namespace

Index subset_documents(const Index& index, std::span<const DocId> keep) {
  const auto docs = normalize_keep(keep, index.documentCount(), "document");
  std::vector<std::int64_t> remap(index.documentCount(), -1);

  auto documents = std::make_shared<DocumentDb>();
  std::vector<std::vector<ContentEntry>> rows;
  std::vector<std::vector<WeightEntry>> weights;
  std::vector<std::pair<DocId, CategoryId>> labels;
  rows.reserve(docs.size());
  weights.reserve(docs.size());
  for (DocId old : docs) {
    const DocId fresh = documents->add(index.documents().name(old));
    remap[old] = fresh;
    auto row = index.content().documentFeatures(old);
    rows.emplace_back(row.begin(), row.end());
    auto w = index.weighting().documentWeights(old);
    weights.emplace_back(w.begin(), w.end());
    for (CategoryId c : index.classification().documentCategories(old)) labels.emplace_back(fresh, c);
  }

  const auto D = documents->size();
  return Index::assemble(index.categoryDbPtr(), index.featureDbPtr(), std::move(documents),
                         std::make_shared<const ContentDb>(index.featureCount(), std::move(rows)),
                         std::make_shared<const ClassificationDb>(D, index.categoryCount(), std::move(labels)),
                         std::make_shared<const DomainDb>(index.domain()),
                         std::make_shared<const WeightingDb>(std::move(weights)));
}

namespace {

// Rebuilds content/weighting/domain under an old -> new feature map (-1
// drops the feature). Rows are re-sorted because the map need not be
// monotone.
Index remap_features(const Index& index, const std::vector<std::int64_t>& remap,
                     std::shared_ptr<const FeatureDb> features) {
  const auto D = index.documentCount();
  std::vector<std::vector<ContentEntry>> rows(D);
  std::vector<std::vector<WeightEntry>> weights(D);
  for (DocId d = 0; d < D; ++d) {
    for (const auto& e : index.content().documentFeatures(d))
      if (remap[e.feature] >= 0) rows[d].push_back({static_cast<FeatureId>(remap[e.feature]), e.count});
    for (const auto& w : index.weighting().documentWeights(d))
      if (remap[w.feature] >= 0) weights[d].push_back({static_cast<FeatureId>(remap[w.feature]), w.weight});
    std::sort(rows[d].begin(), rows[d].end(), [](auto& x, auto& y) { return x.feature < y.feature; });
    std::sort(weights[d].begin(), weights[d].end(), [](auto& x, auto& y) { return x.feature < y.feature; });
  }

  DomainDb domain;
  if (index.domain().isLocal()) {
    std::vector<std::pair<FeatureId, CategoryId>> pairs;
    for (const auto& [f, c] : index.domain().pairs())
      if (remap[f] >= 0) pairs.emplace_back(static_cast<FeatureId>(remap[f]), c);
    domain = DomainDb::local(features->size(), index.categoryCount(), std::move(pairs));
  }

  const auto F = features->size();
  return Index::assemble(index.categoryDbPtr(), std::move(features), index.documentDbPtr(),
                         std::make_shared<const ContentDb>(F, std::move(rows)), index.classificationDbPtr(),
                         std::make_shared<const DomainDb>(std::move(domain)),
                         std::make_shared<const WeightingDb>(std::move(weights)));
}

}  // namespace

Index subset_features(const Index& index, std::span<const FeatureId> keep) {
  const auto kept = normalize_keep(keep, index.featureCount(), "feature");
  std::vector<std::int64_t> remap(index.featureCount(), -1);
  auto features = std::make_shared<FeatureDb>();
  for (FeatureId old : kept) remap[old] = features->add(index.features().name(old));
  return remap_features(index, remap, std::move(features));
}

Index align_features(const Index& index, std::shared_ptr<const FeatureDb> reference) {
  if (!reference) throw UsageError("align_features needs a reference feature DB");
  if (index.featureDbPtr() == reference) return index;
  std::vector<std::int64_t> remap(index.featureCount(), -1);
  for (FeatureId f = 0; f < index.featureCount(); ++f)
    if (auto found = reference->find(index.features().name(f))) remap[f] = *found;
  return remap_features(index, remap, std::move(reference));
}

}  // namespace jatecs
