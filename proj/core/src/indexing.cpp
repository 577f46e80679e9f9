#include "jatecs/indexing.hpp"

#include <cmath>
#include <unordered_set>

#include "jatecs/parallel.hpp"

namespace jatecs {

Index index_documents(std::span<const RawDocument> documents, const FeatureExtractor& extractor,
                      std::vector<std::string> categories, std::shared_ptr<const FeatureDb> vocabulary) {
  std::vector<FeatureCounts> extracted(documents.size());
  parallel_for(documents.size(), [&](std::size_t i) { extracted[i] = extractor.extract(documents[i].text); });

  IndexBuilder builder(std::move(categories));
  if (vocabulary) builder.useVocabulary(std::move(vocabulary));
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const auto& doc = documents[i];
    DocumentInput input{doc.name, std::move(extracted[i]), doc.labels, {}};
    for (const auto& [name, value] : doc.numericFeatures) {
      input.features.emplace_back(name, 1);
      input.presetWeights.emplace_back(name, value);
    }
    builder.add(std::move(input));
  }
  return std::move(builder).build();
}

Index index_instances(std::span<const SparseInstance> instances, std::vector<std::string> categories,
                      std::shared_ptr<const FeatureDb> vocabulary) {
  IndexBuilder builder(std::move(categories));
  if (vocabulary) builder.useVocabulary(std::move(vocabulary));
  for (std::size_t i = 0; i < instances.size(); ++i) {
    DocumentInput input;
    input.name = "doc" + std::to_string(i);
    input.labels = instances[i].labels;
    for (const auto& [index, value] : instances[i].pairs) {
      if (value == 0.0) continue;
      auto name = std::to_string(index);
      std::uint32_t count = 1;
      if (value > 0.0) count = static_cast<std::uint32_t>(std::max(1.0, std::min(std::round(value), 4294967295.0)));
      input.features.emplace_back(name, count);
      input.presetWeights.emplace_back(std::move(name), value);
    }
    builder.add(std::move(input));
  }
  return std::move(builder).build();
}

namespace {

template <class Range>
std::vector<std::string> distinct_labels(const Range& items) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& item : items)
    for (const auto& label : item.labels)
      if (seen.insert(label).second) out.push_back(label);
  return out;
}

}  // namespace

std::vector<std::string> collect_labels(std::span<const RawDocument> documents) { return distinct_labels(documents); }
std::vector<std::string> collect_labels(std::span<const SparseInstance> instances) {
  return distinct_labels(instances);
}

}  // namespace jatecs
