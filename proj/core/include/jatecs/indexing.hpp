#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jatecs/corpus_io.hpp"
#include "jatecs/index.hpp"
#include "jatecs/textproc.hpp"

namespace jatecs {

// Runs the extractor over every document (in parallel) and builds the
// index in document order. Numeric features of a RawDocument are added
// with count 1 and their value as initial weight. With a vocabulary the
// documents are put into that feature space and unknown features dropped.
Index index_documents(std::span<const RawDocument> documents, const FeatureExtractor& extractor,
                      std::vector<std::string> categories, std::shared_ptr<const FeatureDb> vocabulary = nullptr);

// LibSVM instances: feature i is named after its decimal index, documents
// are named "doc<N>" (0-based). A positive value v is stored with count
// max(1, round(v)), any other nonzero value with count 1; the initial
// weight is v itself. Zero values are skipped.
Index index_instances(std::span<const SparseInstance> instances, std::vector<std::string> categories,
                      std::shared_ptr<const FeatureDb> vocabulary = nullptr);

// Distinct labels in first-seen order.
std::vector<std::string> collect_labels(std::span<const RawDocument> documents);
std::vector<std::string> collect_labels(std::span<const SparseInstance> instances);

}  // namespace jatecs
