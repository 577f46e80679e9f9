#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jatecs {

// Dense identifiers, assigned contiguously from 0. The document count is
// limited to 2^31 - 1 so every ID also fits a signed 32-bit integer.
using DocId = std::uint32_t;
using FeatureId = std::uint32_t;
using CategoryId = std::uint32_t;

inline constexpr std::uint32_t kMaxDocuments = 0x7fffffffU;

// (featureText, occurrence count) as produced by the feature extractors.
using FeatureCount = std::pair<std::string, std::uint32_t>;
using FeatureCounts = std::vector<FeatureCount>;

}  // namespace jatecs
