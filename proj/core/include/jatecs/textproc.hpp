#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "jatecs/types.hpp"

namespace jatecs {

using StopList = std::unordered_set<std::string>;

// The bundled English stop list (core/data/english_stopwords.txt).
std::shared_ptr<const StopList> english_stoplist();

enum class Stemmer { None, EnglishPorter };
enum class ExtractorKind { BagOfWords, CharNGrams, Set };

/// Configuration of a feature extractor.
///
/// `stoplist` and `stemmer` apply to word tokens: in BOW mode and in
/// word-bounded n-gram mode. Continuous n-grams work on the raw lowercased
/// string and ignore both. `children` and `namespacing` are used by Set only.
struct ExtractorConfig {
  ExtractorKind kind = ExtractorKind::BagOfWords;
  std::uint32_t ngramSize = 3;
  bool wordBounded = true;
  std::shared_ptr<const StopList> stoplist;
  Stemmer stemmer = Stemmer::None;
  bool namespacing = true;
  std::vector<ExtractorConfig> children;
};

// Token-level options shared by BOW and word-bounded n-grams.
struct TokenOptions {
  const StopList* stoplist = nullptr;
  Stemmer stemmer = Stemmer::None;
};

// Replaces &amp; &lt; &gt; &quot; &apos; and numeric &#NN; / &#xHH; references.
// Unknown or malformed entities are left untouched.
std::string decode_entities(std::string_view text);

// Full Unicode simple lowercase mapping of a UTF-8 string.
std::string to_lower_utf8(std::string_view text);

// Entity-decoded, lowercased tokens split on Unicode whitespace and on
// , . ; : ! ? ( ) [ ] { } " ' < >. Tokens without any letter or digit are
// dropped. No stop-word removal or stemming here.
std::vector<std::string> tokenize(std::string_view text);

// All extractors return features in first-occurrence order with counts
// aggregated, so index IDs follow the text.
FeatureCounts extract_bow(std::string_view text, const TokenOptions& options = {});
FeatureCounts extract_char_ngrams(std::string_view text, std::uint32_t n, bool wordBounded,
                                  const TokenOptions& options = {});
FeatureCounts extract_set(std::string_view text, const std::vector<ExtractorConfig>& children, bool namespacing);

// English Porter stemmer, original 1980 rules. Tokens containing anything
// other than a-z are returned unchanged.
std::string porter_stem(std::string_view token);

class FeatureExtractor {
 public:
  explicit FeatureExtractor(ExtractorConfig config);

  const ExtractorConfig& config() const noexcept { return config_; }
  FeatureCounts extract(std::string_view text) const;

 private:
  ExtractorConfig config_;
};

}  // namespace jatecs
