#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jatecs {

enum class SetType { Training, Test };

struct RawDocument {
  std::string name;
  std::string text;
  std::vector<std::string> labels;
  SetType setType = SetType::Training;
  // Named real-valued features that bypass text extraction (ARFF numeric
  // and nominal attributes). Indexed with count 1 and the value as weight.
  std::vector<std::pair<std::string, double>> numericFeatures;

  bool operator==(const RawDocument&) const = default;
};

// One LibSVM / SVMlight line: labels plus (1-based index, value) pairs in
// strictly ascending index order.
struct SparseInstance {
  std::vector<std::string> labels;
  std::vector<std::pair<std::uint32_t, double>> pairs;

  bool operator==(const SparseInstance&) const = default;
};

// Every reader throws ParseError (with line number) on malformed input and
// DataError when the file cannot be opened. `source` names the stream in
// error messages. An empty `categories` span disables label validation.

// One label per non-empty line; lines starting with '#' are comments.
std::vector<std::string> read_category_file(const std::filesystem::path& path);
std::vector<std::string> parse_category_list(std::istream& in, const std::string& source);

// `<labels> <i>:<v> ...` where labels is one token, optionally
// comma-joined for multilabel data. A first token containing ':' means the
// line has no labels. '#' starts a trailing comment.
std::vector<SparseInstance> read_libsvm(const std::filesystem::path& path,
                                        std::span<const std::string> categories = {});
std::vector<SparseInstance> parse_libsvm(std::istream& in, const std::string& source,
                                         std::span<const std::string> categories = {});
void write_libsvm(std::span<const SparseInstance> instances, const std::filesystem::path& path);
void write_libsvm(std::span<const SparseInstance> instances, std::ostream& out);

// `docName<sep>label,label<sep>text...`; the text is everything after the
// second separator, so it may itself contain the separator.
std::vector<RawDocument> read_csv(const std::filesystem::path& path, char separator,
                                  std::span<const std::string> categories = {},
                                  SetType setType = SetType::Training);
std::vector<RawDocument> parse_csv(std::istream& in, const std::string& source, char separator,
                                   std::span<const std::string> categories = {},
                                   SetType setType = SetType::Training);

enum class ArffType { Numeric, String, Nominal };

struct ArffAttribute {
  std::string name;
  ArffType type = ArffType::Numeric;
  std::vector<std::string> nominalValues;

  bool operator==(const ArffAttribute&) const = default;
};

struct ArffDataset {
  std::string relation;
  std::vector<ArffAttribute> attributes;
  std::optional<std::size_t> classAttribute;
  std::vector<RawDocument> documents;
};

/// Reads the ARFF subset used for text data.
///
/// Supported: @relation, @attribute with numeric/real/integer, string or
/// {nominal,list} types, @data with dense and sparse `{index value, ...}`
/// rows (0-based indices), quoted values, '?' for missing values and '%'
/// comments. Keywords are case-insensitive.
///
/// The class attribute is the attribute named "class" if there is one,
/// otherwise the last nominal attribute. String attributes are joined with
/// single spaces into the document text. Numeric attributes become features
/// named after the attribute; other nominal attributes become features
/// named "attribute=value". Documents are named "row<N>" (0-based).
ArffDataset read_arff(const std::filesystem::path& path);
ArffDataset parse_arff(std::istream& in, const std::string& source);

}  // namespace jatecs
