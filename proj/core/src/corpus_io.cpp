#include "jatecs/corpus_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "jatecs/error.hpp"
#include "jatecs/text_format.hpp"

namespace jatecs {
namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

class LabelCheck {
 public:
  explicit LabelCheck(std::span<const std::string> categories) : active_(!categories.empty()) {
    known_.insert(categories.begin(), categories.end());
  }

  void require(const std::string& label, const std::string& source, std::size_t line) const {
    if (active_ && !known_.contains(label)) throw ParseError(source, line, "unknown category '" + label + "'");
  }

 private:
  bool active_;
  std::unordered_set<std::string> known_;
};

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

// ------------------------------------------------------------ categories

std::vector<std::string> parse_category_list(std::istream& in, const std::string& source) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto label = trim(chomp_cr(line));
    if (label.empty() || label.front() == '#') continue;
    if (!seen.emplace(label).second) throw ParseError(source, number, "duplicate category '" + std::string(label) + "'");
    labels.emplace_back(label);
  }
  if (labels.empty()) throw DataError(source + ": category file is empty");
  return labels;
}

std::vector<std::string> read_category_file(const fs::path& path) {
  auto in = open_input(path);
  return parse_category_list(in, path.string());
}

// ---------------------------------------------------------------- LibSVM

std::vector<SparseInstance> parse_libsvm(std::istream& in, const std::string& source,
                                         std::span<const std::string> categories) {
  const LabelCheck check(categories);
  std::vector<SparseInstance> instances;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = chomp_cr(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    auto tokens = split_whitespace(view);
    if (tokens.empty()) continue;

    SparseInstance instance;
    std::size_t first = 0;
    if (tokens[0].find(':') == std::string_view::npos) {
      for (auto label : split(tokens[0], ',')) {
        if (label.empty()) throw ParseError(source, number, "empty label in '" + std::string(tokens[0]) + "'");
        instance.labels.emplace_back(label);
        check.require(instance.labels.back(), source, number);
      }
      first = 1;
    }
    for (std::size_t t = first; t < tokens.size(); ++t) {
      auto token = tokens[t];
      auto colon = token.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(source, number, "missing colon in '" + std::string(token) + "'");
      auto index = parse_uint(token.substr(0, colon));
      if (!index || *index == 0 || *index > 0xffffffffULL)
        throw ParseError(source, number, "invalid feature index in '" + std::string(token) + "'");
      auto value = parse_double(token.substr(colon + 1));
      if (!value || !std::isfinite(*value))
        throw ParseError(source, number, "unparsable number in '" + std::string(token) + "'");
      if (!instance.pairs.empty() && instance.pairs.back().first >= *index)
        throw ParseError(source, number, "indices not ascending at '" + std::string(token) + "'");
      instance.pairs.emplace_back(static_cast<std::uint32_t>(*index), *value);
    }
    instances.push_back(std::move(instance));
  }
  return instances;
}

std::vector<SparseInstance> read_libsvm(const fs::path& path, std::span<const std::string> categories) {
  auto in = open_input(path);
  return parse_libsvm(in, path.string(), categories);
}

void write_libsvm(std::span<const SparseInstance> instances, std::ostream& out) {
  for (const auto& instance : instances) {
    if (instance.labels.empty() && instance.pairs.empty())
      throw UsageError("cannot write an instance with neither labels nor features");
    bool firstToken = true;
    for (std::size_t i = 0; i < instance.labels.size(); ++i) {
      const auto& label = instance.labels[i];
      if (label.empty() || label.find_first_of(" \t\r\n,:#") != std::string::npos)
        throw UsageError("label '" + label + "' cannot be written in LibSVM format");
      if (i > 0) out << ',';
      out << label;
      firstToken = false;
    }
    std::uint32_t previous = 0;
    for (const auto& [index, value] : instance.pairs) {
      if (index == 0 || index <= previous) throw UsageError("feature indices must be positive and ascending");
      if (!std::isfinite(value)) throw UsageError("non-finite feature value");
      previous = index;
      if (!firstToken) out << ' ';
      out << index << ':' << format_double(value);
      firstToken = false;
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed");
}

void write_libsvm(std::span<const SparseInstance> instances, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  write_libsvm(instances, out);
}

// ------------------------------------------------------------------- CSV

std::vector<RawDocument> parse_csv(std::istream& in, const std::string& source, char separator,
                                   std::span<const std::string> categories, SetType setType) {
  const LabelCheck check(categories);
  std::vector<RawDocument> documents;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = chomp_cr(line);
    if (trim(view).empty()) continue;

    auto first = view.find(separator);
    if (first == std::string_view::npos) throw ParseError(source, number, "missing labels and text fields");
    auto second = view.find(separator, first + 1);
    if (second == std::string_view::npos) throw ParseError(source, number, "missing text field");

    RawDocument doc;
    doc.name = std::string(view.substr(0, first));
    if (doc.name.empty()) throw ParseError(source, number, "empty document name");
    for (auto label : split(view.substr(first + 1, second - first - 1), ',')) {
      label = trim(label);
      if (label.empty()) continue;
      doc.labels.emplace_back(label);
      check.require(doc.labels.back(), source, number);
    }
    doc.text = std::string(view.substr(second + 1));
    doc.setType = setType;
    documents.push_back(std::move(doc));
  }
  return documents;
}

std::vector<RawDocument> read_csv(const fs::path& path, char separator, std::span<const std::string> categories,
                                  SetType setType) {
  auto in = open_input(path);
  return parse_csv(in, path.string(), separator, categories, setType);
}

// ------------------------------------------------------------------ ARFF

namespace {

// Splits on `delimiter` outside single or double quotes. Pieces are
// trimmed but keep their quotes.
std::vector<std::string_view> split_outside_quotes(std::string_view text, char delimiter, const std::string& source,
                                                   std::size_t line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  char quote = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (quote) {
      if (ch == '\\') ++i;
      else if (ch == quote) quote = 0;
    } else if (ch == '\'' || ch == '"') {
      quote = ch;
    } else if (ch == delimiter) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (quote) throw ParseError(source, line, "unterminated quote");
  out.push_back(trim(text.substr(start)));
  return out;
}

std::string unquote(std::string_view token) {
  if (token.size() >= 2 && (token.front() == '\'' || token.front() == '"') && token.back() == token.front()) {
    std::string out;
    for (std::size_t i = 1; i + 1 < token.size(); ++i) {
      if (token[i] == '\\' && i + 2 < token.size()) {
        char next = token[++i];
        out += next == 'n' ? '\n' : next == 't' ? '\t' : next;
      } else {
        out += token[i];
      }
    }
    return out;
  }
  return std::string(token);
}

// Reads a possibly quoted leading token; returns it and the remainder.
std::pair<std::string, std::string_view> leading_token(std::string_view text, const std::string& source,
                                                       std::size_t line) {
  text = trim(text);
  if (text.empty()) return {{}, {}};
  if (text.front() == '\'' || text.front() == '"') {
    char quote = text.front();
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (text[i] == '\\') {
        ++i;
      } else if (text[i] == quote) {
        return {unquote(text.substr(0, i + 1)), trim(text.substr(i + 1))};
      }
    }
    throw ParseError(source, line, "unterminated quote");
  }
  auto end = text.find_first_of(" \t");
  if (end == std::string_view::npos) return {std::string(text), {}};
  return {std::string(text.substr(0, end)), trim(text.substr(end))};
}

ArffAttribute parse_attribute(std::string_view rest, const std::string& source, std::size_t line) {
  auto [name, typeText] = leading_token(rest, source, line);
  if (name.empty()) throw ParseError(source, line, "@attribute without a name");
  ArffAttribute attribute;
  attribute.name = std::move(name);
  if (typeText.empty()) throw ParseError(source, line, "@attribute '" + attribute.name + "' without a type");

  if (typeText.front() == '{') {
    if (typeText.back() != '}') throw ParseError(source, line, "unterminated nominal value list");
    attribute.type = ArffType::Nominal;
    std::set<std::string> seen;
    for (auto value : split_outside_quotes(typeText.substr(1, typeText.size() - 2), ',', source, line)) {
      auto unquoted = unquote(value);
      if (unquoted.empty()) throw ParseError(source, line, "empty nominal value");
      if (!seen.insert(unquoted).second) throw ParseError(source, line, "duplicate nominal value '" + unquoted + "'");
      attribute.nominalValues.push_back(std::move(unquoted));
    }
    return attribute;
  }
  if (iequals(typeText, "numeric") || iequals(typeText, "real") || iequals(typeText, "integer")) {
    attribute.type = ArffType::Numeric;
  } else if (iequals(typeText, "string")) {
    attribute.type = ArffType::String;
  } else {
    throw ParseError(source, line, "unsupported attribute type '" + std::string(typeText) + "'");
  }
  return attribute;
}

struct ArffValue {
  bool missing = true;
  std::string text;
  double number = 0.0;
};

ArffValue parse_value(const ArffAttribute& attribute, std::string_view token, const std::string& source,
                      std::size_t line) {
  ArffValue value;
  if (token == "?") return value;
  value.missing = false;
  value.text = unquote(token);
  switch (attribute.type) {
    case ArffType::Numeric: {
      auto number = parse_double(value.text);
      if (!number || !std::isfinite(*number))
        throw ParseError(source, line, "invalid numeric value '" + value.text + "' for '" + attribute.name + "'");
      value.number = *number;
      break;
    }
    case ArffType::Nominal:
      if (std::find(attribute.nominalValues.begin(), attribute.nominalValues.end(), value.text) ==
          attribute.nominalValues.end())
        throw ParseError(source, line,
                         "nominal value '" + value.text + "' not declared for '" + attribute.name + "'");
      break;
    case ArffType::String:
      break;
  }
  return value;
}

// Value of an attribute omitted from a sparse row.
ArffValue sparse_default(const ArffAttribute& attribute) {
  ArffValue value;
  value.missing = false;
  if (attribute.type == ArffType::Nominal) value.text = attribute.nominalValues.front();
  if (attribute.type == ArffType::Numeric) value.text = "0";
  return value;
}

}  // namespace

ArffDataset parse_arff(std::istream& in, const std::string& source) {
  ArffDataset dataset;
  bool inData = false;
  std::string line;
  std::size_t number = 0;

  auto finishHeader = [&] {
    if (dataset.attributes.empty()) throw ParseError(source, number, "@data before any @attribute");
    for (std::size_t i = 0; i < dataset.attributes.size(); ++i)
      if (iequals(dataset.attributes[i].name, "class")) dataset.classAttribute = i;
    if (!dataset.classAttribute) {
      for (std::size_t i = dataset.attributes.size(); i-- > 0;) {
        if (dataset.attributes[i].type == ArffType::Nominal) {
          dataset.classAttribute = i;
          break;
        }
      }
    }
  };

  while (std::getline(in, line)) {
    ++number;
    auto view = trim(chomp_cr(line));
    if (view.empty() || view.front() == '%') continue;

    if (!inData) {
      if (view.front() != '@') throw ParseError(source, number, "expected a header declaration");
      auto [keyword, rest] = leading_token(view, source, number);
      if (iequals(keyword, "@relation")) {
        dataset.relation = leading_token(rest, source, number).first;
      } else if (iequals(keyword, "@attribute")) {
        auto attribute = parse_attribute(rest, source, number);
        for (const auto& existing : dataset.attributes)
          if (existing.name == attribute.name)
            throw ParseError(source, number, "duplicate attribute '" + attribute.name + "'");
        dataset.attributes.push_back(std::move(attribute));
      } else if (iequals(keyword, "@data")) {
        finishHeader();
        inData = true;
      } else {
        throw ParseError(source, number, "unknown declaration '" + keyword + "'");
      }
      continue;
    }

    const auto& attributes = dataset.attributes;
    std::vector<ArffValue> values(attributes.size());
    if (view.front() == '{') {
      if (view.back() != '}') throw ParseError(source, number, "unterminated sparse row");
      for (std::size_t i = 0; i < attributes.size(); ++i) values[i] = sparse_default(attributes[i]);
      std::vector<bool> assigned(attributes.size(), false);
      auto body = trim(view.substr(1, view.size() - 2));
      if (!body.empty()) {
        for (auto item : split_outside_quotes(body, ',', source, number)) {
          auto space = item.find_first_of(" \t");
          if (space == std::string_view::npos)
            throw ParseError(source, number, "sparse entry '" + std::string(item) + "' needs an index and a value");
          auto index = parse_uint(item.substr(0, space));
          if (!index) throw ParseError(source, number, "invalid sparse index in '" + std::string(item) + "'");
          if (*index >= attributes.size())
            throw ParseError(source, number, "sparse index " + std::to_string(*index) + " out of range");
          if (assigned[*index]) throw ParseError(source, number, "sparse index " + std::to_string(*index) + " repeated");
          assigned[*index] = true;
          values[*index] = parse_value(attributes[*index], trim(item.substr(space)), source, number);
        }
      }
    } else {
      auto tokens = split_outside_quotes(view, ',', source, number);
      if (tokens.size() != attributes.size())
        throw ParseError(source, number,
                         "row has " + std::to_string(tokens.size()) + " values, expected " +
                             std::to_string(attributes.size()));
      for (std::size_t i = 0; i < attributes.size(); ++i)
        values[i] = parse_value(attributes[i], tokens[i], source, number);
    }

    RawDocument doc;
    doc.name = "row" + std::to_string(dataset.documents.size());
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      const auto& value = values[i];
      if (value.missing) continue;
      if (dataset.classAttribute && i == *dataset.classAttribute) {
        if (!value.text.empty()) doc.labels.push_back(value.text);
        continue;
      }
      switch (attributes[i].type) {
        case ArffType::String:
          if (value.text.empty()) break;
          if (!doc.text.empty()) doc.text += ' ';
          doc.text += value.text;
          break;
        case ArffType::Numeric:
          if (value.number != 0.0) doc.numericFeatures.emplace_back(attributes[i].name, value.number);
          break;
        case ArffType::Nominal:
          doc.numericFeatures.emplace_back(attributes[i].name + "=" + value.text, 1.0);
          break;
      }
    }
    dataset.documents.push_back(std::move(doc));
  }
  if (!inData) throw DataError(source + ": missing @data section");
  return dataset;
}

ArffDataset read_arff(const fs::path& path) {
  auto in = open_input(path);
  return parse_arff(in, path.string());
}

}  // namespace jatecs
