#include "jatecs/textproc.hpp"

#include <locale>
#include <stdexcept>
#include <unordered_map>

#include "jatecs/error.hpp"
#include "jatecs/text_format.hpp"

namespace jatecs {
namespace {

// ------------------------------------------------------------------ UTF-8

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at text[pos] and advances pos. Invalid
// sequences decode to U+FFFD and consume one byte.
char32_t next_code_point(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t length = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    cp = lead & 0x07;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + length > text.size()) {
    ++pos;
    return kReplacement;
  }
  for (std::size_t i = 1; i < length; ++i) {
    const auto byte = static_cast<unsigned char>(text[pos + i]);
    if ((byte & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (byte & 0x3F);
  }
  pos += length;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Code point boundaries of a UTF-8 string: offsets[i] is the byte offset
// of code point i, offsets.back() == text.size().
std::vector<std::size_t> code_point_offsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  std::size_t pos = 0;
  while (pos < text.size()) {
    offsets.push_back(pos);
    next_code_point(text, pos);
  }
  offsets.push_back(text.size());
  return offsets;
}

// Case mapping and classification come from the C.UTF-8 locale when the
// platform has it; otherwise only ASCII is folded.
const std::ctype<wchar_t>& wide_ctype() {
  static const std::locale locale = [] {
    try {
      return std::locale("C.UTF-8");
    } catch (const std::runtime_error&) {
      return std::locale::classic();
    }
  }();
  return std::use_facet<std::ctype<wchar_t>>(locale);
}

char32_t lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  if (cp > 0x10FFFF) return cp;
  return static_cast<char32_t>(wide_ctype().tolower(static_cast<wchar_t>(cp)));
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  if (cp == kReplacement) return false;
  return wide_ctype().is(std::ctype_base::alnum, static_cast<wchar_t>(cp));
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_separator(char32_t cp) {
  switch (cp) {
    case ',': case '.': case ';': case ':': case '!': case '?': case '(': case ')':
    case '[': case ']': case '{': case '}': case '"': case '\'': case '<': case '>':
      return true;
    default:
      return is_space(cp);
  }
}

// ------------------------------------------------------------- aggregation

class Accumulator {
 public:
  void add(std::string feature, std::uint32_t count = 1) {
    auto [it, inserted] = positions_.emplace(feature, out_.size());
    if (inserted) {
      out_.emplace_back(std::move(feature), count);
    } else {
      out_[it->second].second += count;
    }
  }

  FeatureCounts take() && { return std::move(out_); }

 private:
  FeatureCounts out_;
  std::unordered_map<std::string, std::size_t> positions_;
};

std::vector<std::string> processed_tokens(std::string_view text, const TokenOptions& options) {
  auto tokens = tokenize(text);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (auto& token : tokens) {
    if (options.stoplist && options.stoplist->contains(token)) continue;
    if (options.stemmer == Stemmer::EnglishPorter) token = porter_stem(token);
    if (!token.empty()) out.push_back(std::move(token));
  }
  return out;
}

void add_ngrams(Accumulator& acc, std::string_view text, std::uint32_t n) {
  if (text.empty()) return;
  const auto offsets = code_point_offsets(text);
  const std::size_t length = offsets.size() - 1;
  if (length <= n) {
    acc.add(std::string(text));
    return;
  }
  for (std::size_t i = 0; i + n <= length; ++i)
    acc.add(std::string(text.substr(offsets[i], offsets[i + n] - offsets[i])));
}

}  // namespace

// ---------------------------------------------------------------- public

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += text[i++];
      continue;
    }
    const auto name = text.substr(i + 1, semi - i - 1);
    std::optional<char32_t> decoded;
    if (name == "amp") decoded = U'&';
    else if (name == "lt") decoded = U'<';
    else if (name == "gt") decoded = U'>';
    else if (name == "quot") decoded = U'"';
    else if (name == "apos") decoded = U'\'';
    else if (name.size() > 1 && name[0] == '#') {
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const auto digits = name.substr(hex ? 2 : 1);
      if (!digits.empty()) {
        char32_t value = 0;
        bool ok = true;
        for (char ch : digits) {
          int digit;
          if (ch >= '0' && ch <= '9') digit = ch - '0';
          else if (hex && ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
          else if (hex && ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
          else { ok = false; break; }
          value = value * (hex ? 16 : 10) + static_cast<char32_t>(digit);
          if (value > 0x10FFFF) { ok = false; break; }
        }
        if (ok && value != 0) decoded = value;
      }
    }
    if (!decoded) {
      out += text[i++];
      continue;
    }
    append_utf8(out, *decoded);
    i = semi + 1;
  }
  return out;
}

std::string to_lower_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) append_utf8(out, lower(next_code_point(text, pos)));
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  const std::string decoded = decode_entities(text);
  std::vector<std::string> tokens;
  std::string current;
  bool hasWordChar = false;
  auto flush = [&] {
    if (!current.empty() && hasWordChar) tokens.push_back(std::move(current));
    current.clear();
    hasWordChar = false;
  };
  std::size_t pos = 0;
  while (pos < decoded.size()) {
    const char32_t cp = next_code_point(decoded, pos);
    if (is_separator(cp)) {
      flush();
      continue;
    }
    const char32_t lc = lower(cp);
    hasWordChar = hasWordChar || is_word_char(lc);
    append_utf8(current, lc);
  }
  flush();
  return tokens;
}

FeatureCounts extract_bow(std::string_view text, const TokenOptions& options) {
  Accumulator acc;
  for (auto& token : processed_tokens(text, options)) acc.add(std::move(token));
  return std::move(acc).take();
}

FeatureCounts extract_char_ngrams(std::string_view text, std::uint32_t n, bool wordBounded,
                                  const TokenOptions& options) {
  if (n == 0) throw UsageError("n-gram size must be at least 1");
  Accumulator acc;
  if (wordBounded) {
    for (const auto& token : processed_tokens(text, options)) add_ngrams(acc, token, n);
    return std::move(acc).take();
  }

  // Continuous mode: lowercased text with whitespace runs collapsed to a
  // single space and trimmed at both ends.
  const std::string decoded = decode_entities(text);
  std::string normalized;
  bool pendingSpace = false;
  std::size_t pos = 0;
  while (pos < decoded.size()) {
    const char32_t cp = next_code_point(decoded, pos);
    if (is_space(cp)) {
      pendingSpace = !normalized.empty();
      continue;
    }
    if (pendingSpace) normalized += ' ';
    pendingSpace = false;
    append_utf8(normalized, lower(cp));
  }
  add_ngrams(acc, normalized, n);
  return std::move(acc).take();
}

FeatureCounts extract_set(std::string_view text, const std::vector<ExtractorConfig>& children, bool namespacing) {
  Accumulator acc;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const std::string prefix = namespacing ? std::to_string(i) + "#" : std::string();
    for (auto& [feature, count] : FeatureExtractor(children[i]).extract(text)) acc.add(prefix + feature, count);
  }
  return std::move(acc).take();
}

FeatureExtractor::FeatureExtractor(ExtractorConfig config) : config_(std::move(config)) {
  if (config_.kind == ExtractorKind::CharNGrams && config_.ngramSize == 0)
    throw UsageError("n-gram size must be at least 1");
  if (config_.kind == ExtractorKind::Set && config_.children.empty())
    throw UsageError("set extractor needs at least one child extractor");
}

FeatureCounts FeatureExtractor::extract(std::string_view text) const {
  const TokenOptions options{config_.stoplist.get(), config_.stemmer};
  switch (config_.kind) {
    case ExtractorKind::BagOfWords: return extract_bow(text, options);
    case ExtractorKind::CharNGrams: return extract_char_ngrams(text, config_.ngramSize, config_.wordBounded, options);
    case ExtractorKind::Set: return extract_set(text, config_.children, config_.namespacing);
  }
  throw InvariantError("unhandled extractor kind");
}

}  // namespace jatecs
