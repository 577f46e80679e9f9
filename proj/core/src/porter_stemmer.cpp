// English Porter stemmer, following the rules of the original 1980
// description (no later "departures": abli -> able, no logi rule, and
// words of one or two letters are stemmed like any other).

#include <algorithm>
#include <array>
#include <string>
#include <string_view>

#include "jatecs/textproc.hpp"

namespace jatecs {
namespace {

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

class PorterRun {
 public:
  explicit PorterRun(std::string_view word) : w_(word) {}

  std::string run() {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return std::move(w_);
  }

 private:
  bool consonant(std::size_t i) const {
    switch (w_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !consonant(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in w_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool vowel_in(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) return false;
    char last = w_[len - 1];
    return last != 'w' && last != 'x' && last != 'y';
  }

  bool ends(std::string_view suffix) const {
    return w_.size() >= suffix.size() && std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  std::size_t stem_length(std::string_view suffix) const { return w_.size() - suffix.size(); }

  void replace(std::string_view suffix, std::string_view replacement) {
    w_.resize(stem_length(suffix));
    w_ += replacement;
  }

  // Longest matching suffix wins; if its condition fails nothing happens.
  template <std::size_t N, class Condition>
  void apply_longest(const std::array<Rule, N>& rules, Condition condition) {
    const Rule* best = nullptr;
    for (const auto& rule : rules)
      if (ends(rule.suffix) && (!best || rule.suffix.size() > best->suffix.size())) best = &rule;
    if (best && condition(*best)) replace(best->suffix, best->replacement);
  }

  void step1a() {
    if (ends("sses")) {
      replace("sses", "ss");
    } else if (ends("ies")) {
      replace("ies", "i");
    } else if (ends("ss")) {
      // unchanged
    } else if (ends("s")) {
      replace("s", "");
    }
  }

  void step1b() {
    bool trimmed = false;
    if (ends("eed")) {
      if (measure(stem_length("eed")) > 0) replace("eed", "ee");
    } else if (ends("ed") && vowel_in(stem_length("ed"))) {
      replace("ed", "");
      trimmed = true;
    } else if (ends("ing") && vowel_in(stem_length("ing"))) {
      replace("ing", "");
      trimmed = true;
    }
    if (!trimmed) return;

    if (ends("at") || ends("bl") || ends("iz")) {
      w_ += 'e';
    } else if (double_consonant(w_.size())) {
      char last = w_.back();
      if (last != 'l' && last != 's' && last != 'z') w_.pop_back();
    } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
      w_ += 'e';
    }
  }

  void step1c() {
    if (ends("y") && vowel_in(stem_length("y"))) w_.back() = 'i';
  }

  void step2() {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},    {"izer", "ize"},
        {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},        {"ousli", "ous"},
        {"ization", "ize"}, {"ation", "ate"},   {"ator", "ate"},    {"alism", "al"},     {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},    {"biliti", "ble"},
    }};
    apply_longest(rules, [&](const Rule& r) { return measure(stem_length(r.suffix)) > 0; });
  }

  void step3() {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""}, {"ness", ""},
    }};
    apply_longest(rules, [&](const Rule& r) { return measure(stem_length(r.suffix)) > 0; });
  }

  void step4() {
    static constexpr std::array<Rule, 19> rules{{
        {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},  {"able", ""}, {"ible", ""},
        {"ant", ""},  {"ement", ""}, {"ment", ""}, {"ent", ""}, {"ion", ""}, {"ou", ""},   {"ism", ""},
        {"ate", ""},  {"iti", ""},  {"ous", ""},  {"ive", ""}, {"ize", ""},
    }};
    apply_longest(rules, [&](const Rule& r) {
      const auto len = stem_length(r.suffix);
      if (measure(len) <= 1) return false;
      if (r.suffix == "ion") return len > 0 && (w_[len - 1] == 's' || w_[len - 1] == 't');
      return true;
    });
  }

  void step5a() {
    if (!ends("e")) return;
    const auto len = stem_length("e");
    const int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) w_.pop_back();
  }

  void step5b() {
    if (measure(w_.size()) > 1 && double_consonant(w_.size()) && w_.back() == 'l') w_.pop_back();
  }

  std::string w_;
};

}  // namespace

std::string porter_stem(std::string_view token) {
  if (token.empty()) return {};
  if (!std::all_of(token.begin(), token.end(), [](char ch) { return ch >= 'a' && ch <= 'z'; }))
    return std::string(token);
  return PorterRun(token).run();
}

}  // namespace jatecs
