// Porter, "An algorithm for suffix stripping", 1980. Original rule set:
// abli -> able in step 2 and no logi rule.

#include "semtab/text.hpp"

#include <array>
#include <utility>

namespace semtab {

namespace {

class Stemmer {
public:
  explicit Stemmer(std::string_view word) : w_(word) {}

  std::string run() && {
    if (w_.size() <= 2) {
      return std::move(w_);
    }
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
  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  bool consonant(std::size_t i) const noexcept {
    switch (w_[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      return i == 0 || !consonant(i - 1);
    default:
      return true;
    }
  }

  // m() of w_[0, len).
  int measure(std::size_t len) const noexcept {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < len; ++i) {
      const bool vowel = !consonant(i);
      if (prev_vowel && !vowel) {
        ++m;
      }
      prev_vowel = vowel;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const noexcept {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) {
        return true;
      }
    }
    return false;
  }

  bool double_consonant(std::size_t len) const noexcept {
    return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
  }

  bool cvc(std::size_t len) const noexcept {
    if (len < 3 || !consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) {
      return false;
    }
    const char last = w_[len - 1];
    return last != 'w' && last != 'x' && last != 'y';
  }

  bool ends(std::string_view suffix) const noexcept {
    return w_.size() >= suffix.size() &&
           std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  std::size_t stem_len(std::string_view suffix) const noexcept {
    return w_.size() - suffix.size();
  }

  void replace(std::string_view suffix, std::string_view replacement) {
    w_.resize(stem_len(suffix));
    w_ += replacement;
  }

  // First rule whose suffix matches decides; it fires only if the stem has m > min_measure.
  template <std::size_t N>
  void apply_rules(const std::array<Rule, N>& rules, int min_measure) {
    for (const auto& rule : rules) {
      if (ends(rule.suffix)) {
        if (measure(stem_len(rule.suffix)) > min_measure) {
          replace(rule.suffix, rule.replacement);
        }
        return;
      }
    }
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
    if (ends("eed")) {
      if (measure(stem_len("eed")) > 0) {
        replace("eed", "ee");
      }
      return;
    }
    bool stripped = false;
    if (ends("ed") && has_vowel(stem_len("ed"))) {
      replace("ed", "");
      stripped = true;
    } else if (ends("ing") && has_vowel(stem_len("ing"))) {
      replace("ing", "");
      stripped = true;
    }
    if (!stripped) {
      return;
    }
    if (ends("at") || ends("bl") || ends("iz")) {
      w_ += 'e';
    } else if (double_consonant(w_.size())) {
      const char last = w_.back();
      if (last != 'l' && last != 's' && last != 'z') {
        w_.pop_back();
      }
    } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
      w_ += 'e';
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(w_.size() - 1)) {
      w_.back() = 'i';
    }
  }

  void step2() {
    static constexpr std::array<Rule, 20> rules = {{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_rules(rules, 0);
  }

  void step3() {
    static constexpr std::array<Rule, 7> rules = {{
        {"icate", "ic"},
        {"ative", ""},
        {"alize", "al"},
        {"iciti", "ic"},
        {"ical", "ic"},
        {"ful", ""},
        {"ness", ""},
    }};
    apply_rules(rules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> suffixes = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
    };
    for (const auto suffix : suffixes) {
      if (!ends(suffix)) {
        continue;
      }
      const auto len = stem_len(suffix);
      if (suffix == "ion" && (len == 0 || (w_[len - 1] != 's' && w_[len - 1] != 't'))) {
        return;
      }
      if (measure(len) > 1) {
        w_.resize(len);
      }
      return;
    }
  }

  void step5a() {
    if (!ends("e")) {
      return;
    }
    const auto len = w_.size() - 1;
    const int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) {
      w_.pop_back();
    }
  }

  void step5b() {
    if (measure(w_.size()) > 1 && double_consonant(w_.size()) && w_.back() == 'l') {
      w_.pop_back();
    }
  }

  std::string w_;
};

} // namespace

std::string porter_stem(std::string_view word) {
  return Stemmer(word).run();
}

} // namespace semtab
