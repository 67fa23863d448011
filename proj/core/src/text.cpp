#include "semtab/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace semtab {

namespace {

// NLTK's English list, verbatim.
constexpr std::array<std::string_view, 179> kStopwords = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're",
    "you've", "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his",
    "himself", "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself",
    "they", "them", "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
    "that", "that'll", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing",
    "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
    "while", "of", "at", "by", "for", "with", "about", "against", "between", "into",
    "through", "during", "before", "after", "above", "below", "to", "from", "up", "down",
    "in", "out", "on", "off", "over", "under", "again", "further", "then", "once",
    "here", "there", "when", "where", "why", "how", "all", "any", "both", "each",
    "few", "more", "most", "other", "some", "such", "no", "nor", "not", "only",
    "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
    "just", "don", "don't", "should", "should've", "now", "d", "ll", "m", "o",
    "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn", "didn't",
    "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn", "isn't",
    "ma", "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't", "shouldn",
    "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't", "wouldn", "wouldn't",
};

bool is_word_byte(unsigned char ch) noexcept {
  return std::isalnum(ch) != 0 || ch >= 0x80;
}

bool is_digit(char ch) noexcept {
  return ch >= '0' && ch <= '9';
}

bool is_vowel(char ch) noexcept {
  return ch == 'a' || ch == 'e' || ch == 'i' || ch == 'o' || ch == 'u';
}


bool ends_with(std::string_view s, std::string_view suffix) noexcept {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_consonant_at(std::string_view w, std::size_t i) noexcept {
  if (is_vowel(w[i])) {
    return false;
  }
  if (w[i] == 'y') {
    return i == 0 || !is_consonant_at(w, i - 1);
  }
  return true;
}

// Number of vowel-consonant sequences.
int measure(std::string_view w) noexcept {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool vowel = !is_consonant_at(w, i);
    if (prev_vowel && !vowel) {
      ++m;
    }
    prev_vowel = vowel;
  }
  return m;
}

bool contains_vowel(std::string_view w) noexcept {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_consonant_at(w, i)) {
      return true;
    }
  }
  return false;
}

bool ends_cvc(std::string_view w) noexcept {
  const auto n = w.size();
  return n >= 3 && is_consonant_at(w, n - 3) && !is_consonant_at(w, n - 2) &&
         is_consonant_at(w, n - 1) && w[n - 1] != 'w' && w[n - 1] != 'x' && w[n - 1] != 'y';
}

// Restores the base after -ed/-ing: "conflat" -> "conflate", "stopp" -> "stop",
// "hop" stays, "siz" -> "size". Same repair rules as Porter step 1b.
std::string repair_stem(std::string stem) {
  const auto n = stem.size();
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) {
    return stem + "e";
  }
  if (n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant_at(stem, n - 1) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) {
    return stem + "e";
  }
  return stem;
}

} // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') {
      ch = static_cast<char>(ch - 'A' + 'a');
    }
  }
  return out;
}

std::span<const std::string_view> stopwords() noexcept {
  return kStopwords;
}

bool is_stopword(std::string_view token) noexcept {
  static const std::unordered_set<std::string_view> set(kStopwords.begin(), kStopwords.end());
  return set.contains(token);
}

TokenList tokenize(std::string_view text, bool remove_stopwords) {
  TokenList out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const auto start = i;
    while (i < text.size()) {
      const auto ch = static_cast<unsigned char>(text[i]);
      if (is_word_byte(ch)) {
        ++i;
      } else if ((ch == '.' || ch == ',') && i > start && is_digit(text[i - 1]) &&
                 i + 1 < text.size() && is_digit(text[i + 1])) {
        ++i;
      } else {
        break;
      }
    }
    auto token = to_lower_ascii(text.substr(start, i - start));
    if (remove_stopwords && is_stopword(token)) {
      continue;
    }
    out.push_back(std::move(token));
  }
  return out;
}

std::string lemmatize(std::string_view word) {
  std::string w(word);
  const auto n = w.size();
  if (n <= 3) {
    return w;
  }
  if (ends_with(w, "ies") && n > 4) {
    return w.substr(0, n - 3) + "y";
  }
  if (ends_with(w, "sses") || ends_with(w, "shes") || ends_with(w, "ches") ||
      ends_with(w, "xes") || ends_with(w, "zzes")) {
    return w.substr(0, n - 2);
  }
  if (w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
    return w.substr(0, n - 1);
  }
  if (ends_with(w, "ing") && n > 5) {
    auto stem = w.substr(0, n - 3);
    if (contains_vowel(stem)) {
      return repair_stem(std::move(stem));
    }
  }
  if (ends_with(w, "ed") && n > 4 && !ends_with(w, "eed")) {
    auto stem = w.substr(0, n - 2);
    if (contains_vowel(stem)) {
      return repair_stem(std::move(stem));
    }
  }
  return w;
}

std::string canonicalize(std::string_view token) {
  auto current = to_lower_ascii(token);
  const bool alphabetic = !current.empty() && std::all_of(current.begin(), current.end(), [](char ch) {
    return ch >= 'a' && ch <= 'z';
  });
  if (!alphabetic) {
    return current;
  }
  // Each pass is length non-increasing, so this settles quickly.
  for (int pass = 0; pass < 16; ++pass) {
    auto next = porter_stem(lemmatize(current));
    if (next == current || next.empty()) {
      break;
    }
    current = std::move(next);
  }
  return current;
}

} // namespace semtab
