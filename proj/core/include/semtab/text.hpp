#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semtab {

/// Lowercase, non-empty tokens in text order.
using TokenList = std::vector<std::string>;

/// Splits on whitespace and punctuation and lowercases ASCII letters.
/// Bytes >= 0x80 are word characters; '.' and ',' between two digits stay
/// inside the number ("5.6", "1,000").
TokenList tokenize(std::string_view text, bool remove_stopwords);

/// The 179-word English stop-word list, in its conventional order.
std::span<const std::string_view> stopwords() noexcept;
bool is_stopword(std::string_view lowercase_token) noexcept;

/// Classic Porter (1980) stemmer over a lowercase ASCII word.
std::string porter_stem(std::string_view word);

/// Rule-based inflection stripping: plural -s/-es/-ies and verbal -ing/-ed,
/// undoing consonant doubling ("stopped" -> "stop").
std::string lemmatize(std::string_view word);

/// Lowercase -> lemmatize -> Porter stem, iterated to a fixed point.
/// Tokens containing anything other than ASCII letters are only lowercased.
std::string canonicalize(std::string_view token);

std::string to_lower_ascii(std::string_view s);

} // namespace semtab
