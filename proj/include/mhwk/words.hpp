#pragma once

// Text encoding of words over an alphabet whose symbols may be longer than
// one character (e.g. "v_m1").

#include <string>
#include <string_view>

#include "mhwk/core.hpp"

namespace mhwk {

/// Whitespace-separated tokens if the text contains whitespace, otherwise
/// greedy longest-match tokenization against the alphabet. Throws
/// std::invalid_argument on an unknown symbol.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// Concatenation when every alphabet symbol is one character, otherwise
/// space-separated tokens.
std::string render_word(const Alphabet& alphabet, const Word& w);

/// Convenience for unary words.
Word repeat(const Symbol& s, std::size_t n);

}  // namespace mhwk
