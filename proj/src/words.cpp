#include "mhwk/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace mhwk {

namespace {

bool all_single_char(const Alphabet& alphabet) {
    return std::all_of(alphabet.symbols.begin(), alphabet.symbols.end(),
                       [](const Symbol& s) { return s.size() == 1; });
}

}  // namespace

Word parse_word(const Alphabet& alphabet, std::string_view text) {
    Word out;
    const bool spaced = std::any_of(text.begin(), text.end(),
                                    [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
    if (spaced) {
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) {
            if (!alphabet.contains(tok)) {
                throw std::invalid_argument("unknown symbol '" + tok + "'");
            }
            out.push_back(tok);
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = 0;
        for (const auto& s : alphabet.symbols) {
            if (s.size() > best && text.substr(pos, s.size()) == s) {
                best = s.size();
            }
        }
        if (best == 0) {
            throw std::invalid_argument("unknown symbol at offset " + std::to_string(pos) + " in '" +
                                        std::string(text) + "'");
        }
        out.emplace_back(text.substr(pos, best));
        pos += best;
    }
    return out;
}

std::string render_word(const Alphabet& alphabet, const Word& w) {
    std::string out;
    const bool compact = all_single_char(alphabet);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) {
            out += ' ';
        }
        out += w[i];
    }
    return out;
}

Word repeat(const Symbol& s, std::size_t n) { return Word(n, s); }

}  // namespace mhwk
