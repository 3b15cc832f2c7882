#pragma once

// Independent deciders and bounded evidence: explicit lower-strand
// enumeration, the claimed languages as predicates, bounded language
// comparison and seeded random machines for differential testing.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "mhwk/core.hpp"
#include "mhwk/engine.hpp"

namespace mhwk {

/// Accepts iff some lower strand from complement_images admits an accepting
/// run on the fixed double strand. Shares no search code with decide_mhwk.
Verdict decide_mhwk_enumerative(const MhwkMachine& m, const Word& w1, const ResourceLimits& limits = {});

/// Plain reachability on a fixed double strand; false if [w1/w2] is not a valid strand.
bool accepts_with_strand(const MhwkMachine& m, const Word& w1, const Word& w2);

enum class ClaimedLanguage { L1_sum_of_powers, L2_square, L3_square_plus_one, L4_dup_w_diff_x };

std::string_view to_string(ClaimedLanguage l);
std::optional<ClaimedLanguage> parse_claimed_language(std::string_view s);

/// Unary languages are over {a}; L4 is over {a, b, #, *, $}.
bool claimed_membership(ClaimedLanguage lang, const Word& w);

/// Well-formed L4 words "#w1*x1...#wn*xn$" with n <= max_blocks and |wi|,|xi| <= max_part.
std::vector<Word> l4_words(std::size_t max_blocks, std::size_t max_part);

using AnyMachine = std::variant<MhwkMachine, MhfaMachine, PcwksSystem>;

const Alphabet& alphabet_of(const AnyMachine& m);
Verdict decide(const AnyMachine& m, const Word& w, const ResourceLimits& limits = {});

/// All words of length <= max_len in length-then-lexicographic order.
std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_len);

/// Streaming form of words_up_to over the given symbols; visit returns false to stop.
void for_each_word(const std::vector<Symbol>& symbols, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit);

/// Symbols that can occur in an accepted word: every symbol for an MHFA, the
/// symbols with a nonempty rho-image otherwise (no valid double strand exists
/// for a word containing any other symbol).
std::vector<Symbol> live_symbols(const AnyMachine& m);

struct EnumerationResult {
    std::vector<Word> accepted;
    bool limit_hit = false;
};

/// Walks words over live_symbols(m).
EnumerationResult enumerate_accepted(const AnyMachine& m, std::size_t max_len, const ResourceLimits& limits = {});

struct Counterexample {
    Word word;
    Outcome a;
    Outcome b;
};

struct EquivalenceReport {
    std::size_t bound = 0;
    std::size_t words_checked = 0;
    std::vector<Counterexample> counterexamples;
    bool agree = true;
};

using Decider = std::function<Verdict(const Word&)>;

/// Word-by-word comparison in the given order; a limit verdict on either side
/// counts as a counterexample. Stops after max_counterexamples (0 = never).
EquivalenceReport compare_deciders(const Decider& a, const Decider& b, const std::vector<Word>& words,
                                   std::size_t max_counterexamples = 10);

/// Walks words over the symbols live in either machine; words with a symbol
/// dead in both are rejected by both. Throws std::invalid_argument if the
/// alphabets differ as sets.
EquivalenceReport equivalent_up_to(const AnyMachine& a, const AnyMachine& b, std::size_t max_len,
                                   const ResourceLimits& limits = {}, std::size_t max_counterexamples = 10);

struct ClaimEntry {
    Word word;
    Outcome fixture;
    bool claimed = false;

    bool mismatch() const { return (fixture == Outcome::accept) != claimed || fixture == Outcome::limit_exceeded; }
};

struct ClaimReport {
    std::string fixture;
    ClaimedLanguage language;
    std::vector<ClaimEntry> entries;

    std::vector<const ClaimEntry*> mismatches() const;
};

ClaimReport compare_to_claim(std::string fixture_name, const MhwkMachine& m, ClaimedLanguage lang,
                             const std::vector<Word>& words, const ResourceLimits& limits = {});

struct RandomBounds {
    std::size_t max_states = 4;
    std::size_t max_symbols = 3;
    std::size_t min_k1 = 0;
    std::size_t max_k1 = 2;
    std::size_t min_k2 = 0;
    std::size_t max_k2 = 2;
    std::size_t max_rules = 10;
};

/// Deterministic in seed on every platform; always passes validate_mhwk.
MhwkMachine random_mhwk(std::uint64_t seed, const RandomBounds& bounds = {});
/// Head count drawn from [1, max_k1 + max_k2].
MhfaMachine random_mhfa(std::uint64_t seed, const RandomBounds& bounds = {});
/// n in [1, 2] components, every rule reads at most one symbol.
PcwksSystem random_pcwks(std::uint64_t seed, const RandomBounds& bounds = {});

}  // namespace mhwk
