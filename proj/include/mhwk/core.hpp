#pragma once

// Data model for multi-head Watson-Crick automata (MHWK), one-way multi-head
// finite automata (MHFA) and parallel communicating Watson-Crick automata
// systems (PCWKS), with structural validation and syntactic classification.
//
// States and symbols are opaque strings. The empty string is the lambda
// marker in every read position and is never an alphabet member.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mhwk {

using Symbol = std::string;
using StateId = std::string;
using Word = std::vector<Symbol>;

inline bool is_lambda(const Symbol& s) { return s.empty(); }

struct Alphabet {
    std::vector<Symbol> symbols;

    std::optional<std::size_t> index_of(std::string_view s) const;
    bool contains(std::string_view s) const { return index_of(s).has_value(); }
    std::size_t size() const { return symbols.size(); }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

struct ComplementRelation {
    std::vector<std::pair<Symbol, Symbol>> pairs;

    /// Symbols b with (a, b) in the relation, in pair order.
    std::vector<Symbol> image(std::string_view a) const;
    /// Symbols a with (a, b) in the relation, in pair order.
    std::vector<Symbol> preimage(std::string_view b) const;
    bool contains(std::string_view a, std::string_view b) const;
    /// Every symbol has at most one image and at most one preimage.
    bool injective() const;

    static ComplementRelation identity(const Alphabet& alphabet);

    friend bool operator==(const ComplementRelation&, const ComplementRelation&) = default;
};

struct MhwkTransition {
    StateId from;
    std::vector<Symbol> upper;  // length k1
    std::vector<Symbol> lower;  // length k2
    StateId to;

    friend bool operator==(const MhwkTransition&, const MhwkTransition&) = default;
};

struct MhwkMachine {
    Alphabet alphabet;
    ComplementRelation rho;
    std::vector<StateId> states;
    StateId initial;
    std::vector<StateId> finals;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    std::vector<MhwkTransition> transitions;

    std::optional<std::size_t> state_index(std::string_view s) const;
    bool is_final(std::string_view s) const;

    friend bool operator==(const MhwkMachine&, const MhwkMachine&) = default;
};

struct MhfaTransition {
    StateId from;
    std::vector<Symbol> reads;  // length k
    StateId to;

    friend bool operator==(const MhfaTransition&, const MhfaTransition&) = default;
};

struct MhfaMachine {
    std::size_t k = 1;
    Alphabet alphabet;
    std::vector<StateId> states;
    StateId initial;
    std::vector<StateId> finals;
    std::vector<MhfaTransition> transitions;

    std::optional<std::size_t> state_index(std::string_view s) const;
    bool is_final(std::string_view s) const;

    friend bool operator==(const MhfaMachine&, const MhfaMachine&) = default;
};

/// Rule q (upper / lower) -> q' of a Watson-Crick component; either side may be empty.
struct WkTransition {
    StateId from;
    Word upper;
    Word lower;
    StateId to;

    friend bool operator==(const WkTransition&, const WkTransition&) = default;
};

/// A component of a PCWKS. Alphabet and complementarity relation live on the system.
struct WkComponent {
    std::vector<StateId> states;
    StateId initial;
    std::vector<StateId> finals;
    std::vector<WkTransition> transitions;

    std::optional<std::size_t> state_index(std::string_view s) const;
    bool is_final(std::string_view s) const;

    friend bool operator==(const WkComponent&, const WkComponent&) = default;
};

enum class Semantics { non_returning, returning };

std::string_view to_string(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view s);

struct PcwksSystem {
    Alphabet alphabet;
    ComplementRelation rho;
    std::vector<WkComponent> components;
    std::vector<StateId> query_states;  // K_1 .. K_n, K_i queries component i
    Semantics semantics = Semantics::non_returning;

    /// Index j such that s == K_j.
    std::optional<std::size_t> query_target(std::string_view s) const;

    friend bool operator==(const PcwksSystem&, const PcwksSystem&) = default;
};

struct Violation {
    std::string field;
    std::optional<std::size_t> transition;
    std::string message;

    std::string to_string() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

// Validation checks referential integrity and shape. Canonicalization sorts
// finals, relation pairs and transitions by declaration order of states and
// symbols (lambda first) and removes exact duplicates. It is idempotent.

ValidationReport validate_mhwk(const MhwkMachine& m);
ValidationReport validate_mhfa(const MhfaMachine& m);
ValidationReport validate_pcwks(const PcwksSystem& s);

MhwkMachine canonicalize(MhwkMachine m);
MhfaMachine canonicalize(MhfaMachine m);
PcwksSystem canonicalize(PcwksSystem s);

/// Validate and canonicalize; throws ValidationError.
MhwkMachine validated(MhwkMachine m);
MhfaMachine validated(MhfaMachine m);
PcwksSystem validated(PcwksSystem s);

bool prefix_comparable(const Word& u, const Word& v);

/// Lazily enumerates every w2 with [w / w2] in the Watson-Crick domain, in
/// lexicographic order of the alphabet.
class ComplementImages {
public:
    ComplementImages(const Alphabet& alphabet, const ComplementRelation& rho, const Word& w);

    /// Writes the next complement into out; false when exhausted.
    bool next(Word& out);
    /// Product of image sizes, saturating at SIZE_MAX.
    std::size_t count() const;

private:
    std::vector<std::vector<Symbol>> choices_;
    std::vector<std::size_t> odometer_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<Word> complement_images(const Alphabet& alphabet, const ComplementRelation& rho, const Word& w);

struct ClassificationReport {
    bool deterministic_literal = false;
    bool deterministic_strict = false;
    bool strongly_deterministic = false;
    bool stateless = false;
    bool all_final = false;
    /// Only meaningful for WK components and systems.
    bool simple = false;
    bool one_limited = false;

    friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

ClassificationReport classify_mhwk(const MhwkMachine& m);
ClassificationReport classify_mhfa(const MhfaMachine& m);
ClassificationReport classify_wk_component(const WkComponent& c, const ComplementRelation& rho);
ClassificationReport classify_pcwks(const PcwksSystem& s);

}  // namespace mhwk
