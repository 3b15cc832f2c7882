#pragma once

// Breadth-first deciders over configuration spaces.
//
// The MHWK and PCWKS searches never enumerate lower strands up front. The
// lower strand is committed lazily: a position is bound to a symbol the first
// time any lower head reads it, and every later read of that position must
// agree. Positions already passed by every lower head are dropped from the
// commitment window, so two configurations that differ only in unobservable
// history share one visited-set entry.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhwk/core.hpp"

namespace mhwk {

struct ResourceLimits {
    std::size_t max_configurations = 5'000'000;
    /// Cap on candidate lower strands for the enumerative oracle.
    std::size_t max_strands = std::size_t{1} << 20;
    /// Drop commitment positions below the minimum lower head.
    bool discard_window = true;
};

enum class Outcome { accept, reject, limit_exceeded };

std::string_view to_string(Outcome o);

/// Human-readable snapshot of a configuration, used in witnesses and traces.
struct ConfigSummary {
    std::vector<StateId> states;  // one for MHWK/MHFA, n for PCWKS
    std::vector<std::size_t> upper_pos;
    std::vector<std::size_t> lower_pos;
    std::size_t window_base = 0;
    std::vector<std::optional<Symbol>> window;

    friend bool operator==(const ConfigSummary&, const ConfigSummary&) = default;
};

struct WitnessStep {
    enum class Kind { initial, transition, round, query };
    Kind kind = Kind::initial;
    /// transition: {index}; round: one rule index per component; otherwise empty.
    std::vector<std::size_t> rules;
    ConfigSummary config;

    friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

struct RunWitness {
    Word lower_strand;
    std::vector<WitnessStep> steps;

    friend bool operator==(const RunWitness&, const RunWitness&) = default;
};

struct Verdict {
    Outcome outcome = Outcome::reject;
    std::optional<RunWitness> witness;
    std::size_t explored = 0;
    /// PCWKS only: query rounds in which no query could be answered.
    std::size_t malformed_queries = 0;

    bool accepted() const { return outcome == Outcome::accept; }
    bool limit_hit() const { return outcome == Outcome::limit_exceeded; }
};

/// Symbol indices into the machine alphabet; kUncommitted marks a free position.
inline constexpr int kUncommitted = -1;

struct StrandCommitment {
    std::size_t base = 0;
    std::vector<int> window;

    /// Committed symbol at absolute position p, or kUncommitted.
    int at(std::size_t p) const;
    void bind(std::size_t p, int symbol);

    friend bool operator==(const StrandCommitment&, const StrandCommitment&) = default;
};

struct MhwkConfiguration {
    std::size_t state = 0;
    std::vector<std::size_t> upper_pos;
    std::vector<std::size_t> lower_pos;
    StrandCommitment commitment;

    friend bool operator==(const MhwkConfiguration&, const MhwkConfiguration&) = default;
};

struct MhwkSuccessor {
    std::size_t transition = 0;
    MhwkConfiguration config;
    /// Positions newly bound by this step.
    std::vector<std::pair<std::size_t, int>> bound;
};

/// A machine compiled against one input word. Holds its own copy of the machine.
class MhwkEngine {
public:
    MhwkEngine(MhwkMachine machine, Word w1, ResourceLimits limits = {});

    const MhwkMachine& machine() const { return m_; }
    MhwkConfiguration initial() const;
    /// Successors in canonical transition order.
    std::vector<MhwkSuccessor> applicable(const MhwkConfiguration& c) const;
    bool accepting(const MhwkConfiguration& c) const;
    /// Every committed position p satisfies (w1[p], window[p]) in rho.
    bool commitment_sound(const MhwkConfiguration& c) const;
    ConfigSummary summarize(const MhwkConfiguration& c) const;
    Verdict run() const;

private:
    void normalize(MhwkConfiguration& c) const;

    MhwkMachine m_;
    ResourceLimits limits_;
    std::vector<int> word_;
    std::vector<std::vector<char>> rho_;  // rho_[a][b]
    struct Rule {
        std::size_t from;
        std::vector<int> upper;
        std::vector<int> lower;
        std::size_t to;
    };
    std::vector<Rule> rules_;
    std::vector<std::vector<std::size_t>> by_state_;
    std::vector<char> final_;
    bool strand_exists_ = true;
};

std::vector<MhwkSuccessor> applicable_transitions(const MhwkMachine& m, const MhwkConfiguration& c, const Word& w1);

Verdict decide_mhwk(const MhwkMachine& m, const Word& w1, const ResourceLimits& limits = {});
Verdict decide_mhfa(const MhfaMachine& m, const Word& w, const ResourceLimits& limits = {});
Verdict decide_pcwks(const PcwksSystem& s, const Word& w1, const ResourceLimits& limits = {});

}  // namespace mhwk
