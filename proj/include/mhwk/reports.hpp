#pragma once

// Text and JSON renderings of every report the CLI prints. Text output is a
// human summary; JSON output is a single object (or JSON Lines for traces)
// with sorted keys.

#include <string>

#include "mhwk/core.hpp"
#include "mhwk/document.hpp"
#include "mhwk/engine.hpp"
#include "mhwk/oracle.hpp"

namespace mhwk {

enum class Format { text, json };

std::string render_validation(const MachineDocument& doc, Format f);
std::string render_classification(const MachineDocument& doc, Format f);
std::string render_verdict(const AnyMachine& m, const Word& w, const Verdict& v, Format f);

/// One object per witness step, then the verdict object.
std::string render_trace_jsonl(const AnyMachine& m, const Word& w, const Verdict& v);
/// Fixed-width table over the same data, then the verdict line.
std::string render_trace_table(const AnyMachine& m, const Word& w, const Verdict& v);

/// Human-readable rule of a machine, e.g. "q0 (λ | λ, b) -> q1".
std::string describe_rule(const AnyMachine& m, const WitnessStep& step);

std::string render_enumeration(const Alphabet& a, std::size_t max_len, const EnumerationResult& r, Format f);
std::string render_equivalence(const Alphabet& a, const EquivalenceReport& r, Format f);
std::string render_claims(const Alphabet& a, const ClaimReport& r, Format f);

}  // namespace mhwk
