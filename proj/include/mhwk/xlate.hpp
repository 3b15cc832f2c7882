#pragma once

// Source-to-source translations between machine kinds. Every translation is a
// deterministic function of its input; generated state names are stable.
//
// Generated names used by mhwk_to_pcwks:
//   K:<i>                                  query state for component i (1-based)
//   acc:<q>:<a1,..,ai>|<b1,..,bi>          source state q plus the reads of heads 1..i
//   mid:<q>:<a1,..,a(i-1)>|<b1,..,b(i-1)>:<x>  component i after its upper read x
//   p:<j>                                  j-th waiting step before a query
//   s:<r>                                  r waiting steps left before querying K:<n>
// pcwks_to_mhwk names product states <s1,...,sn>.

#include <stdexcept>
#include <string>
#include <vector>

#include "mhwk/core.hpp"

namespace mhwk {

struct TranslationOptions {
    /// Communication semantics assumed by pcwks_to_mhwk.
    Semantics semantics = Semantics::non_returning;
    /// Drop states unreachable from the initial state (structural forward closure).
    bool prune = false;
};

class TranslationError : public std::runtime_error {
public:
    enum class Kind { not_single_lower_head, not_one_limited, invalid_input, name_collision };

    TranslationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

std::string_view to_string(TranslationError::Kind k);

/// k heads -> k-1 upper heads and one lower head over the identity relation.
MhwkMachine mhfa_to_mhwk(const MhfaMachine& m, const TranslationOptions& opts = {});

/// Requires k2 = 1. Lower reads expand into one rule per preimage.
MhfaMachine mhwk_to_mhfa(const MhwkMachine& m, const TranslationOptions& opts = {});

/// Product construction with n upper and n lower heads. Requires every rule to read at most one symbol.
MhwkMachine pcwks_to_mhwk(const PcwksSystem& s, const TranslationOptions& opts = {});

/// Token-passing construction with max(k1, k2) components. Every emitted rule
/// reads at most one symbol; the system uses non-returning communication.
PcwksSystem mhwk_to_pcwks(const MhwkMachine& m, const TranslationOptions& opts = {});

struct RuleRef {
    std::size_t component = 0;
    std::size_t rule = 0;
    std::size_t symbols = 0;
};

struct OneLimitedReport {
    bool one_limited = true;
    std::vector<RuleRef> offending;
};

OneLimitedReport is_one_limited(const PcwksSystem& s);

MhwkMachine prune_unreachable(MhwkMachine m);
MhfaMachine prune_unreachable(MhfaMachine m);

}  // namespace mhwk
