#include "mhwk/core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace mhwk {

std::optional<std::size_t> Alphabet::index_of(std::string_view s) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] == s) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<Symbol> ComplementRelation::image(std::string_view a) const {
    std::vector<Symbol> out;
    for (const auto& [x, y] : pairs) {
        if (x == a) {
            out.push_back(y);
        }
    }
    return out;
}

std::vector<Symbol> ComplementRelation::preimage(std::string_view b) const {
    std::vector<Symbol> out;
    for (const auto& [x, y] : pairs) {
        if (y == b) {
            out.push_back(x);
        }
    }
    return out;
}

bool ComplementRelation::contains(std::string_view a, std::string_view b) const {
    return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.first == a && p.second == b; });
}

bool ComplementRelation::injective() const {
    std::map<Symbol, std::set<Symbol>> fwd;
    std::map<Symbol, std::set<Symbol>> bwd;
    for (const auto& [a, b] : pairs) {
        fwd[a].insert(b);
        bwd[b].insert(a);
    }
    auto at_most_one = [](const auto& m) {
        return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second.size() <= 1; });
    };
    return at_most_one(fwd) && at_most_one(bwd);
}

ComplementRelation ComplementRelation::identity(const Alphabet& alphabet) {
    ComplementRelation r;
    for (const auto& s : alphabet.symbols) {
        r.pairs.emplace_back(s, s);
    }
    return r;
}

namespace {

template <typename States>
std::optional<std::size_t> find_state(const States& states, std::string_view s) {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] == s) {
            return i;
        }
    }
    return std::nullopt;
}

bool contains_state(const std::vector<StateId>& v, std::string_view s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::optional<std::size_t> MhwkMachine::state_index(std::string_view s) const { return find_state(states, s); }
bool MhwkMachine::is_final(std::string_view s) const { return contains_state(finals, s); }
std::optional<std::size_t> MhfaMachine::state_index(std::string_view s) const { return find_state(states, s); }
bool MhfaMachine::is_final(std::string_view s) const { return contains_state(finals, s); }
std::optional<std::size_t> WkComponent::state_index(std::string_view s) const { return find_state(states, s); }
bool WkComponent::is_final(std::string_view s) const { return contains_state(finals, s); }

std::optional<std::size_t> PcwksSystem::query_target(std::string_view s) const {
    return find_state(query_states, s);
}

std::string_view to_string(Semantics s) {
    return s == Semantics::returning ? "returning" : "non_returning";
}

std::optional<Semantics> parse_semantics(std::string_view s) {
    if (s == "returning") {
        return Semantics::returning;
    }
    if (s == "non_returning") {
        return Semantics::non_returning;
    }
    return std::nullopt;
}

std::string Violation::to_string() const {
    std::string out = field;
    if (transition) {
        out += "[" + std::to_string(*transition) + "]";
    }
    return out + ": " + message;
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) {
            out += '\n';
        }
        out += v.to_string();
    }
    return out;
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(report.to_string()), report_(std::move(report)) {}

// --- validation ------------------------------------------------------------

namespace {

class Checker {
public:
    explicit Checker(ValidationReport& r) : r_(r) {}

    void add(std::string field, std::optional<std::size_t> tx, std::string msg) {
        r_.violations.push_back({std::move(field), tx, std::move(msg)});
    }

    void alphabet(const Alphabet& a) {
        std::set<Symbol> seen;
        for (const auto& s : a.symbols) {
            if (s.empty()) {
                add("alphabet", std::nullopt, "lambda (empty string) is not a symbol");
            } else if (!seen.insert(s).second) {
                add("alphabet", std::nullopt, "duplicate symbol '" + s + "'");
            }
        }
    }

    void rho(const Alphabet& a, const ComplementRelation& r) {
        for (const auto& [x, y] : r.pairs) {
            if (!a.contains(x) || !a.contains(y)) {
                add("rho", std::nullopt, "pair (" + x + ", " + y + ") uses a symbol outside the alphabet");
            }
        }
    }

    void states(const std::string& prefix, const std::vector<StateId>& states, const StateId& initial,
                const std::vector<StateId>& finals) {
        std::set<StateId> seen;
        for (const auto& s : states) {
            if (s.empty()) {
                add(prefix + "states", std::nullopt, "empty state id");
            } else if (!seen.insert(s).second) {
                add(prefix + "states", std::nullopt, "duplicate state '" + s + "'");
            }
        }
        if (!seen.contains(initial)) {
            add(prefix + "initial", std::nullopt, "unknown state '" + initial + "'");
        }
        for (const auto& f : finals) {
            if (!seen.contains(f)) {
                add(prefix + "finals", std::nullopt, "unknown state '" + f + "'");
            }
        }
    }

    void endpoint(const std::string& field, std::size_t i, const std::vector<StateId>& states, const StateId& s) {
        if (!contains_state(states, s)) {
            add(field, i, "unknown state '" + s + "'");
        }
    }

    void reads(const std::string& field, std::size_t i, const Alphabet& a, const std::vector<Symbol>& v,
               std::optional<std::size_t> expected_len, const char* what) {
        if (expected_len && v.size() != *expected_len) {
            add(field, i,
                std::string(what) + " vector has length " + std::to_string(v.size()) + ", expected " +
                    std::to_string(*expected_len));
        }
        for (const auto& s : v) {
            if (!s.empty() && !a.contains(s)) {
                add(field, i, std::string(what) + " reads unknown symbol '" + s + "'");
            }
        }
    }

private:
    ValidationReport& r_;
};

}  // namespace

ValidationReport validate_mhwk(const MhwkMachine& m) {
    ValidationReport r;
    Checker c(r);
    c.alphabet(m.alphabet);
    c.rho(m.alphabet, m.rho);
    c.states("", m.states, m.initial, m.finals);
    if (m.k1 + m.k2 < 1) {
        c.add("k1+k2", std::nullopt, "k1 + k2 >= 1 required");
    }
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        c.endpoint("transitions", i, m.states, t.from);
        c.endpoint("transitions", i, m.states, t.to);
        c.reads("transitions", i, m.alphabet, t.upper, m.k1, "upper");
        c.reads("transitions", i, m.alphabet, t.lower, m.k2, "lower");
    }
    return r;
}

ValidationReport validate_mhfa(const MhfaMachine& m) {
    ValidationReport r;
    Checker c(r);
    c.alphabet(m.alphabet);
    c.states("", m.states, m.initial, m.finals);
    if (m.k < 1) {
        c.add("k", std::nullopt, "k >= 1 required");
    }
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        c.endpoint("transitions", i, m.states, t.from);
        c.endpoint("transitions", i, m.states, t.to);
        c.reads("transitions", i, m.alphabet, t.reads, m.k, "read");
    }
    return r;
}

ValidationReport validate_pcwks(const PcwksSystem& s) {
    ValidationReport r;
    Checker c(r);
    c.alphabet(s.alphabet);
    c.rho(s.alphabet, s.rho);
    if (s.components.empty()) {
        c.add("components", std::nullopt, "at least one component required");
    }
    if (s.query_states.size() != s.components.size()) {
        c.add("query_states", std::nullopt,
              "expected " + std::to_string(s.components.size()) + " query states, got " +
                  std::to_string(s.query_states.size()));
    }
    std::set<StateId> all_states;
    for (const auto& comp : s.components) {
        all_states.insert(comp.states.begin(), comp.states.end());
    }
    std::set<StateId> seen_k;
    for (const auto& k : s.query_states) {
        if (!all_states.contains(k)) {
            c.add("query_states", std::nullopt, "query state '" + k + "' is not a state of any component");
        }
        if (!seen_k.insert(k).second) {
            c.add("query_states", std::nullopt, "duplicate query state '" + k + "'");
        }
    }
    for (std::size_t ci = 0; ci < s.components.size(); ++ci) {
        const auto& comp = s.components[ci];
        const std::string prefix = "components[" + std::to_string(ci) + "].";
        c.states(prefix, comp.states, comp.initial, comp.finals);
        if (seen_k.contains(comp.initial)) {
            c.add(prefix + "initial", std::nullopt, "initial state '" + comp.initial + "' is a query state");
        }
        for (std::size_t i = 0; i < comp.transitions.size(); ++i) {
            const auto& t = comp.transitions[i];
            c.endpoint(prefix + "transitions", i, comp.states, t.from);
            c.endpoint(prefix + "transitions", i, comp.states, t.to);
            c.reads(prefix + "transitions", i, s.alphabet, t.upper, std::nullopt, "upper");
            c.reads(prefix + "transitions", i, s.alphabet, t.lower, std::nullopt, "lower");
        }
    }
    return r;
}

// --- canonicalization ------------------------------------------------------

namespace {

using Key = std::vector<long>;

long sym_key(const Alphabet& a, const Symbol& s) {
    if (s.empty()) {
        return -1;
    }
    auto i = a.index_of(s);
    return i ? static_cast<long>(*i) : std::numeric_limits<long>::max();
}

long state_key(const std::vector<StateId>& states, const StateId& s) {
    auto i = find_state(states, s);
    return i ? static_cast<long>(*i) : std::numeric_limits<long>::max();
}

void append_word(Key& k, const Alphabet& a, const std::vector<Symbol>& w) {
    k.push_back(static_cast<long>(w.size()));
    for (const auto& s : w) {
        k.push_back(sym_key(a, s));
    }
}

template <typename T, typename KeyFn>
void sort_unique(std::vector<T>& v, KeyFn key) {
    std::stable_sort(v.begin(), v.end(), [&](const T& x, const T& y) { return key(x) < key(y); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void canonical_finals(std::vector<StateId>& finals, const std::vector<StateId>& states) {
    sort_unique(finals, [&](const StateId& s) { return std::make_pair(state_key(states, s), s); });
}

void canonical_rho(ComplementRelation& rho, const Alphabet& a) {
    sort_unique(rho.pairs, [&](const auto& p) { return std::make_pair(sym_key(a, p.first), sym_key(a, p.second)); });
}

}  // namespace

MhwkMachine canonicalize(MhwkMachine m) {
    canonical_rho(m.rho, m.alphabet);
    canonical_finals(m.finals, m.states);
    sort_unique(m.transitions, [&](const MhwkTransition& t) {
        Key k{state_key(m.states, t.from)};
        append_word(k, m.alphabet, t.upper);
        append_word(k, m.alphabet, t.lower);
        k.push_back(state_key(m.states, t.to));
        return k;
    });
    return m;
}

MhfaMachine canonicalize(MhfaMachine m) {
    canonical_finals(m.finals, m.states);
    sort_unique(m.transitions, [&](const MhfaTransition& t) {
        Key k{state_key(m.states, t.from)};
        append_word(k, m.alphabet, t.reads);
        k.push_back(state_key(m.states, t.to));
        return k;
    });
    return m;
}

PcwksSystem canonicalize(PcwksSystem s) {
    canonical_rho(s.rho, s.alphabet);
    for (auto& comp : s.components) {
        canonical_finals(comp.finals, comp.states);
        sort_unique(comp.transitions, [&](const WkTransition& t) {
            Key k{state_key(comp.states, t.from)};
            append_word(k, s.alphabet, t.upper);
            append_word(k, s.alphabet, t.lower);
            k.push_back(state_key(comp.states, t.to));
            return k;
        });
    }
    return s;
}

MhwkMachine validated(MhwkMachine m) {
    auto r = validate_mhwk(m);
    if (!r.ok()) {
        throw ValidationError(std::move(r));
    }
    return canonicalize(std::move(m));
}

MhfaMachine validated(MhfaMachine m) {
    auto r = validate_mhfa(m);
    if (!r.ok()) {
        throw ValidationError(std::move(r));
    }
    return canonicalize(std::move(m));
}

PcwksSystem validated(PcwksSystem s) {
    auto r = validate_pcwks(s);
    if (!r.ok()) {
        throw ValidationError(std::move(r));
    }
    return canonicalize(std::move(s));
}

// --- words -----------------------------------------------------------------

bool prefix_comparable(const Word& u, const Word& v) {
    const auto n = std::min(u.size(), v.size());
    return std::equal(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n), v.begin());
}

ComplementImages::ComplementImages(const Alphabet& alphabet, const ComplementRelation& rho, const Word& w) {
    choices_.reserve(w.size());
    for (const auto& a : w) {
        auto img = rho.image(a);
        std::sort(img.begin(), img.end(),
                  [&](const Symbol& x, const Symbol& y) { return sym_key(alphabet, x) < sym_key(alphabet, y); });
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (img.empty()) {
            done_ = true;
        }
        choices_.push_back(std::move(img));
    }
    odometer_.assign(w.size(), 0);
}

bool ComplementImages::next(Word& out) {
    if (done_) {
        return false;
    }
    if (started_) {
        std::size_t i = odometer_.size();
        while (i > 0) {
            --i;
            if (++odometer_[i] < choices_[i].size()) {
                break;
            }
            odometer_[i] = 0;
            if (i == 0) {
                done_ = true;
                return false;
            }
        }
        if (odometer_.empty()) {
            done_ = true;
            return false;
        }
    }
    started_ = true;
    out.resize(choices_.size());
    for (std::size_t i = 0; i < choices_.size(); ++i) {
        out[i] = choices_[i][odometer_[i]];
    }
    return true;
}

std::size_t ComplementImages::count() const {
    std::size_t total = 1;
    for (const auto& c : choices_) {
        if (c.empty()) {
            return 0;
        }
        if (total > std::numeric_limits<std::size_t>::max() / c.size()) {
            return std::numeric_limits<std::size_t>::max();
        }
        total *= c.size();
    }
    return total;
}

std::vector<Word> complement_images(const Alphabet& alphabet, const ComplementRelation& rho, const Word& w) {
    std::vector<Word> out;
    ComplementImages gen(alphabet, rho, w);
    Word cur;
    while (gen.next(cur)) {
        out.push_back(cur);
    }
    return out;
}

// --- classification --------------------------------------------------------

namespace {

/// literal: some head differs (lambda is a value). strict: some head differs with both entries non-lambda.
std::pair<bool, bool> distinguishes(const std::vector<Symbol>& x, const std::vector<Symbol>& y) {
    bool literal = false;
    bool strict = false;
    for (std::size_t h = 0; h < x.size() && h < y.size(); ++h) {
        if (x[h] != y[h]) {
            literal = true;
            if (!x[h].empty() && !y[h].empty()) {
                strict = true;
            }
        }
    }
    return {literal, strict};
}

template <typename Tx, typename ReadsFn>
std::pair<bool, bool> determinism(const std::vector<Tx>& txs, ReadsFn reads) {
    bool literal = true;
    bool strict = true;
    for (std::size_t i = 0; i < txs.size(); ++i) {
        for (std::size_t j = i + 1; j < txs.size(); ++j) {
            if (txs[i].from != txs[j].from) {
                continue;
            }
            auto [l, s] = distinguishes(reads(txs[i]), reads(txs[j]));
            literal = literal && l;
            strict = strict && s;
        }
    }
    return {literal, strict};
}

bool same_set(std::vector<StateId> a, std::vector<StateId> b) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return a == b;
}

}  // namespace

ClassificationReport classify_mhwk(const MhwkMachine& m) {
    ClassificationReport r;
    auto [literal, strict] = determinism(m.transitions, [](const MhwkTransition& t) {
        std::vector<Symbol> all = t.upper;
        all.insert(all.end(), t.lower.begin(), t.lower.end());
        return all;
    });
    r.deterministic_literal = literal;
    r.deterministic_strict = strict;
    r.strongly_deterministic = literal && m.rho.injective();
    r.all_final = same_set(m.states, m.finals);
    r.stateless = r.all_final && m.states.size() == 1;
    return r;
}

ClassificationReport classify_mhfa(const MhfaMachine& m) {
    ClassificationReport r;
    auto [literal, strict] = determinism(m.transitions, [](const MhfaTransition& t) { return t.reads; });
    r.deterministic_literal = literal;
    r.deterministic_strict = strict;
    r.strongly_deterministic = literal;
    r.all_final = same_set(m.states, m.finals);
    r.stateless = r.all_final && m.states.size() == 1;
    return r;
}

ClassificationReport classify_wk_component(const WkComponent& c, const ComplementRelation& rho) {
    ClassificationReport r;
    bool det = true;
    for (std::size_t i = 0; i < c.transitions.size() && det; ++i) {
        for (std::size_t j = i + 1; j < c.transitions.size(); ++j) {
            const auto& x = c.transitions[i];
            const auto& y = c.transitions[j];
            if (x.from == y.from && prefix_comparable(x.upper, y.upper) && prefix_comparable(x.lower, y.lower)) {
                det = false;
                break;
            }
        }
    }
    // Components use the prefix rule for both readings.
    r.deterministic_literal = det;
    r.deterministic_strict = det;
    r.strongly_deterministic = det && rho.injective();
    r.all_final = same_set(c.states, c.finals);
    r.stateless = r.all_final && c.states.size() == 1;
    r.simple = std::all_of(c.transitions.begin(), c.transitions.end(),
                           [](const WkTransition& t) { return t.upper.empty() || t.lower.empty(); });
    r.one_limited = std::all_of(c.transitions.begin(), c.transitions.end(),
                                [](const WkTransition& t) { return t.upper.size() + t.lower.size() <= 1; });
    return r;
}

ClassificationReport classify_pcwks(const PcwksSystem& s) {
    ClassificationReport r{true, true, true, true, true, true, true};
    for (const auto& comp : s.components) {
        auto c = classify_wk_component(comp, s.rho);
        r.deterministic_literal = r.deterministic_literal && c.deterministic_literal;
        r.deterministic_strict = r.deterministic_strict && c.deterministic_strict;
        r.strongly_deterministic = r.strongly_deterministic && c.strongly_deterministic;
        r.stateless = r.stateless && c.stateless;
        r.all_final = r.all_final && c.all_final;
        r.simple = r.simple && c.simple;
        r.one_limited = r.one_limited && c.one_limited;
    }
    return r;
}

}  // namespace mhwk
