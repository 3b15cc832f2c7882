#include "mhwk/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace mhwk {

// --- enumerative decider -----------------------------------------------------

namespace {

/// Reachability on one fixed double strand. Symbols are compared as strings on
/// purpose: nothing here is shared with the engine's compiled representation.
class FixedStrandSearch {
public:
    struct Result {
        bool accepted = false;
        bool limit = false;
        std::size_t explored = 0;
        /// Highest lower-strand position whose symbol was compared, if any.
        std::optional<std::size_t> max_inspected;
        std::vector<std::size_t> path;  // transition indices
        std::vector<ConfigSummary> configs;
    };

    FixedStrandSearch(const MhwkMachine& m, const Word& w1) : m_(m), w1_(w1) {
        for (std::size_t i = 0; i < m.transitions.size(); ++i) {
            by_from_[m.transitions[i].from].push_back(i);
        }
    }

    Result run(const Word& w2, std::size_t max_configs) const {
        struct Node {
            StateId state;
            std::vector<std::size_t> up;
            std::vector<std::size_t> low;
            std::size_t parent;
            std::size_t tx;
        };
        const std::size_t n = w1_.size();
        Result res;
        std::vector<Node> nodes;
        std::set<std::tuple<StateId, std::vector<std::size_t>, std::vector<std::size_t>>> seen;
        nodes.push_back({m_.initial, std::vector<std::size_t>(m_.k1, 0), std::vector<std::size_t>(m_.k2, 0), 0, 0});
        seen.emplace(nodes[0].state, nodes[0].up, nodes[0].low);
        auto note = [&](std::size_t p) {
            if (!res.max_inspected || p > *res.max_inspected) {
                res.max_inspected = p;
            }
        };
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Node cur = nodes[i];
            const bool done = std::all_of(cur.up.begin(), cur.up.end(), [n](auto p) { return p == n; }) &&
                              std::all_of(cur.low.begin(), cur.low.end(), [n](auto p) { return p == n; });
            if (done && m_.is_final(cur.state)) {
                res.accepted = true;
                for (std::size_t j = i; j != 0; j = nodes[j].parent) {
                    res.path.push_back(nodes[j].tx);
                    res.configs.push_back({{nodes[j].state}, nodes[j].up, nodes[j].low, 0, {}});
                }
                res.configs.push_back({{nodes[0].state}, nodes[0].up, nodes[0].low, 0, {}});
                std::reverse(res.path.begin(), res.path.end());
                std::reverse(res.configs.begin(), res.configs.end());
                break;
            }
            auto it = by_from_.find(cur.state);
            if (it == by_from_.end()) {
                continue;
            }
            for (std::size_t ti : it->second) {
                const auto& t = m_.transitions[ti];
                Node next{t.to, cur.up, cur.low, i, ti};
                bool ok = true;
                for (std::size_t h = 0; h < t.upper.size() && ok; ++h) {
                    if (t.upper[h].empty()) {
                        continue;
                    }
                    ok = next.up[h] < n && w1_[next.up[h]] == t.upper[h];
                    ++next.up[h];
                }
                for (std::size_t h = 0; h < t.lower.size() && ok; ++h) {
                    if (t.lower[h].empty()) {
                        continue;
                    }
                    if (next.low[h] >= n) {
                        ok = false;
                        break;
                    }
                    note(next.low[h]);
                    ok = w2[next.low[h]] == t.lower[h];
                    ++next.low[h];
                }
                if (!ok || !seen.emplace(next.state, next.up, next.low).second) {
                    continue;
                }
                if (nodes.size() >= max_configs) {
                    res.limit = true;
                    res.explored = nodes.size();
                    return res;
                }
                nodes.push_back(std::move(next));
            }
        }
        res.explored = nodes.size();
        return res;
    }

private:
    const MhwkMachine& m_;
    const Word& w1_;
    std::map<StateId, std::vector<std::size_t>> by_from_;
};

}  // namespace

Verdict decide_mhwk_enumerative(const MhwkMachine& m, const Word& w1, const ResourceLimits& limits) {
    for (const auto& s : w1) {
        if (!m.alphabet.contains(s)) {
            throw std::invalid_argument("symbol '" + s + "' is not in the alphabet");
        }
    }
    // Per-position images in alphabet order, as produced by complement_images.
    std::vector<std::vector<Symbol>> choices;
    for (const auto& a : w1) {
        Word one{a};
        std::vector<Symbol> col;
        for (const auto& img : complement_images(m.alphabet, m.rho, one)) {
            col.push_back(img[0]);
        }
        if (col.empty()) {
            return {};
        }
        choices.push_back(std::move(col));
    }
    const FixedStrandSearch search(m, w1);
    std::vector<std::size_t> digits(w1.size(), 0);
    Word w2(w1.size());
    Verdict v;
    std::size_t strands = 0;
    while (true) {
        if (++strands > limits.max_strands) {
            v.outcome = Outcome::limit_exceeded;
            return v;
        }
        for (std::size_t p = 0; p < w2.size(); ++p) {
            w2[p] = choices[p][digits[p]];
        }
        auto r = search.run(w2, limits.max_configurations);
        v.explored += r.explored;
        if (r.limit) {
            v.outcome = Outcome::limit_exceeded;
            return v;
        }
        if (r.accepted) {
            RunWitness w;
            w.lower_strand = w2;
            w.steps.push_back({WitnessStep::Kind::initial, {}, r.configs[0]});
            for (std::size_t i = 0; i < r.path.size(); ++i) {
                w.steps.push_back({WitnessStep::Kind::transition, {r.path[i]}, r.configs[i + 1]});
            }
            v.outcome = Outcome::accept;
            v.witness = std::move(w);
            return v;
        }
        if (!r.max_inspected) {
            return v;  // the verdict did not depend on the lower strand
        }
        // Every strand sharing w2[0..max_inspected] rejects the same way.
        std::size_t p = *r.max_inspected + 1;
        std::fill(digits.begin() + static_cast<std::ptrdiff_t>(p), digits.end(), 0);
        while (true) {
            if (p == 0) {
                return v;
            }
            --p;
            if (++digits[p] < choices[p].size()) {
                break;
            }
            digits[p] = 0;
        }
    }
}

bool accepts_with_strand(const MhwkMachine& m, const Word& w1, const Word& w2) {
    if (w1.size() != w2.size()) {
        return false;
    }
    for (std::size_t i = 0; i < w1.size(); ++i) {
        if (!m.rho.contains(w1[i], w2[i])) {
            return false;
        }
    }
    return FixedStrandSearch(m, w1).run(w2, ResourceLimits{}.max_configurations).accepted;
}

// --- claimed languages -------------------------------------------------------

std::string_view to_string(ClaimedLanguage l) {
    switch (l) {
        case ClaimedLanguage::L1_sum_of_powers:
            return "L1_sum_of_powers";
        case ClaimedLanguage::L2_square:
            return "L2_square";
        case ClaimedLanguage::L3_square_plus_one:
            return "L3_square_plus_one";
        case ClaimedLanguage::L4_dup_w_diff_x:
            return "L4_dup_w_diff_x";
    }
    return "?";
}

std::optional<ClaimedLanguage> parse_claimed_language(std::string_view s) {
    for (auto l : {ClaimedLanguage::L1_sum_of_powers, ClaimedLanguage::L2_square,
                   ClaimedLanguage::L3_square_plus_one, ClaimedLanguage::L4_dup_w_diff_x}) {
        if (to_string(l) == s) {
            return l;
        }
    }
    return std::nullopt;
}

namespace {

std::optional<std::size_t> unary_length(const Word& w) {
    if (!std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s == "a"; })) {
        return std::nullopt;
    }
    return w.size();
}

bool is_square_above_one(std::size_t n) {
    for (std::size_t m = 2; m * m <= n; ++m) {
        if (m * m == n) {
            return true;
        }
    }
    return false;
}

bool l4_member(const Word& w) {
    std::vector<std::pair<Word, Word>> blocks;
    std::size_t p = 0;
    auto part = [&](Word& out) {
        while (p < w.size() && (w[p] == "a" || w[p] == "b")) {
            out.push_back(w[p++]);
        }
    };
    while (p < w.size() && w[p] == "#") {
        ++p;
        std::pair<Word, Word> blk;
        part(blk.first);
        if (p >= w.size() || w[p] != "*") {
            return false;
        }
        ++p;
        part(blk.second);
        blocks.push_back(std::move(blk));
    }
    if (p + 1 != w.size() || w[p] != "$") {
        return false;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            if (blocks[i].first == blocks[j].first && blocks[i].second != blocks[j].second) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

bool claimed_membership(ClaimedLanguage lang, const Word& w) {
    if (lang == ClaimedLanguage::L4_dup_w_diff_x) {
        return l4_member(w);
    }
    auto n = unary_length(w);
    if (!n) {
        return false;
    }
    switch (lang) {
        case ClaimedLanguage::L1_sum_of_powers:
            // sum_{k=0}^{l} 2^k = 2^(l+1) - 1, l >= 0
            return *n >= 1 && ((*n + 1) & *n) == 0;
        case ClaimedLanguage::L2_square:
            return is_square_above_one(*n);
        case ClaimedLanguage::L3_square_plus_one:
            return *n >= 1 && is_square_above_one(*n - 1);
        default:
            return false;
    }
}

std::vector<Word> l4_words(std::size_t max_blocks, std::size_t max_part) {
    const auto parts = words_up_to(Alphabet{{"a", "b"}}, max_part);
    std::vector<Word> blocks;
    for (const auto& w : parts) {
        for (const auto& x : parts) {
            Word b{"#"};
            b.insert(b.end(), w.begin(), w.end());
            b.push_back("*");
            b.insert(b.end(), x.begin(), x.end());
            blocks.push_back(std::move(b));
        }
    }
    std::vector<Word> out;
    std::vector<Word> prefixes{Word{}};
    for (std::size_t count = 0; count <= max_blocks; ++count) {
        for (const auto& pre : prefixes) {
            Word w = pre;
            w.push_back("$");
            out.push_back(std::move(w));
        }
        if (count == max_blocks) {
            break;
        }
        std::vector<Word> grown;
        for (const auto& pre : prefixes) {
            for (const auto& b : blocks) {
                Word w = pre;
                w.insert(w.end(), b.begin(), b.end());
                grown.push_back(std::move(w));
            }
        }
        prefixes = std::move(grown);
    }
    return out;
}

// --- bounded comparison ------------------------------------------------------

const Alphabet& alphabet_of(const AnyMachine& m) {
    return std::visit([](const auto& x) -> const Alphabet& { return x.alphabet; }, m);
}

Verdict decide(const AnyMachine& m, const Word& w, const ResourceLimits& limits) {
    return std::visit(
        [&](const auto& x) -> Verdict {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MhwkMachine>) {
                return decide_mhwk(x, w, limits);
            } else if constexpr (std::is_same_v<T, MhfaMachine>) {
                return decide_mhfa(x, w, limits);
            } else {
                return decide_pcwks(x, w, limits);
            }
        },
        m);
}

void for_each_word(const std::vector<Symbol>& symbols, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit) {
    const std::size_t k = symbols.size();
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (k == 0 && len > 0) {
            return;
        }
        std::vector<std::size_t> digits(len, 0);
        Word w(len, k == 0 ? Symbol{} : symbols[0]);
        while (true) {
            if (!visit(w)) {
                return;
            }
            std::size_t p = len;
            while (p > 0 && ++digits[p - 1] == k) {
                digits[p - 1] = 0;
                w[p - 1] = symbols[0];
                --p;
            }
            if (p == 0) {
                break;
            }
            w[p - 1] = symbols[digits[p - 1]];
        }
    }
}

std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_len) {
    std::vector<Word> out;
    for_each_word(alphabet.symbols, max_len, [&](const Word& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

std::vector<Symbol> live_symbols(const AnyMachine& m) {
    const Alphabet& a = alphabet_of(m);
    const ComplementRelation* rho = nullptr;
    if (const auto* x = std::get_if<MhwkMachine>(&m)) {
        rho = &x->rho;
    } else if (const auto* s = std::get_if<PcwksSystem>(&m)) {
        rho = &s->rho;
    }
    std::vector<Symbol> out;
    for (const auto& s : a.symbols) {
        if (rho == nullptr || !rho->image(s).empty()) {
            out.push_back(s);
        }
    }
    return out;
}

EnumerationResult enumerate_accepted(const AnyMachine& m, std::size_t max_len, const ResourceLimits& limits) {
    EnumerationResult r;
    for_each_word(live_symbols(m), max_len, [&](const Word& w) {
        auto v = decide(m, w, limits);
        if (v.limit_hit()) {
            r.limit_hit = true;
            return false;
        }
        if (v.accepted()) {
            r.accepted.push_back(w);
        }
        return true;
    });
    return r;
}

namespace {

/// Returns false once the counterexample budget is spent.
bool compare_one(const Decider& a, const Decider& b, const Word& w, EquivalenceReport& r, std::size_t max_ce) {
    r.bound = std::max(r.bound, w.size());
    ++r.words_checked;
    const auto va = a(w).outcome;
    const auto vb = b(w).outcome;
    if (va != vb || va == Outcome::limit_exceeded) {
        r.counterexamples.push_back({w, va, vb});
        if (max_ce != 0 && r.counterexamples.size() >= max_ce) {
            return false;
        }
    }
    return true;
}

}  // namespace

EquivalenceReport compare_deciders(const Decider& a, const Decider& b, const std::vector<Word>& words,
                                   std::size_t max_counterexamples) {
    EquivalenceReport r;
    for (const auto& w : words) {
        if (!compare_one(a, b, w, r, max_counterexamples)) {
            break;
        }
    }
    r.agree = r.counterexamples.empty();
    return r;
}

EquivalenceReport equivalent_up_to(const AnyMachine& a, const AnyMachine& b, std::size_t max_len,
                                   const ResourceLimits& limits, std::size_t max_counterexamples) {
    auto sa = alphabet_of(a).symbols;
    auto sb = alphabet_of(b).symbols;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
        throw std::invalid_argument("machines have different alphabets");
    }
    const auto la = live_symbols(a);
    const auto lb = live_symbols(b);
    std::vector<Symbol> live;
    for (const auto& s : alphabet_of(a).symbols) {
        if (std::find(la.begin(), la.end(), s) != la.end() || std::find(lb.begin(), lb.end(), s) != lb.end()) {
            live.push_back(s);
        }
    }
    EquivalenceReport r;
    const Decider da = [&](const Word& w) { return decide(a, w, limits); };
    const Decider db = [&](const Word& w) { return decide(b, w, limits); };
    for_each_word(live, max_len, [&](const Word& w) { return compare_one(da, db, w, r, max_counterexamples); });
    r.bound = max_len;
    r.agree = r.counterexamples.empty();
    return r;
}

std::vector<const ClaimEntry*> ClaimReport::mismatches() const {
    std::vector<const ClaimEntry*> out;
    for (const auto& e : entries) {
        if (e.mismatch()) {
            out.push_back(&e);
        }
    }
    return out;
}

ClaimReport compare_to_claim(std::string fixture_name, const MhwkMachine& m, ClaimedLanguage lang,
                             const std::vector<Word>& words, const ResourceLimits& limits) {
    ClaimReport r{std::move(fixture_name), lang, {}};
    for (const auto& w : words) {
        r.entries.push_back({w, decide_mhwk(m, w, limits).outcome, claimed_membership(lang, w)});
    }
    return r;
}

// --- random machines ---------------------------------------------------------

namespace {

/// mt19937_64 output is fixed by the standard; distributions are not, so draw by modulo.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

private:
    std::mt19937_64 gen_;
};

Alphabet random_alphabet(Rng& rng, std::size_t max_symbols) {
    Alphabet a;
    const std::size_t m = rng.between(1, std::max<std::size_t>(1, max_symbols));
    for (std::size_t i = 0; i < m; ++i) {
        a.symbols.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    return a;
}

ComplementRelation random_rho(Rng& rng, const Alphabet& a) {
    ComplementRelation r;
    for (const auto& x : a.symbols) {
        if (rng.chance(1, 10)) {
            continue;  // empty image
        }
        bool any = false;
        for (const auto& y : a.symbols) {
            if (rng.chance(1, 2)) {
                r.pairs.emplace_back(x, y);
                any = true;
            }
        }
        if (!any) {
            r.pairs.emplace_back(x, a.symbols[rng.below(a.size())]);
        }
    }
    return r;
}

std::vector<StateId> random_states(Rng& rng, std::size_t max_states, std::vector<StateId>& finals) {
    std::vector<StateId> states;
    const std::size_t s = rng.between(1, std::max<std::size_t>(1, max_states));
    for (std::size_t i = 0; i < s; ++i) {
        states.push_back("q" + std::to_string(i));
        if (rng.chance(1, 2)) {
            finals.push_back(states.back());
        }
    }
    if (finals.empty()) {
        finals.push_back(states[rng.below(s)]);
    }
    return states;
}

Symbol random_read(Rng& rng, const Alphabet& a) {
    return rng.chance(1, 3) ? Symbol{} : a.symbols[rng.below(a.size())];
}

}  // namespace

MhwkMachine random_mhwk(std::uint64_t seed, const RandomBounds& b) {
    Rng rng(seed);
    MhwkMachine m;
    m.alphabet = random_alphabet(rng, b.max_symbols);
    m.rho = random_rho(rng, m.alphabet);
    m.states = random_states(rng, b.max_states, m.finals);
    m.initial = m.states[0];
    do {
        m.k1 = rng.between(b.min_k1, b.max_k1);
        m.k2 = rng.between(b.min_k2, b.max_k2);
    } while (m.k1 + m.k2 == 0);
    const std::size_t rules = rng.between(1, std::max<std::size_t>(1, b.max_rules));
    for (std::size_t i = 0; i < rules; ++i) {
        MhwkTransition t;
        t.from = m.states[rng.below(m.states.size())];
        t.to = m.states[rng.below(m.states.size())];
        for (std::size_t h = 0; h < m.k1; ++h) {
            t.upper.push_back(random_read(rng, m.alphabet));
        }
        for (std::size_t h = 0; h < m.k2; ++h) {
            t.lower.push_back(random_read(rng, m.alphabet));
        }
        m.transitions.push_back(std::move(t));
    }
    return validated(std::move(m));
}

MhfaMachine random_mhfa(std::uint64_t seed, const RandomBounds& b) {
    Rng rng(seed);
    MhfaMachine m;
    m.alphabet = random_alphabet(rng, b.max_symbols);
    m.states = random_states(rng, b.max_states, m.finals);
    m.initial = m.states[0];
    m.k = rng.between(1, std::max<std::size_t>(1, b.max_k1 + b.max_k2));
    const std::size_t rules = rng.between(1, std::max<std::size_t>(1, b.max_rules));
    for (std::size_t i = 0; i < rules; ++i) {
        MhfaTransition t;
        t.from = m.states[rng.below(m.states.size())];
        t.to = m.states[rng.below(m.states.size())];
        for (std::size_t h = 0; h < m.k; ++h) {
            t.reads.push_back(random_read(rng, m.alphabet));
        }
        m.transitions.push_back(std::move(t));
    }
    return validated(std::move(m));
}

PcwksSystem random_pcwks(std::uint64_t seed, const RandomBounds& b) {
    Rng rng(seed);
    PcwksSystem s;
    s.alphabet = random_alphabet(rng, b.max_symbols);
    s.rho = random_rho(rng, s.alphabet);
    s.semantics = rng.chance(1, 2) ? Semantics::returning : Semantics::non_returning;
    const std::size_t n = rng.between(1, 2);
    std::vector<StateId> states;
    const std::size_t count = rng.between(1, std::max<std::size_t>(1, b.max_states));
    for (std::size_t i = 0; i < count; ++i) {
        states.push_back("q" + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
        s.query_states.push_back("K" + std::to_string(j + 1));
    }
    for (std::size_t c = 0; c < n; ++c) {
        WkComponent comp;
        comp.states = states;
        comp.states.insert(comp.states.end(), s.query_states.begin(), s.query_states.end());
        comp.initial = states[0];
        for (const auto& q : states) {
            if (rng.chance(1, 2)) {
                comp.finals.push_back(q);
            }
        }
        if (comp.finals.empty()) {
            comp.finals.push_back(states[rng.below(states.size())]);
        }
        const std::size_t rules = rng.between(1, std::max<std::size_t>(1, b.max_rules));
        for (std::size_t i = 0; i < rules; ++i) {
            WkTransition t;
            t.from = comp.states[rng.below(comp.states.size())];
            // Query states only have incoming rules.
            if (s.query_target(t.from)) {
                t.from = states[rng.below(states.size())];
            }
            t.to = rng.chance(1, 6) ? s.query_states[rng.below(n)] : states[rng.below(states.size())];
            const std::size_t kind = rng.below(3);
            const Symbol sym = s.alphabet.symbols[rng.below(s.alphabet.size())];
            if (kind == 1) {
                t.upper.push_back(sym);
            } else if (kind == 2) {
                t.lower.push_back(sym);
            }
            comp.transitions.push_back(std::move(t));
        }
        s.components.push_back(std::move(comp));
    }
    return validated(std::move(s));
}

}  // namespace mhwk
