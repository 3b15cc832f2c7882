#include "mhwk/engine.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace mhwk {

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::accept:
            return "accept";
        case Outcome::reject:
            return "reject";
        case Outcome::limit_exceeded:
            return "limit_exceeded";
    }
    return "?";
}

int StrandCommitment::at(std::size_t p) const {
    if (p < base || p - base >= window.size()) {
        return kUncommitted;
    }
    return window[p - base];
}

void StrandCommitment::bind(std::size_t p, int symbol) {
    const std::size_t off = p - base;
    if (off >= window.size()) {
        window.resize(off + 1, kUncommitted);
    }
    window[off] = symbol;
}

namespace {

using Key = std::vector<std::int64_t>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : k) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

using VisitedSet = std::unordered_set<Key, KeyHash>;

std::vector<int> encode(const Alphabet& a, const Word& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (const auto& s : w) {
        auto i = a.index_of(s);
        if (!i) {
            throw std::invalid_argument("symbol '" + s + "' is not in the alphabet");
        }
        out.push_back(static_cast<int>(*i));
    }
    return out;
}

int encode_read(const Alphabet& a, const Symbol& s) {
    if (s.empty()) {
        return kUncommitted;
    }
    return static_cast<int>(*a.index_of(s));
}

std::vector<std::vector<char>> rho_matrix(const Alphabet& a, const ComplementRelation& rho) {
    std::vector<std::vector<char>> m(a.size(), std::vector<char>(a.size(), 0));
    for (const auto& [x, y] : rho.pairs) {
        m[*a.index_of(x)][*a.index_of(y)] = 1;
    }
    return m;
}

/// Every position has a nonempty image; otherwise no lower strand exists.
bool strand_exists(const std::vector<int>& word, const std::vector<std::vector<char>>& rho) {
    return std::all_of(word.begin(), word.end(), [&](int a) {
        return std::any_of(rho[a].begin(), rho[a].end(), [](char c) { return c != 0; });
    });
}

/// Drop window positions below min_lower and trailing free positions.
void normalize_commitment(StrandCommitment& c, std::size_t min_lower, bool discard) {
    if (discard && min_lower > c.base) {
        const std::size_t drop = std::min(min_lower - c.base, c.window.size());
        c.window.erase(c.window.begin(), c.window.begin() + static_cast<std::ptrdiff_t>(drop));
        c.base = min_lower;
    }
    while (!c.window.empty() && c.window.back() == kUncommitted) {
        c.window.pop_back();
    }
}

void append_commitment(Key& k, const StrandCommitment& c) {
    k.push_back(static_cast<std::int64_t>(c.base));
    k.push_back(static_cast<std::int64_t>(c.window.size()));
    for (int v : c.window) {
        k.push_back(v);
    }
}

template <typename Positions>
void append_positions(Key& k, const Positions& p) {
    for (auto v : p) {
        k.push_back(static_cast<std::int64_t>(v));
    }
}

std::vector<std::optional<Symbol>> window_symbols(const Alphabet& a, const StrandCommitment& c) {
    std::vector<std::optional<Symbol>> out;
    for (int v : c.window) {
        if (v == kUncommitted) {
            out.emplace_back(std::nullopt);
        } else {
            out.emplace_back(a.symbols[static_cast<std::size_t>(v)]);
        }
    }
    return out;
}

/// Assemble the full lower strand from the bindings along a path; unread
/// positions take the least image in alphabet order.
Word complete_strand(const Alphabet& a, const std::vector<int>& word, const std::vector<std::vector<char>>& rho,
                     const std::vector<std::pair<std::size_t, int>>& bindings) {
    std::vector<int> strand(word.size(), kUncommitted);
    for (const auto& [p, s] : bindings) {
        strand[p] = s;
    }
    Word out;
    out.reserve(word.size());
    for (std::size_t p = 0; p < word.size(); ++p) {
        if (strand[p] == kUncommitted) {
            const auto& row = rho[static_cast<std::size_t>(word[p])];
            strand[p] = static_cast<int>(std::find(row.begin(), row.end(), 1) - row.begin());
        }
        out.push_back(a.symbols[static_cast<std::size_t>(strand[p])]);
    }
    return out;
}

}  // namespace

// --- MHWK ------------------------------------------------------------------

MhwkEngine::MhwkEngine(MhwkMachine machine, Word w1, ResourceLimits limits)
    : m_(std::move(machine)), limits_(limits) {
    word_ = encode(m_.alphabet, w1);
    rho_ = rho_matrix(m_.alphabet, m_.rho);
    strand_exists_ = strand_exists(word_, rho_);
    final_.assign(m_.states.size(), 0);
    for (const auto& f : m_.finals) {
        final_[*m_.state_index(f)] = 1;
    }
    by_state_.assign(m_.states.size(), {});
    for (const auto& t : m_.transitions) {
        Rule r{*m_.state_index(t.from), {}, {}, *m_.state_index(t.to)};
        for (const auto& s : t.upper) {
            r.upper.push_back(encode_read(m_.alphabet, s));
        }
        for (const auto& s : t.lower) {
            r.lower.push_back(encode_read(m_.alphabet, s));
        }
        by_state_[r.from].push_back(rules_.size());
        rules_.push_back(std::move(r));
    }
}

MhwkConfiguration MhwkEngine::initial() const {
    MhwkConfiguration c;
    c.state = *m_.state_index(m_.initial);
    c.upper_pos.assign(m_.k1, 0);
    c.lower_pos.assign(m_.k2, 0);
    return c;
}

void MhwkEngine::normalize(MhwkConfiguration& c) const {
    if (c.lower_pos.empty()) {
        c.commitment = {};
        return;
    }
    const auto min_lower = *std::min_element(c.lower_pos.begin(), c.lower_pos.end());
    normalize_commitment(c.commitment, min_lower, limits_.discard_window);
}

std::vector<MhwkSuccessor> MhwkEngine::applicable(const MhwkConfiguration& c) const {
    std::vector<MhwkSuccessor> out;
    const std::size_t n = word_.size();
    for (std::size_t idx : by_state_[c.state]) {
        const Rule& r = rules_[idx];
        bool ok = true;
        for (std::size_t h = 0; h < r.upper.size() && ok; ++h) {
            if (r.upper[h] == kUncommitted) {
                continue;
            }
            const std::size_t p = c.upper_pos[h];
            ok = p < n && word_[p] == r.upper[h];
        }
        if (!ok) {
            continue;
        }
        MhwkSuccessor s{idx, c, {}};
        for (std::size_t h = 0; h < r.lower.size() && ok; ++h) {
            const int b = r.lower[h];
            if (b == kUncommitted) {
                continue;
            }
            const std::size_t p = c.lower_pos[h];
            if (p >= n) {
                ok = false;
                break;
            }
            const int cur = s.config.commitment.at(p);
            if (cur == kUncommitted) {
                if (!rho_[static_cast<std::size_t>(word_[p])][static_cast<std::size_t>(b)]) {
                    ok = false;
                    break;
                }
                s.config.commitment.bind(p, b);
                s.bound.emplace_back(p, b);
            } else if (cur != b) {
                ok = false;
            }
        }
        if (!ok) {
            continue;
        }
        s.config.state = r.to;
        for (std::size_t h = 0; h < r.upper.size(); ++h) {
            s.config.upper_pos[h] += r.upper[h] != kUncommitted ? 1 : 0;
        }
        for (std::size_t h = 0; h < r.lower.size(); ++h) {
            s.config.lower_pos[h] += r.lower[h] != kUncommitted ? 1 : 0;
        }
        normalize(s.config);
        out.push_back(std::move(s));
    }
    return out;
}

bool MhwkEngine::accepting(const MhwkConfiguration& c) const {
    const std::size_t n = word_.size();
    return strand_exists_ && final_[c.state] &&
           std::all_of(c.upper_pos.begin(), c.upper_pos.end(), [n](std::size_t p) { return p == n; }) &&
           std::all_of(c.lower_pos.begin(), c.lower_pos.end(), [n](std::size_t p) { return p == n; });
}

bool MhwkEngine::commitment_sound(const MhwkConfiguration& c) const {
    for (std::size_t i = 0; i < c.commitment.window.size(); ++i) {
        const int b = c.commitment.window[i];
        const std::size_t p = c.commitment.base + i;
        if (b == kUncommitted) {
            continue;
        }
        if (p >= word_.size() || !rho_[static_cast<std::size_t>(word_[p])][static_cast<std::size_t>(b)]) {
            return false;
        }
    }
    return true;
}

ConfigSummary MhwkEngine::summarize(const MhwkConfiguration& c) const {
    return {{m_.states[c.state]}, c.upper_pos, c.lower_pos, c.commitment.base,
            window_symbols(m_.alphabet, c.commitment)};
}

Verdict MhwkEngine::run() const {
    Verdict v;
    if (!strand_exists_) {
        return v;
    }
    struct Node {
        MhwkConfiguration config;
        std::size_t parent;
        std::size_t transition;
        std::vector<std::pair<std::size_t, int>> bound;
    };
    std::vector<Node> nodes;
    VisitedSet visited;
    auto key_of = [](const MhwkConfiguration& c) {
        Key k{static_cast<std::int64_t>(c.state)};
        append_positions(k, c.upper_pos);
        append_positions(k, c.lower_pos);
        append_commitment(k, c.commitment);
        return k;
    };
    nodes.push_back({initial(), 0, 0, {}});
    visited.insert(key_of(nodes[0].config));

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (accepting(nodes[i].config)) {
            std::vector<std::size_t> path;
            for (std::size_t j = i; j != 0; j = nodes[j].parent) {
                path.push_back(j);
            }
            std::reverse(path.begin(), path.end());
            RunWitness w;
            w.steps.push_back({WitnessStep::Kind::initial, {}, summarize(nodes[0].config)});
            std::vector<std::pair<std::size_t, int>> bindings;
            for (std::size_t j : path) {
                w.steps.push_back({WitnessStep::Kind::transition, {nodes[j].transition}, summarize(nodes[j].config)});
                bindings.insert(bindings.end(), nodes[j].bound.begin(), nodes[j].bound.end());
            }
            w.lower_strand = complete_strand(m_.alphabet, word_, rho_, bindings);
            v.outcome = Outcome::accept;
            v.witness = std::move(w);
            v.explored = nodes.size();
            return v;
        }
        const MhwkConfiguration current = nodes[i].config;
        for (auto& s : applicable(current)) {
            if (!visited.insert(key_of(s.config)).second) {
                continue;
            }
            if (nodes.size() >= limits_.max_configurations) {
                v.outcome = Outcome::limit_exceeded;
                v.explored = nodes.size();
                return v;
            }
            nodes.push_back({std::move(s.config), i, s.transition, std::move(s.bound)});
        }
    }
    v.explored = nodes.size();
    return v;
}

std::vector<MhwkSuccessor> applicable_transitions(const MhwkMachine& m, const MhwkConfiguration& c, const Word& w1) {
    return MhwkEngine(m, w1).applicable(c);
}

Verdict decide_mhwk(const MhwkMachine& m, const Word& w1, const ResourceLimits& limits) {
    return MhwkEngine(m, w1, limits).run();
}

// --- MHFA ------------------------------------------------------------------

Verdict decide_mhfa(const MhfaMachine& m, const Word& w, const ResourceLimits& limits) {
    const std::vector<int> word = encode(m.alphabet, w);
    const std::size_t n = word.size();
    struct Rule {
        std::vector<int> reads;
        std::size_t to;
    };
    std::vector<std::vector<std::pair<std::size_t, Rule>>> by_state(m.states.size());
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        Rule r{{}, *m.state_index(t.to)};
        for (const auto& s : t.reads) {
            r.reads.push_back(encode_read(m.alphabet, s));
        }
        by_state[*m.state_index(t.from)].emplace_back(i, std::move(r));
    }
    std::vector<char> final(m.states.size(), 0);
    for (const auto& f : m.finals) {
        final[*m.state_index(f)] = 1;
    }

    struct Node {
        std::size_t state;
        std::vector<std::size_t> pos;
        std::size_t parent;
        std::size_t transition;
    };
    std::vector<Node> nodes;
    VisitedSet visited;
    auto key_of = [](std::size_t state, const std::vector<std::size_t>& pos) {
        Key k{static_cast<std::int64_t>(state)};
        append_positions(k, pos);
        return k;
    };
    auto summary = [&](const Node& node) {
        return ConfigSummary{{m.states[node.state]}, node.pos, {}, 0, {}};
    };
    nodes.push_back({*m.state_index(m.initial), std::vector<std::size_t>(m.k, 0), 0, 0});
    visited.insert(key_of(nodes[0].state, nodes[0].pos));

    Verdict v;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node cur = nodes[i];
        if (final[cur.state] && std::all_of(cur.pos.begin(), cur.pos.end(), [n](std::size_t p) { return p == n; })) {
            RunWitness w;
            std::vector<std::size_t> path;
            for (std::size_t j = i; j != 0; j = nodes[j].parent) {
                path.push_back(j);
            }
            std::reverse(path.begin(), path.end());
            w.steps.push_back({WitnessStep::Kind::initial, {}, summary(nodes[0])});
            for (std::size_t j : path) {
                w.steps.push_back({WitnessStep::Kind::transition, {nodes[j].transition}, summary(nodes[j])});
            }
            v.outcome = Outcome::accept;
            v.witness = std::move(w);
            v.explored = nodes.size();
            return v;
        }
        for (const auto& [idx, r] : by_state[cur.state]) {
            std::vector<std::size_t> next = cur.pos;
            bool ok = true;
            for (std::size_t h = 0; h < r.reads.size() && ok; ++h) {
                if (r.reads[h] == kUncommitted) {
                    continue;
                }
                ok = next[h] < n && word[next[h]] == r.reads[h];
                ++next[h];
            }
            if (!ok || !visited.insert(key_of(r.to, next)).second) {
                continue;
            }
            if (nodes.size() >= limits.max_configurations) {
                v.outcome = Outcome::limit_exceeded;
                v.explored = nodes.size();
                return v;
            }
            nodes.push_back({r.to, std::move(next), i, idx});
        }
    }
    v.explored = nodes.size();
    return v;
}

// --- PCWKS -----------------------------------------------------------------

namespace {

class PcwksSearch {
public:
    PcwksSearch(const PcwksSystem& s, const Word& w1, const ResourceLimits& limits) : s_(s), limits_(limits) {
        word_ = encode(s.alphabet, w1);
        rho_ = rho_matrix(s.alphabet, s.rho);
        for (const auto& comp : s.components) {
            for (const auto& q : comp.states) {
                intern(q);
            }
        }
        for (const auto& k : s.query_states) {
            intern(k);
        }
        const std::size_t n = s.components.size();
        query_of_.assign(names_.size(), -1);
        for (std::size_t j = 0; j < n; ++j) {
            query_of_[ids_.at(s.query_states[j])] = static_cast<int>(j);
        }
        comps_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& comp = s.components[i];
            auto& cc = comps_[i];
            cc.initial = ids_.at(comp.initial);
            cc.final.assign(names_.size(), 0);
            for (const auto& f : comp.finals) {
                cc.final[ids_.at(f)] = 1;
            }
            cc.by_state.assign(names_.size(), {});
            for (std::size_t t = 0; t < comp.transitions.size(); ++t) {
                const auto& tx = comp.transitions[t];
                cc.rules.push_back({t, encode(s.alphabet, tx.upper), encode(s.alphabet, tx.lower), ids_.at(tx.to)});
                cc.by_state[ids_.at(tx.from)].push_back(cc.rules.size() - 1);
            }
        }
    }

    Verdict run() {
        Verdict v;
        if (!strand_exists(word_, rho_)) {
            return v;
        }
        const std::size_t n = comps_.size();
        Config init;
        for (const auto& cc : comps_) {
            init.states.push_back(cc.initial);
        }
        init.upper.assign(n, 0);
        init.lower.assign(n, 0);
        nodes_.push_back({init, 0, WitnessStep::Kind::initial, {}, {}});
        visited_.insert(key_of(init));

        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Config cur = nodes_[i].config;
            if (accepting(cur)) {
                v.outcome = Outcome::accept;
                v.witness = witness(i);
                v.explored = nodes_.size();
                v.malformed_queries = malformed_;
                return v;
            }
            const bool query_round = std::any_of(cur.states.begin(), cur.states.end(),
                                                 [&](std::size_t q) { return query_of_[q] >= 0; });
            bool limit = false;
            if (query_round) {
                limit = !expand_query(i, cur);
            } else {
                Config next = cur;
                std::vector<std::size_t> chosen;
                std::vector<std::pair<std::size_t, int>> bound;
                limit = !expand_round(i, cur, 0, next, chosen, bound);
            }
            if (limit) {
                v.outcome = Outcome::limit_exceeded;
                v.explored = nodes_.size();
                v.malformed_queries = malformed_;
                return v;
            }
        }
        v.explored = nodes_.size();
        v.malformed_queries = malformed_;
        return v;
    }

private:
    struct Rule {
        std::size_t index;
        std::vector<int> upper;
        std::vector<int> lower;
        std::size_t to;
    };
    struct Comp {
        std::size_t initial = 0;
        std::vector<char> final;
        std::vector<Rule> rules;
        std::vector<std::vector<std::size_t>> by_state;
    };
    struct Config {
        std::vector<std::size_t> states;
        std::vector<std::size_t> upper;
        std::vector<std::size_t> lower;
        StrandCommitment commitment;
    };
    struct Node {
        Config config;
        std::size_t parent;
        WitnessStep::Kind kind;
        std::vector<std::size_t> rules;
        std::vector<std::pair<std::size_t, int>> bound;
    };

    std::size_t intern(const StateId& q) {
        auto [it, inserted] = ids_.emplace(q, names_.size());
        if (inserted) {
            names_.push_back(q);
        }
        return it->second;
    }

    Key key_of(const Config& c) const {
        Key k;
        append_positions(k, c.states);
        append_positions(k, c.upper);
        append_positions(k, c.lower);
        append_commitment(k, c.commitment);
        return k;
    }

    bool accepting(const Config& c) const {
        const std::size_t n = word_.size();
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (!comps_[i].final[c.states[i]] || c.upper[i] != n || c.lower[i] != n) {
                return false;
            }
        }
        return true;
    }

    /// Returns false when the configuration cap is reached.
    bool push(std::size_t parent, Config c, WitnessStep::Kind kind, std::vector<std::size_t> rules,
              std::vector<std::pair<std::size_t, int>> bound) {
        const auto min_lower = *std::min_element(c.lower.begin(), c.lower.end());
        normalize_commitment(c.commitment, min_lower, limits_.discard_window);
        if (!visited_.insert(key_of(c)).second) {
            return true;
        }
        if (nodes_.size() >= limits_.max_configurations) {
            return false;
        }
        nodes_.push_back({std::move(c), parent, kind, std::move(rules), std::move(bound)});
        return true;
    }

    bool expand_query(std::size_t parent, const Config& cur) {
        Config next = cur;
        std::vector<char> answered(comps_.size(), 0);
        bool any = false;
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            const int j = query_of_[cur.states[i]];
            if (j < 0) {
                continue;
            }
            const std::size_t target = cur.states[static_cast<std::size_t>(j)];
            if (query_of_[target] >= 0) {
                continue;
            }
            next.states[i] = target;
            answered[static_cast<std::size_t>(j)] = 1;
            any = true;
        }
        if (!any) {
            ++malformed_;
            return true;
        }
        if (s_.semantics == Semantics::returning) {
            for (std::size_t j = 0; j < comps_.size(); ++j) {
                if (answered[j]) {
                    next.states[j] = comps_[j].initial;
                }
            }
        }
        return push(parent, std::move(next), WitnessStep::Kind::query, {}, {});
    }

    /// Every component fires one rule; the shared commitment grows as components are visited in order.
    bool expand_round(std::size_t parent, const Config& cur, std::size_t i, Config& next,
                      std::vector<std::size_t>& chosen, std::vector<std::pair<std::size_t, int>>& bound) {
        if (i == comps_.size()) {
            return push(parent, next, WitnessStep::Kind::round, chosen, bound);
        }
        const std::size_t n = word_.size();
        for (std::size_t ri : comps_[i].by_state[cur.states[i]]) {
            const Rule& r = comps_[i].rules[ri];
            std::size_t up = cur.upper[i];
            bool ok = up + r.upper.size() <= n;
            for (std::size_t k = 0; k < r.upper.size() && ok; ++k) {
                ok = word_[up + k] == r.upper[k];
            }
            std::size_t low = cur.lower[i];
            ok = ok && low + r.lower.size() <= n;
            if (!ok) {
                continue;
            }
            const StrandCommitment saved = next.commitment;
            const std::size_t saved_bound = bound.size();
            for (std::size_t k = 0; k < r.lower.size() && ok; ++k) {
                const std::size_t p = low + k;
                const int have = next.commitment.at(p);
                if (have == kUncommitted) {
                    if (!rho_[static_cast<std::size_t>(word_[p])][static_cast<std::size_t>(r.lower[k])]) {
                        ok = false;
                        break;
                    }
                    next.commitment.bind(p, r.lower[k]);
                    bound.emplace_back(p, r.lower[k]);
                } else if (have != r.lower[k]) {
                    ok = false;
                }
            }
            if (ok) {
                next.states[i] = r.to;
                next.upper[i] = up + r.upper.size();
                next.lower[i] = low + r.lower.size();
                chosen.push_back(r.index);
                const bool alive = expand_round(parent, cur, i + 1, next, chosen, bound);
                chosen.pop_back();
                if (!alive) {
                    return false;
                }
                next.states[i] = cur.states[i];
                next.upper[i] = cur.upper[i];
                next.lower[i] = cur.lower[i];
            }
            next.commitment = saved;
            bound.resize(saved_bound);
        }
        return true;
    }

    ConfigSummary summarize(const Config& c) const {
        ConfigSummary out{{}, c.upper, c.lower, c.commitment.base, window_symbols(s_.alphabet, c.commitment)};
        for (auto q : c.states) {
            out.states.push_back(names_[q]);
        }
        return out;
    }

    RunWitness witness(std::size_t last) const {
        std::vector<std::size_t> path;
        for (std::size_t j = last; j != 0; j = nodes_[j].parent) {
            path.push_back(j);
        }
        path.push_back(0);
        std::reverse(path.begin(), path.end());
        RunWitness w;
        std::vector<std::pair<std::size_t, int>> bindings;
        for (std::size_t j : path) {
            const Node& node = nodes_[j];
            w.steps.push_back({node.kind, node.rules, summarize(node.config)});
            bindings.insert(bindings.end(), node.bound.begin(), node.bound.end());
        }
        w.lower_strand = complete_strand(s_.alphabet, word_, rho_, bindings);
        return w;
    }

    const PcwksSystem& s_;
    ResourceLimits limits_;
    std::vector<int> word_;
    std::vector<std::vector<char>> rho_;
    std::unordered_map<StateId, std::size_t> ids_;
    std::vector<StateId> names_;
    std::vector<int> query_of_;
    std::vector<Comp> comps_;
    std::vector<Node> nodes_;
    VisitedSet visited_;
    std::size_t malformed_ = 0;
};

}  // namespace

Verdict decide_pcwks(const PcwksSystem& s, const Word& w1, const ResourceLimits& limits) {
    return PcwksSearch(s, w1, limits).run();
}

}  // namespace mhwk
