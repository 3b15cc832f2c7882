#include "mhwk/xlate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace mhwk {

std::string_view to_string(TranslationError::Kind k) {
    switch (k) {
        case TranslationError::Kind::not_single_lower_head:
            return "NotSingleLowerHead";
        case TranslationError::Kind::not_one_limited:
            return "NotOneLimited";
        case TranslationError::Kind::invalid_input:
            return "InvalidInput";
        case TranslationError::Kind::name_collision:
            return "NameCollision";
    }
    return "?";
}

namespace {

template <typename M>
M checked(const M& m) {
    try {
        return validated(m);
    } catch (const ValidationError& e) {
        throw TranslationError(TranslationError::Kind::invalid_input, e.what());
    }
}

std::string join(const std::vector<Symbol>& v, std::size_t count) {
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            out += ',';
        }
        out += v[i];
    }
    return out;
}

std::vector<Symbol> in_alphabet_order(const Alphabet& a, std::vector<Symbol> v) {
    std::sort(v.begin(), v.end(), [&](const Symbol& x, const Symbol& y) { return *a.index_of(x) < *a.index_of(y); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// Ordered, duplicate-free rule and state collection for one component.
class ComponentBuilder {
public:
    void add_state(const StateId& q) {
        if (seen_.insert(q).second) {
            comp_.states.push_back(q);
        }
    }

    void add_rule(const StateId& from, const Symbol& upper, const Symbol& lower, const StateId& to) {
        add_state(from);
        add_state(to);
        WkTransition t{from, {}, {}, to};
        if (!upper.empty()) {
            t.upper.push_back(upper);
        }
        if (!lower.empty()) {
            t.lower.push_back(lower);
        }
        comp_.transitions.push_back(std::move(t));
    }

    WkComponent& component() { return comp_; }

private:
    WkComponent comp_;
    std::unordered_set<StateId> seen_;
};

}  // namespace

MhwkMachine mhfa_to_mhwk(const MhfaMachine& input, const TranslationOptions& opts) {
    const MhfaMachine m = checked(input);
    MhwkMachine out;
    out.alphabet = m.alphabet;
    out.rho = ComplementRelation::identity(m.alphabet);
    out.states = m.states;
    out.initial = m.initial;
    out.finals = m.finals;
    out.k1 = m.k - 1;
    out.k2 = 1;
    for (const auto& t : m.transitions) {
        MhwkTransition x{t.from, {t.reads.begin(), t.reads.end() - 1}, {t.reads.back()}, t.to};
        out.transitions.push_back(std::move(x));
    }
    out = validated(std::move(out));
    return opts.prune ? prune_unreachable(std::move(out)) : out;
}

MhfaMachine mhwk_to_mhfa(const MhwkMachine& input, const TranslationOptions& opts) {
    const MhwkMachine m = checked(input);
    if (m.k2 != 1) {
        throw TranslationError(TranslationError::Kind::not_single_lower_head,
                               "machine has k2 = " + std::to_string(m.k2) + ", expected 1");
    }
    MhfaMachine out;
    out.k = m.k1 + 1;
    out.alphabet = m.alphabet;
    out.states = m.states;
    out.initial = m.initial;
    out.finals = m.finals;
    for (const auto& t : m.transitions) {
        const Symbol& b = t.lower[0];
        if (b.empty()) {
            MhfaTransition x{t.from, t.upper, t.to};
            x.reads.emplace_back();
            out.transitions.push_back(std::move(x));
            continue;
        }
        // The upper symbol under the lower head is some preimage of b.
        for (const auto& a : in_alphabet_order(m.alphabet, m.rho.preimage(b))) {
            MhfaTransition x{t.from, t.upper, t.to};
            x.reads.push_back(a);
            out.transitions.push_back(std::move(x));
        }
    }
    out = validated(std::move(out));
    return opts.prune ? prune_unreachable(std::move(out)) : out;
}

OneLimitedReport is_one_limited(const PcwksSystem& s) {
    OneLimitedReport r;
    for (std::size_t c = 0; c < s.components.size(); ++c) {
        const auto& txs = s.components[c].transitions;
        for (std::size_t i = 0; i < txs.size(); ++i) {
            const std::size_t total = txs[i].upper.size() + txs[i].lower.size();
            if (total > 1) {
                r.one_limited = false;
                r.offending.push_back({c, i, total});
            }
        }
    }
    return r;
}

// --- PCWKS -> MHWK -----------------------------------------------------------

MhwkMachine pcwks_to_mhwk(const PcwksSystem& input, const TranslationOptions& opts) {
    const PcwksSystem s = checked(input);
    if (auto lim = is_one_limited(s); !lim.one_limited) {
        const auto& o = lim.offending.front();
        throw TranslationError(TranslationError::Kind::not_one_limited,
                               "component " + std::to_string(o.component) + " rule " +
                                   std::to_string(o.rule) + " reads " + std::to_string(o.symbols) + " symbols");
    }
    const std::size_t n = s.components.size();
    using Tuple = std::vector<StateId>;
    auto name = [](const Tuple& t) {
        std::string out = "<";
        for (std::size_t i = 0; i < t.size(); ++i) {
            out += (i > 0 ? "," : "") + t[i];
        }
        return out + ">";
    };
    auto is_query = [&](const StateId& q) { return s.query_target(q).has_value(); };

    std::vector<std::unordered_map<StateId, std::vector<std::size_t>>> rules_from(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& txs = s.components[i].transitions;
        for (std::size_t r = 0; r < txs.size(); ++r) {
            rules_from[i][txs[r].from].push_back(r);
        }
    }

    MhwkMachine out;
    out.alphabet = s.alphabet;
    out.rho = s.rho;
    out.k1 = n;
    out.k2 = n;

    std::vector<Tuple> order;
    std::unordered_set<std::string> known;
    std::deque<std::size_t> work;
    auto discover = [&](const Tuple& t) {
        if (known.insert(name(t)).second) {
            order.push_back(t);
            work.push_back(order.size() - 1);
        }
    };

    Tuple init;
    for (const auto& c : s.components) {
        init.push_back(c.initial);
    }
    discover(init);
    if (!opts.prune) {
        // Full product of (Q_i u K).
        std::vector<std::vector<StateId>> domains(n);
        for (std::size_t i = 0; i < n; ++i) {
            domains[i] = s.components[i].states;
            for (const auto& k : s.query_states) {
                if (std::find(domains[i].begin(), domains[i].end(), k) == domains[i].end()) {
                    domains[i].push_back(k);
                }
            }
        }
        std::vector<std::size_t> digits(n, 0);
        while (true) {
            Tuple t(n);
            for (std::size_t i = 0; i < n; ++i) {
                t[i] = domains[i][digits[i]];
            }
            discover(t);
            std::size_t p = n;
            while (p > 0 && ++digits[p - 1] == domains[p - 1].size()) {
                digits[--p] = 0;
            }
            if (p == 0) {
                break;
            }
        }
    }

    while (!work.empty()) {
        const Tuple cur = order[work.front()];
        work.pop_front();
        const std::string from = name(cur);
        if (std::any_of(cur.begin(), cur.end(), is_query)) {
            Tuple next = cur;
            std::vector<char> answered(n, 0);
            bool any = false;
            for (std::size_t i = 0; i < n; ++i) {
                auto j = s.query_target(cur[i]);
                if (!j || is_query(cur[*j])) {
                    continue;
                }
                next[i] = cur[*j];
                answered[*j] = 1;
                any = true;
            }
            if (!any) {
                continue;
            }
            if (opts.semantics == Semantics::returning) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (answered[j]) {
                        next[j] = s.components[j].initial;
                    }
                }
            }
            discover(next);
            out.transitions.push_back({from, std::vector<Symbol>(n), std::vector<Symbol>(n), name(next)});
            continue;
        }
        // Every component fires one rule.
        MhwkTransition t{from, std::vector<Symbol>(n), std::vector<Symbol>(n), {}};
        Tuple next = cur;
        std::function<void(std::size_t)> choose = [&](std::size_t i) {
            if (i == n) {
                discover(next);
                t.to = name(next);
                out.transitions.push_back(t);
                return;
            }
            auto it = rules_from[i].find(cur[i]);
            if (it == rules_from[i].end()) {
                return;
            }
            for (std::size_t r : it->second) {
                const auto& rule = s.components[i].transitions[r];
                t.upper[i] = rule.upper.empty() ? Symbol{} : rule.upper[0];
                t.lower[i] = rule.lower.empty() ? Symbol{} : rule.lower[0];
                next[i] = rule.to;
                choose(i + 1);
            }
            next[i] = cur[i];
        };
        choose(0);
    }

    for (const auto& t : order) {
        out.states.push_back(name(t));
        bool fin = true;
        for (std::size_t i = 0; i < n && fin; ++i) {
            fin = s.components[i].is_final(t[i]);
        }
        if (fin) {
            out.finals.push_back(out.states.back());
        }
    }
    out.initial = name(init);
    out = validated(std::move(out));
    return opts.prune ? prune_unreachable(std::move(out)) : out;
}

// --- MHWK -> PCWKS -----------------------------------------------------------

namespace {

/// Non-query rounds each component spends on one source read: upper, then lower.
constexpr std::size_t kRoundsPerRead = 2;

}  // namespace

PcwksSystem mhwk_to_pcwks(const MhwkMachine& input, const TranslationOptions&) {
    const MhwkMachine m = checked(input);
    const std::size_t n = std::max(m.k1, m.k2);
    for (const auto& q : m.states) {
        for (const char* prefix : {"acc:", "mid:", "p:", "s:", "K:"}) {
            if (q.rfind(prefix, 0) == 0) {
                throw TranslationError(TranslationError::Kind::name_collision,
                                       "source state '" + q + "' uses reserved prefix '" + prefix + "'");
            }
        }
    }

    PcwksSystem out;
    out.alphabet = m.alphabet;
    out.rho = m.rho;
    out.semantics = Semantics::non_returning;
    for (std::size_t i = 1; i <= n; ++i) {
        out.query_states.push_back("K:" + std::to_string(i));
    }
    std::vector<ComponentBuilder> comps(n);
    for (auto& c : comps) {
        for (const auto& q : m.states) {
            c.add_state(q);
        }
        for (const auto& k : out.query_states) {
            c.add_state(k);
        }
    }

    auto acc = [](const StateId& q, const std::vector<Symbol>& as, const std::vector<Symbol>& bs, std::size_t len) {
        return "acc:" + q + ":" + join(as, len) + "|" + join(bs, len);
    };
    auto mid = [](const StateId& q, const std::vector<Symbol>& as, const std::vector<Symbol>& bs, std::size_t len,
                  const Symbol& x) { return "mid:" + q + ":" + join(as, len) + "|" + join(bs, len) + ":" + x; };
    // Waiting chain of `steps` lambda rules from `from`, ending in `target`.
    auto chain = [](ComponentBuilder& c, const StateId& from, std::size_t steps, const StateId& target,
                    const std::function<StateId(std::size_t)>& link) {
        StateId cur = from;
        for (std::size_t j = 1; j < steps; ++j) {
            const StateId nxt = link(j);
            c.add_rule(cur, {}, {}, nxt);
            cur = nxt;
        }
        c.add_rule(cur, {}, {}, target);
    };

    std::set<StateId> sources;
    for (const auto& t : m.transitions) {
        sources.insert(t.from);
    }

    for (const auto& t : m.transitions) {
        std::vector<Symbol> as(n);
        std::vector<Symbol> bs(n);
        for (std::size_t i = 0; i < n; ++i) {
            as[i] = i < m.k1 ? t.upper[i] : Symbol{};
            bs[i] = i < m.k2 ? t.lower[i] : Symbol{};
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto& c = comps[i];
            const StateId entry = i == 0 ? t.from : acc(t.from, as, bs, i);
            // Upper read; a missing upper head shadows this component's lower head.
            std::vector<Symbol> xs;
            if (i < m.k1 || bs[i].empty()) {
                xs = {as[i]};
            } else {
                xs = in_alphabet_order(m.alphabet, m.rho.preimage(bs[i]));
            }
            // Lower read; a missing lower head shadows this component's upper head.
            std::vector<Symbol> ys;
            if (i < m.k2 || as[i].empty()) {
                ys = {bs[i]};
            } else {
                ys = in_alphabet_order(m.alphabet, m.rho.image(as[i]));
            }
            const StateId target = i + 1 == n ? t.to : acc(t.from, as, bs, i + 1);
            for (const auto& x : xs) {
                const StateId half = mid(t.from, as, bs, i, x);
                c.add_rule(entry, x, {}, half);
                for (const auto& y : ys) {
                    c.add_rule(half, {}, y, target);
                }
            }
            if (i + 1 < n) {
                const std::size_t wait = (n - 1 - i) * kRoundsPerRead;
                chain(c, target, wait, "K:" + std::to_string(n), [wait](std::size_t j) {
                    return "s:" + std::to_string(wait - j);
                });
            }
        }
    }
    // Components 2..n wait while their predecessors read.
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t wait = i * kRoundsPerRead;
        for (const auto& q : sources) {
            chain(comps[i], q, wait, "K:" + std::to_string(i), [](std::size_t j) { return "p:" + std::to_string(j); });
        }
    }

    for (auto& c : comps) {
        auto& comp = c.component();
        comp.initial = m.initial;
        comp.finals = m.finals;
        out.components.push_back(std::move(comp));
    }
    return validated(std::move(out));
}

// --- pruning -----------------------------------------------------------------

namespace {

template <typename M>
M prune_impl(M m) {
    std::unordered_map<StateId, std::vector<StateId>> succ;
    for (const auto& t : m.transitions) {
        succ[t.from].push_back(t.to);
    }
    std::unordered_set<StateId> reach{m.initial};
    std::deque<StateId> work{m.initial};
    while (!work.empty()) {
        const StateId q = work.front();
        work.pop_front();
        for (const auto& r : succ[q]) {
            if (reach.insert(r).second) {
                work.push_back(r);
            }
        }
    }
    auto dead = [&](const StateId& q) { return !reach.contains(q); };
    std::erase_if(m.states, dead);
    std::erase_if(m.finals, dead);
    std::erase_if(m.transitions, [&](const auto& t) { return dead(t.from); });
    return m;
}

}  // namespace

MhwkMachine prune_unreachable(MhwkMachine m) { return prune_impl(std::move(m)); }
MhfaMachine prune_unreachable(MhfaMachine m) { return prune_impl(std::move(m)); }

}  // namespace mhwk
