#include "mhwk/reports.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "mhwk/words.hpp"

namespace mhwk {

using nlohmann::json;

namespace {

std::string shown(const Symbol& s) { return s.empty() ? "λ" : s; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string quoted_word(const Alphabet& a, const Word& w) { return "\"" + render_word(a, w) + "\""; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i > 0 ? sep : "") + parts[i];
    }
    return out;
}

std::string positions(const std::vector<std::size_t>& ps) {
    std::vector<std::string> parts;
    for (auto p : ps) {
        parts.push_back(std::to_string(p));
    }
    return "[" + join(parts, ",") + "]";
}

std::string window_text(const ConfigSummary& c) {
    std::string out = std::to_string(c.window_base) + ":";
    for (const auto& s : c.window) {
        out += s ? (s->size() == 1 ? *s : "<" + *s + ">") : "?";
    }
    return out;
}

json classification_json(const ClassificationReport& r) {
    return {{"deterministic_literal", r.deterministic_literal},
            {"deterministic_strict", r.deterministic_strict},
            {"strongly_deterministic", r.strongly_deterministic},
            {"stateless", r.stateless},
            {"all_final", r.all_final},
            {"simple", r.simple},
            {"one_limited", r.one_limited}};
}

std::string classification_lines(const ClassificationReport& r, const std::string& indent) {
    std::ostringstream out;
    out << indent << "deterministic (literal):  " << yes_no(r.deterministic_literal) << "\n"
        << indent << "deterministic (strict):   " << yes_no(r.deterministic_strict) << "\n"
        << indent << "strongly deterministic:   " << yes_no(r.strongly_deterministic) << "\n"
        << indent << "stateless:                " << yes_no(r.stateless) << "\n"
        << indent << "all final:                " << yes_no(r.all_final) << "\n"
        << indent << "simple:                   " << yes_no(r.simple) << "\n"
        << indent << "1-limited:                " << yes_no(r.one_limited) << "\n";
    return out.str();
}

json step_json(const AnyMachine& m, const WitnessStep& s, std::size_t index) {
    static const char* kinds[] = {"initial", "transition", "round", "query"};
    json window = json::array();
    for (const auto& x : s.config.window) {
        window.push_back(x ? json(*x) : json(nullptr));
    }
    return {{"step", index},
            {"kind", kinds[static_cast<int>(s.kind)]},
            {"rule", s.kind == WitnessStep::Kind::initial ? json(nullptr) : json(describe_rule(m, s))},
            {"rule_indices", s.rules},
            {"states", s.config.states},
            {"upper_pos", s.config.upper_pos},
            {"lower_pos", s.config.lower_pos},
            {"window_base", s.config.window_base},
            {"window", window}};
}

json verdict_json(const AnyMachine& m, const Word& w, const Verdict& v) {
    const Alphabet& a = alphabet_of(m);
    json j{{"type", "verdict"},
           {"word", render_word(a, w)},
           {"outcome", std::string(to_string(v.outcome))},
           {"explored", v.explored}};
    if (std::holds_alternative<PcwksSystem>(m)) {
        j["malformed_queries"] = v.malformed_queries;
    }
    if (v.witness) {
        j["steps"] = v.witness->steps.empty() ? 0 : v.witness->steps.size() - 1;
        if (!std::holds_alternative<MhfaMachine>(m)) {
            j["lower_strand"] = render_word(a, v.witness->lower_strand);
        }
    }
    return j;
}

}  // namespace

std::string describe_rule(const AnyMachine& m, const WitnessStep& step) {
    if (step.kind == WitnessStep::Kind::initial) {
        return "";
    }
    if (step.kind == WitnessStep::Kind::query) {
        return "communication";
    }
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MhwkMachine>) {
                const auto& t = x.transitions.at(step.rules.at(0));
                std::vector<std::string> up;
                std::vector<std::string> lo;
                std::transform(t.upper.begin(), t.upper.end(), std::back_inserter(up), shown);
                std::transform(t.lower.begin(), t.lower.end(), std::back_inserter(lo), shown);
                return t.from + " (" + join(up, ",") + " | " + join(lo, ",") + ") -> " + t.to;
            } else if constexpr (std::is_same_v<T, MhfaMachine>) {
                const auto& t = x.transitions.at(step.rules.at(0));
                std::vector<std::string> rd;
                std::transform(t.reads.begin(), t.reads.end(), std::back_inserter(rd), shown);
                return t.from + " (" + join(rd, ",") + ") -> " + t.to;
            } else {
                std::vector<std::string> parts;
                for (std::size_t c = 0; c < step.rules.size(); ++c) {
                    const auto& t = x.components.at(c).transitions.at(step.rules[c]);
                    const std::string u = t.upper.empty() ? "λ" : render_word(x.alphabet, t.upper);
                    const std::string l = t.lower.empty() ? "λ" : render_word(x.alphabet, t.lower);
                    parts.push_back(t.from + " (" + u + " / " + l + ") -> " + t.to);
                }
                return join(parts, "; ");
            }
        },
        m);
}

std::string render_validation(const MachineDocument& doc, Format f) {
    const auto n = std::visit([](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, PcwksSystem>) {
            return x.components.size();
        } else {
            return x.states.size();
        }
    }, doc.machine);
    if (f == Format::json) {
        return json{{"valid", true}, {"kind", std::string(to_string(doc.kind()))}, {"name", doc.meta.name}}.dump(2) +
               "\n";
    }
    const bool system = doc.kind() == MachineKind::pcwks;
    return "valid " + std::string(to_string(doc.kind())) + " '" + doc.meta.name + "' (" + std::to_string(n) +
           (system ? " components" : " states") + ")\n";
}

std::string render_classification(const MachineDocument& doc, Format f) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PcwksSystem>) {
                const auto overall = classify_pcwks(x);
                if (f == Format::json) {
                    json comps = json::array();
                    for (const auto& c : x.components) {
                        comps.push_back(classification_json(classify_wk_component(c, x.rho)));
                    }
                    json j = classification_json(overall);
                    j["components"] = comps;
                    return j.dump(2) + "\n";
                }
                std::string out = "system:\n" + classification_lines(overall, "  ");
                for (std::size_t i = 0; i < x.components.size(); ++i) {
                    out += "component " + std::to_string(i + 1) + ":\n" +
                           classification_lines(classify_wk_component(x.components[i], x.rho), "  ");
                }
                return out;
            } else {
                ClassificationReport r;
                if constexpr (std::is_same_v<T, MhwkMachine>) {
                    r = classify_mhwk(x);
                } else {
                    r = classify_mhfa(x);
                }
                return f == Format::json ? classification_json(r).dump(2) + "\n" : classification_lines(r, "");
            }
        },
        doc.machine);
}

std::string render_verdict(const AnyMachine& m, const Word& w, const Verdict& v, Format f) {
    if (f == Format::json) {
        return verdict_json(m, w, v).dump(2) + "\n";
    }
    std::ostringstream out;
    switch (v.outcome) {
        case Outcome::accept:
            out << "ACCEPT";
            break;
        case Outcome::reject:
            out << "REJECT";
            break;
        case Outcome::limit_exceeded:
            out << "LIMIT EXCEEDED";
            break;
    }
    out << " " << quoted_word(alphabet_of(m), w) << "\n";
    if (v.witness && !std::holds_alternative<MhfaMachine>(m)) {
        out << "witness lower strand: " << quoted_word(alphabet_of(m), v.witness->lower_strand) << "\n";
    }
    if (v.witness) {
        out << "steps: " << v.witness->steps.size() - 1 << "\n";
    }
    out << "explored configurations: " << v.explored << "\n";
    if (v.malformed_queries > 0) {
        out << "malformed queries: " << v.malformed_queries << "\n";
    }
    return out.str();
}

std::string render_trace_jsonl(const AnyMachine& m, const Word& w, const Verdict& v) {
    std::string out;
    if (v.witness) {
        for (std::size_t i = 0; i < v.witness->steps.size(); ++i) {
            out += step_json(m, v.witness->steps[i], i).dump() + "\n";
        }
    }
    return out + verdict_json(m, w, v).dump() + "\n";
}

std::string render_trace_table(const AnyMachine& m, const Word& w, const Verdict& v) {
    std::vector<std::vector<std::string>> rows{{"step", "rule", "state", "upper", "lower", "window"}};
    if (v.witness) {
        for (std::size_t i = 0; i < v.witness->steps.size(); ++i) {
            const auto& s = v.witness->steps[i];
            rows.push_back({std::to_string(i), s.kind == WitnessStep::Kind::initial ? "-" : describe_rule(m, s),
                            join(s.config.states, ","), positions(s.config.upper_pos), positions(s.config.lower_pos),
                            window_text(s.config)});
        }
    }
    // Column widths count code points so "λ" occupies one cell.
    auto width = [](const std::string& s) {
        return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
    };
    std::vector<std::size_t> widths(rows[0].size(), 0);
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            widths[c] = std::max(widths[c], width(r[c]));
        }
    }
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += r[c];
            if (c + 1 < r.size()) {
                line += std::string(widths[c] - width(r[c]) + 2, ' ');
            }
        }
        out += line + "\n";
    }
    return out + render_verdict(m, w, v, Format::text);
}

std::string render_enumeration(const Alphabet& a, std::size_t max_len, const EnumerationResult& r, Format f) {
    if (f == Format::json) {
        json words = json::array();
        for (const auto& w : r.accepted) {
            words.push_back(render_word(a, w));
        }
        return json{{"max_len", max_len}, {"accepted", words}, {"count", r.accepted.size()}, {"limit_hit", r.limit_hit}}
                   .dump(2) +
               "\n";
    }
    std::string out = "accepted words of length <= " + std::to_string(max_len) + ": " +
                      std::to_string(r.accepted.size()) + "\n";
    for (const auto& w : r.accepted) {
        out += "  " + quoted_word(a, w) + "\n";
    }
    if (r.limit_hit) {
        out += "resource limit hit on at least one word; the list may be incomplete\n";
    }
    return out;
}

std::string render_equivalence(const Alphabet& a, const EquivalenceReport& r, Format f) {
    if (f == Format::json) {
        json ces = json::array();
        for (const auto& c : r.counterexamples) {
            ces.push_back({{"word", render_word(a, c.word)},
                           {"a", std::string(to_string(c.a))},
                           {"b", std::string(to_string(c.b))}});
        }
        return json{{"bound", r.bound}, {"words_checked", r.words_checked}, {"agree", r.agree}, {"counterexamples", ces}}
                   .dump(2) +
               "\n";
    }
    std::string out = (r.agree ? "AGREE" : "DISAGREE") + std::string(" on ") + std::to_string(r.words_checked) +
                      " words of length <= " + std::to_string(r.bound) + "\n";
    for (const auto& c : r.counterexamples) {
        out += "  " + quoted_word(a, c.word) + ": " + std::string(to_string(c.a)) + " vs " +
               std::string(to_string(c.b)) + "\n";
    }
    return out;
}

std::string render_claims(const Alphabet& a, const ClaimReport& r, Format f) {
    const auto mism = r.mismatches();
    if (f == Format::json) {
        json entries = json::array();
        for (const auto* e : mism) {
            entries.push_back({{"word", render_word(a, e->word)},
                               {"length", e->word.size()},
                               {"fixture", std::string(to_string(e->fixture))},
                               {"claimed", e->claimed}});
        }
        return json{{"fixture", r.fixture},
                    {"language", std::string(to_string(r.language))},
                    {"words_checked", r.entries.size()},
                    {"mismatch_count", mism.size()},
                    {"mismatches", entries}}
                   .dump(2) +
               "\n";
    }
    std::string out = "fixture " + r.fixture + " vs claimed " + std::string(to_string(r.language)) + ": " +
                      std::to_string(r.entries.size()) + " words, " + std::to_string(mism.size()) + " mismatches\n";
    for (const auto* e : mism) {
        out += "  " + quoted_word(a, e->word) + " (length " + std::to_string(e->word.size()) +
               "): fixture " + std::string(to_string(e->fixture)) + ", claimed " +
               (e->claimed ? "member" : "non-member") + "\n";
    }
    return out;
}

}  // namespace mhwk
