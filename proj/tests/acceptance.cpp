// Acceptance gate: one PASS/FAIL line per criterion. Run with --criterion N
// for a single criterion, or without arguments for all of them.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cli_matrix.hpp"
#include "mhwk/document.hpp"
#include "mhwk/oracle.hpp"
#include "mhwk/words.hpp"
#include "mhwk/xlate.hpp"

using namespace mhwk;

namespace {

struct Result {
    bool pass = true;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("mismatch: " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

MhwkMachine mhwk_fixture(const std::string& name) { return std::get<MhwkMachine>(fixture(name).machine); }

std::string word_text(const Alphabet& a, const Word& w) { return "\"" + render_word(a, w) + "\""; }

std::string outcome_text(Outcome o) { return std::string(to_string(o)); }

/// Both deciders on every word; a limit on either side is a disagreement.
std::size_t count_disagreements(const MhwkMachine& m, const std::vector<Word>& words, const ResourceLimits& limits,
                                Result& r, const std::string& label) {
    std::size_t bad = 0;
    for (const auto& w : words) {
        const auto lazy = decide_mhwk(m, w, limits).outcome;
        const auto brute = decide_mhwk_enumerative(m, w, limits).outcome;
        if (lazy != brute || lazy == Outcome::limit_exceeded) {
            if (++bad <= 5) {
                r.note(label + " " + word_text(m.alphabet, w) + ": engine " + outcome_text(lazy) + ", oracle " +
                       outcome_text(brute));
            }
        }
    }
    return bad;
}

std::vector<Word> unary(std::size_t max) {
    std::vector<Word> out;
    for (std::size_t n = 0; n <= max; ++n) {
        out.push_back(repeat("a", n));
    }
    return out;
}

Result criterion1() {
    Result r;
    const auto start = std::chrono::steady_clock::now();
    ResourceLimits limits;
    // 3^16 strands for theorem8 at length 16.
    limits.max_strands = 43'046'721;
    for (const auto* name : {"theorem1", "lemma5", "theorem8"}) {
        const auto bad = count_disagreements(mhwk_fixture(name), unary(16), limits, r, name);
        r.expect(bad == 0, std::string(name) + ": " + std::to_string(bad) + " disagreements on a^0..a^16");
    }
    const auto t10 = mhwk_fixture("theorem10");
    const auto wf = l4_words(2, 2);
    auto bad = count_disagreements(t10, wf, limits, r, "theorem10");
    r.expect(bad == 0, "theorem10: " + std::to_string(bad) + " disagreements on well-formed words");
    std::mt19937_64 gen(20240601);
    std::vector<Word> random_words;
    for (int i = 0; i < 500; ++i) {
        Word w(gen() % 8);
        for (auto& s : w) {
            s = t10.alphabet.symbols[gen() % t10.alphabet.size()];
        }
        random_words.push_back(std::move(w));
    }
    bad = count_disagreements(t10, random_words, limits, r, "theorem10");
    r.expect(bad == 0, "theorem10: " + std::to_string(bad) + " disagreements on 500 random words");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream t;
    t << "runtime " << secs << " s over " << 3 * 17 + wf.size() + 500 << " words";
    r.note(t.str());
    r.expect(secs <= 120.0, "runtime above 120 s");
    return r;
}

Result criterion2() {
    Result r;
    std::size_t words = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto m = random_mhwk(seed);
        const auto all = words_up_to(m.alphabet, 5);
        words += all.size();
        const auto bad = count_disagreements(m, all, {}, r, "seed " + std::to_string(seed));
        r.expect(bad == 0, "seed " + std::to_string(seed) + ": " + std::to_string(bad) + " disagreements");
    }
    r.note("200 machines, " + std::to_string(words) + " words");
    return r;
}

Result criterion3() {
    Result r;
    const auto t1 = mhwk_fixture("theorem1");
    const auto oracle = decide_mhwk_enumerative(t1, repeat("a", 3));
    r.expect(oracle.accepted(), "oracle: theorem1 rejects \"aaa\"");
    r.expect(accepts_with_strand(t1, repeat("a", 3), {"b", "c", "c"}), "oracle: strand \"bcc\" does not accept");
    const auto engine = decide_mhwk(t1, repeat("a", 3));
    r.expect(engine.accepted() && engine.witness && engine.witness->lower_strand == Word{"b", "c", "c"},
             "engine: theorem1 on \"aaa\" without witness \"bcc\"");

    struct Point {
        const char* fixture;
        std::size_t n;
        bool accept;
    };
    const std::vector<Point> points{
        {"lemma5", 4, true},   {"lemma5", 9, true},   {"lemma5", 3, false},  {"lemma5", 5, false},
        {"lemma5", 6, false},  {"lemma5", 7, false},  {"lemma5", 8, false},  {"theorem8", 5, true},
        {"theorem8", 10, true}, {"theorem8", 2, false}, {"theorem8", 3, false}, {"theorem8", 4, false},
        {"theorem8", 6, false}, {"theorem8", 7, false}, {"theorem8", 8, false}, {"theorem8", 9, false},
    };
    for (const auto& p : points) {
        const auto m = mhwk_fixture(p.fixture);
        const Word w = repeat("a", p.n);
        const bool by_oracle = decide_mhwk_enumerative(m, w).accepted();
        const bool by_engine = decide_mhwk(m, w).accepted();
        const std::string label = std::string(p.fixture) + " a^" + std::to_string(p.n);
        r.expect(by_oracle == by_engine, label + ": engine and oracle differ");
        r.expect(by_oracle == p.accept, label + ": expected " + (p.accept ? "accept" : "reject") + ", oracle says " +
                                            (by_oracle ? "accept" : "reject"));
    }
    return r;
}

Result criterion4() {
    Result r;
    const auto t1 = classify_mhwk(mhwk_fixture("theorem1"));
    const auto l5 = classify_mhwk(mhwk_fixture("lemma5"));
    const auto t8 = classify_mhwk(mhwk_fixture("theorem8"));
    const auto t10 = classify_mhwk(mhwk_fixture("theorem10"));
    r.expect(t8.deterministic_literal, "theorem8 deterministic_literal = false");
    r.expect(t10.deterministic_literal, "theorem10 deterministic_literal = false");
    r.expect(!t1.deterministic_literal, "theorem1 deterministic_literal = true");
    r.expect(!l5.deterministic_literal, "lemma5 deterministic_literal = true");
    r.expect(!t10.strongly_deterministic, "theorem10 strongly_deterministic = true");
    r.note(std::string("lemma5 deterministic_strict = ") + (l5.deterministic_strict ? "true" : "false"));
    return r;
}

Result criterion5() {
    Result r;
    const auto f = std::get<MhfaMachine>(fixture("anbn2h").machine);
    const auto m = mhfa_to_mhwk(f);
    const auto fwd = equivalent_up_to(f, m, 8);
    r.expect(fwd.agree, std::to_string(fwd.counterexamples.size()) + " counterexamples for anbn2h vs its MHWK form");
    const auto back = mhwk_to_mhfa(m);
    const auto rt = equivalent_up_to(f, back, 8);
    r.expect(rt.agree, std::to_string(rt.counterexamples.size()) + " counterexamples after the round trip");
    r.note(std::to_string(fwd.words_checked) + " words over {a,b} up to length 8");
    return r;
}

std::size_t unary_disagreements(const AnyMachine& a, const AnyMachine& b, std::size_t max) {
    std::size_t bad = 0;
    for (const auto& w : unary(max)) {
        const auto x = decide(a, w).outcome;
        const auto y = decide(b, w).outcome;
        bad += (x != y || x == Outcome::limit_exceeded) ? 1 : 0;
    }
    return bad;
}

Result criterion6() {
    Result r;
    const auto l5 = mhwk_fixture("lemma5");
    auto s = mhwk_to_pcwks(l5);
    r.expect(s.components.size() == 2, std::to_string(s.components.size()) + " components");
    const auto emitted = unary_disagreements(l5, s, 16);
    r.note("emitted semantics " + std::string(to_string(s.semantics)) + ": " + std::to_string(emitted) +
           " disagreements on a^0..a^16");
    s.semantics = Semantics::returning;
    const auto bad = unary_disagreements(l5, s, 16);
    r.expect(bad == 0, "returning semantics: " + std::to_string(bad) + " disagreements on a^0..a^16");
    return r;
}

Result criterion7() {
    Result r;
    const auto l5 = mhwk_fixture("lemma5");
    const auto s = mhwk_to_pcwks(l5);
    TranslationOptions nr;
    nr.semantics = s.semantics;
    const auto emitted = unary_disagreements(l5, pcwks_to_mhwk(s, nr), 12);
    r.note("product under the emitted semantics: " + std::to_string(emitted) + " disagreements on a^0..a^12");
    TranslationOptions ret;
    ret.semantics = Semantics::returning;
    const auto back = pcwks_to_mhwk(s, ret);
    r.expect(back.k1 == 2 && back.k2 == 2, "product heads " + std::to_string(back.k1) + "+" + std::to_string(back.k2));
    const auto bad = unary_disagreements(l5, back, 12);
    r.expect(bad == 0, "returning product: " + std::to_string(bad) + " disagreements on a^0..a^12");
    return r;
}

Result criterion8() {
    Result r;
    const auto s = mhwk_to_pcwks(mhwk_fixture("theorem8"));
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        r.expect(classify_wk_component(s.components[i], s.rho).deterministic_literal,
                 "theorem8 component " + std::to_string(i + 1) + " is not deterministic");
    }
    std::vector<MhfaMachine> dets{std::get<MhfaMachine>(fixture("anbn2h").machine)};
    for (std::uint64_t seed = 0; seed < 2000 && dets.size() < 50; ++seed) {
        auto f = random_mhfa(seed);
        if (classify_mhfa(f).deterministic_literal) {
            dets.push_back(std::move(f));
        }
    }
    for (std::size_t i = 0; i < dets.size(); ++i) {
        r.expect(classify_mhwk(mhfa_to_mhwk(dets[i])).deterministic_literal,
                 "deterministic MHFA #" + std::to_string(i) + " lost determinism");
    }
    r.note(std::to_string(dets.size()) + " deterministic MHFAs translated");
    return r;
}

Result criterion9() {
    Result r;
    for (const auto* name : {"theorem1", "lemma5", "theorem8", "theorem10"}) {
        const std::vector<std::string> args{"--json", "claims-report", name, "--max-len", "16"};
        const auto first = test::invoke(args);
        const auto second = test::invoke(args);
        r.expect(first.code == 0, std::string(name) + ": exit code " + std::to_string(first.code));
        r.expect(first.out == second.out, std::string(name) + ": output differs between runs");
        const auto pos = first.out.find("\"mismatch_count\": ");
        r.expect(pos != std::string::npos, std::string(name) + ": no mismatch list");
        if (pos != std::string::npos) {
            r.note(std::string(name) + ": " + first.out.substr(pos + 18, first.out.find(',', pos) - pos - 18) +
                   " mismatches");
        }
    }
    return r;
}

Result criterion10() {
    Result r;
    const auto dir = std::filesystem::temp_directory_path() / "mhwk_acceptance";
    const auto matrix = test::cli_matrix(dir);
    for (const auto& c : matrix) {
        const auto a = test::invoke(c.args);
        const auto b = test::invoke(c.args);
        std::string line;
        for (const auto& s : c.args) {
            line += " " + s;
        }
        r.expect(a.out == b.out && a.err == b.err && a.code == b.code, "nondeterministic:" + line);
        r.expect(a.code == c.expected, "exit " + std::to_string(a.code) + " for" + line);
    }
    r.note(std::to_string(matrix.size()) + " invocations");
    return r;
}

const std::map<int, std::pair<std::string, std::function<Result()>>>& criteria() {
    static const std::map<int, std::pair<std::string, std::function<Result()>>> all{
        {1, {"dual-decider agreement on the fixtures", criterion1}},
        {2, {"dual-decider agreement on 200 random machines", criterion2}},
        {3, {"hand-verifiable memberships", criterion3}},
        {4, {"classification matches the determinism claims", criterion4}},
        {5, {"MHFA to MHWK translation equivalence", criterion5}},
        {6, {"MHWK to PCWKS translation equivalence under returning semantics", criterion6}},
        {7, {"PCWKS to MHWK product equivalence under returning semantics", criterion7}},
        {8, {"determinism preservation", criterion8}},
        {9, {"claims report completes deterministically", criterion9}},
        {10, {"CLI byte-determinism", criterion10}},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty()) {
        for (const auto& [n, _] : criteria()) {
            selected.push_back(n);
        }
    }
    bool all_pass = true;
    for (int n : selected) {
        auto it = criteria().find(n);
        if (it == criteria().end()) {
            std::cerr << "unknown criterion " << n << "\n";
            return 2;
        }
        Result r;
        try {
            r = it->second.second();
        } catch (const std::exception& e) {
            r.pass = false;
            r.note(std::string("exception: ") + e.what());
        }
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << it->second.first << "\n";
        for (const auto& line : r.notes) {
            std::cout << "    " << line << "\n";
        }
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
