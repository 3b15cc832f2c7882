#include <stdexcept>
#include <tuple>

#include "mhwk/document.hpp"

namespace mhwk {

namespace {

const Symbol L;  // lambda

MhwkMachine unary_1_2(std::vector<Symbol> alphabet, std::vector<std::pair<Symbol, Symbol>> rho,
                      std::vector<StateId> states, std::vector<StateId> finals,
                      std::vector<std::tuple<StateId, Symbol, Symbol, Symbol, StateId>> rules) {
    MhwkMachine m;
    m.alphabet = Alphabet{std::move(alphabet)};
    m.rho = ComplementRelation{std::move(rho)};
    m.states = std::move(states);
    m.initial = "q0";
    m.finals = std::move(finals);
    m.k1 = 1;
    m.k2 = 2;
    for (auto& [from, a, b1, b2, to] : rules) {
        m.transitions.push_back({from, {a}, {b1, b2}, to});
    }
    return validated(std::move(m));
}

MachineDocument theorem1() {
    MachineDocument d;
    d.meta = {"theorem1", "Nondeterministic 1+2 head machine for a^n, n = 2^0 + ... + 2^l",
              "Theorem 1 transition table, transcribed verbatim"};
    d.machine = unary_1_2({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}, {"q0", "q1", "q2", "q3", "q4", "q5", "qf"},
                          {"qf"},
                          {
                              {"q0", L, L, "b", "q1"},
                              {"q1", "a", "b", "c", "q2"},
                              {"q2", L, L, "c", "q3"},
                              {"q3", "a", "b", "c", "q2"},
                              {"q3", "a", "c", "b", "q4"},
                              {"q4", L, L, "b", "q5"},
                              {"q5", "a", "c", "b", "q4"},
                              {"q5", "a", "b", "c", "q2"},
                              {"q2", L, L, "c", "qf"},
                              {"q3", L, L, "b", "qf"},
                              {"qf", "a", "b", L, "qf"},
                              {"qf", "a", "c", L, "qf"},
                          });
    return d;
}

MachineDocument lemma5() {
    MachineDocument d;
    d.meta = {"lemma5", "Nondeterministic 1+2 head machine for a^(n^2), n > 1",
              "Lemma 5 transition table, transcribed verbatim"};
    d.machine = unary_1_2({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}},
                          {"q0", "q1", "q2", "q3", "q4", "q1a", "q1aa", "q2a", "q3a"}, {"q4"},
                          {
                              {"q0", L, "b", L, "q0"},
                              {"q0", L, "c", L, "q1"},
                              {"q1", "a", L, "b", "q1a"},
                              {"q1a", "a", L, L, "q1aa"},
                              {"q1aa", "a", L, L, "q2"},
                              {"q2", "a", "c", "b", "q2"},
                              {"q2", "a", "b", "c", "q2a"},
                              {"q2a", "a", L, L, "q3"},
                              {"q2", L, L, "b", "q4"},
                              {"q3", "a", "b", "c", "q3"},
                              {"q3", "a", "c", "b", "q3a"},
                              {"q3a", "a", L, L, "q2"},
                              {"q3", L, L, "c", "q4"},
                              {"q4", L, L, "b", "q4"},
                              {"q4", L, L, "c", "q4"},
                          });
    return d;
}

MachineDocument theorem8() {
    MachineDocument d;
    d.meta = {"theorem8", "Deterministic 1+2 head machine for a^(n^2+1), n > 1",
              "Theorem 8 transition table, transcribed verbatim"};
    d.machine = unary_1_2({"a", "b", "c", "#"}, {{"a", "b"}, {"a", "c"}, {"a", "#"}},
                          {"q0", "q1", "q2", "q3", "q4", "q1a", "q1aa", "q2a", "q3a", "q4b", "q4c", "q5"}, {"q5"},
                          {
                              {"q0", L, "b", L, "q0"},
                              {"q0", L, "c", L, "q1"},
                              {"q1", "a", L, "b", "q1a"},
                              {"q1a", "a", L, L, "q1aa"},
                              {"q1aa", "a", L, L, "q2"},
                              {"q2", "a", "c", "b", "q2"},
                              {"q2", "a", "b", "c", "q2a"},
                              {"q2a", "a", L, L, "q3"},
                              {"q2", "a", "#", "b", "q4"},
                              {"q3", "a", "b", "c", "q3"},
                              {"q3", "a", "c", "b", "q3a"},
                              {"q3a", "a", L, L, "q2"},
                              {"q3", "a", "#", "c", "q4"},
                              {"q4", L, L, "b", "q4"},
                              {"q4", L, L, "c", "q4"},
                              {"q4", L, L, "#", "q5"},
                          });
    return d;
}

MachineDocument theorem10() {
    MachineDocument d;
    d.meta = {"theorem10", "Deterministic 1+1 head machine with non-injective rho for #w1*x1...#wn*xn$ "
                           "with some wi = wj and xi != xj",
              "Theorem 10 transition table, transcribed verbatim"};
    MhwkMachine m;
    m.alphabet = Alphabet{{"a", "b", "v_m1", "v_m2", "#", "*", "$"}};
    m.rho = ComplementRelation{
        {{"a", "a"}, {"#", "#"}, {"#", "v_m1"}, {"#", "v_m2"}, {"b", "b"}, {"*", "*"}, {"$", "$"}}};
    m.states = {"q0", "q1", "q2", "q3", "q4", "q5", "q5$", "q6"};
    m.initial = "q0";
    m.finals = {"q6"};
    m.k1 = 1;
    m.k2 = 1;
    auto rule = [&](StateId from, Symbol a, Symbol b, StateId to) { m.transitions.push_back({from, {a}, {b}, to}); };
    rule("q0", "#", "#", "q0");
    rule("q0", "a", "a", "q0");
    rule("q0", "b", "b", "q0");
    rule("q0", "*", "*", "q0");
    rule("q0", "#", "v_m1", "q1");
    rule("q1", L, "a", "q1");
    rule("q1", L, "b", "q1");
    rule("q1", L, "*", "q1");
    rule("q1", L, "#", "q1");
    rule("q1", L, "v_m2", "q2");
    rule("q2", "a", "a", "q2");
    rule("q2", "b", "b", "q2");
    rule("q2", "*", "*", "q3");
    rule("q3", "a", "a", "q3");
    rule("q3", "b", "b", "q3");
    rule("q3", "#", "#", "q4");
    rule("q3", "#", "$", "q4");
    rule("q3", "a", "b", "q5");
    rule("q3", "a", "*", "q5");
    rule("q3", "a", "#", "q5");
    rule("q3", "a", "$", "q5$");
    rule("q3", "b", "a", "q5");
    rule("q3", "b", "*", "q5");
    rule("q3", "b", "#", "q5");
    rule("q3", "b", "$", "q5$");
    rule("q3", "*", "a", "q5");
    rule("q3", "*", "b", "q5");
    rule("q3", "*", "#", "q5");
    rule("q3", "*", "$", "q5");
    rule("q3", "#", "a", "q5");
    rule("q3", "#", "b", "q5");
    rule("q3", "#", "*", "q5");
    for (const Symbol x : {"a", "b", "v_m1", "v_m2", "*"}) {
        rule("q5", L, x, "q5");
    }
    rule("q5", L, "$", "q5$");
    for (const Symbol x : {"a", "b", "v_m1", "v_m2", "*"}) {
        rule("q5$", x, L, "q5$");
    }
    rule("q5$", "$", L, "q6");
    d.machine = validated(std::move(m));
    return d;
}

MachineDocument anbn2h() {
    MachineDocument d;
    d.meta = {"anbn2h", "Two-head one-way finite automaton for a^n b^n, n >= 1",
              "module-authored: head 1 runs ahead over the a's, then both heads move in lockstep"};
    MhfaMachine m;
    m.k = 2;
    m.alphabet = Alphabet{{"a", "b"}};
    m.states = {"p0", "p1", "p2", "p3"};
    m.initial = "p0";
    m.finals = {"p3"};
    m.transitions = {
        {"p0", {"a", L}, "p1"},
        {"p1", {"a", L}, "p1"},
        {"p1", {"b", "a"}, "p2"},
        {"p2", {"b", "a"}, "p2"},
        {"p2", {L, "b"}, "p3"},
        {"p3", {L, "b"}, "p3"},
    };
    d.machine = validated(std::move(m));
    return d;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names{"theorem1", "lemma5", "theorem8", "theorem10", "anbn2h"};
    return names;
}

MachineDocument fixture(std::string_view name) {
    if (name == "theorem1") {
        return theorem1();
    }
    if (name == "lemma5") {
        return lemma5();
    }
    if (name == "theorem8") {
        return theorem8();
    }
    if (name == "theorem10") {
        return theorem10();
    }
    if (name == "anbn2h") {
        return anbn2h();
    }
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace mhwk
