#include <catch_amalgamated.hpp>

#include "mhwk/oracle.hpp"
#include "mhwk/xlate.hpp"
#include "support.hpp"

using namespace mhwk;

namespace {

std::vector<Word> unary(std::size_t max) {
    std::vector<Word> out;
    for (std::size_t n = 0; n <= max; ++n) {
        out.push_back(test::a(n));
    }
    return out;
}

EquivalenceReport agree_on(const AnyMachine& a, const AnyMachine& b, const std::vector<Word>& words) {
    return compare_deciders([&](const Word& w) { return decide(a, w); }, [&](const Word& w) { return decide(b, w); },
                            words);
}

TranslationError::Kind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const TranslationError& e) {
        return e.kind();
    }
    FAIL("expected TranslationError");
    return TranslationError::Kind::invalid_input;
}

}  // namespace

TEST_CASE("mhfa_to_mhwk on anbn2h") {
    const auto f = test::mhfa_fixture("anbn2h");
    const auto m = mhfa_to_mhwk(f);
    CHECK(m.k1 == 1);
    CHECK(m.k2 == 1);
    CHECK(m.rho == ComplementRelation::identity(f.alphabet));
    CHECK(decide_mhwk(m, {"a", "a", "b", "b"}).accepted());
    CHECK_FALSE(decide_mhwk(m, {"a", "b", "a", "b"}).accepted());
    CHECK(equivalent_up_to(f, m, 8).agree);
}

TEST_CASE("deterministic MHFA stays deterministic") {
    const auto f = test::mhfa_fixture("anbn2h");
    REQUIRE(classify_mhfa(f).deterministic_literal);
    CHECK(classify_mhwk(mhfa_to_mhwk(f)).deterministic_literal);
}

TEST_CASE("mhwk_to_mhfa needs a single lower head") {
    const auto t1 = test::mhwk_fixture("theorem1");
    CHECK(kind_of([&] { (void)mhwk_to_mhfa(t1); }) == TranslationError::Kind::not_single_lower_head);
    CHECK(to_string(TranslationError::Kind::not_single_lower_head) == "NotSingleLowerHead");
}

TEST_CASE("mhwk_to_mhfa round trip on anbn2h") {
    const auto f = test::mhfa_fixture("anbn2h");
    const auto back = mhwk_to_mhfa(mhfa_to_mhwk(f));
    CHECK(back.k == 2);
    CHECK(equivalent_up_to(f, back, 8).agree);
}

TEST_CASE("mhwk_to_mhfa fans out over preimages") {
    const auto t10 = test::mhwk_fixture("theorem10");
    const auto f = mhwk_to_mhfa(t10);
    // (#|v_m1) becomes a head-2 read of '#'; (#|#) as well, so q0 gains two '#' rules.
    CHECK_FALSE(classify_mhfa(f).deterministic_literal);
    auto words = l4_words(2, 1);
    for (auto& w : words_up_to(Alphabet{{"a", "#", "*", "$"}}, 4)) {
        words.push_back(std::move(w));
    }
    const auto r = agree_on(t10, f, words);
    CHECK(r.agree);
}

TEST_CASE("mhwk_to_pcwks on lemma5") {
    const auto m = test::mhwk_fixture("lemma5");
    const auto s = mhwk_to_pcwks(m);
    CHECK(s.components.size() == 2);
    CHECK(s.query_states == std::vector<StateId>{"K:1", "K:2"});
    CHECK(s.semantics == Semantics::non_returning);
    CHECK(is_one_limited(s).one_limited);
    CHECK(classify_pcwks(s).one_limited);
    CHECK(agree_on(m, s, unary(12)).agree);
    CHECK(mhwk_to_pcwks(m) == s);
}

TEST_CASE("mhwk_to_pcwks keeps determinism on theorem8") {
    const auto m = test::mhwk_fixture("theorem8");
    const auto s = mhwk_to_pcwks(m);
    REQUIRE(s.components.size() == 2);
    for (const auto& c : s.components) {
        const auto r = classify_wk_component(c, s.rho);
        CHECK(r.deterministic_literal);
        CHECK(r.deterministic_strict);
    }
    CHECK(agree_on(m, s, unary(12)).agree);
}

TEST_CASE("mhwk_to_pcwks is 1-limited on every fixture") {
    for (const auto* name : {"theorem1", "lemma5", "theorem8", "theorem10"}) {
        CAPTURE(name);
        CHECK(is_one_limited(mhwk_to_pcwks(test::mhwk_fixture(name))).one_limited);
    }
}

TEST_CASE("mhwk_to_pcwks on theorem1 and theorem10") {
    const auto t1 = test::mhwk_fixture("theorem1");
    CHECK(agree_on(t1, mhwk_to_pcwks(t1), unary(10)).agree);
    const auto t10 = test::mhwk_fixture("theorem10");
    const auto s = mhwk_to_pcwks(t10);
    CHECK(s.components.size() == 1);
    CHECK(agree_on(t10, s, l4_words(2, 1)).agree);
}

TEST_CASE("mhwk_to_pcwks refuses reserved state names") {
    auto m = test::mhwk_fixture("theorem1");
    m.states.push_back("K:1");
    CHECK(kind_of([&] { (void)mhwk_to_pcwks(m); }) == TranslationError::Kind::name_collision);
}

TEST_CASE("invalid input is reported as a translation error") {
    auto m = test::mhwk_fixture("theorem1");
    m.initial = "nowhere";
    CHECK(kind_of([&] { (void)mhwk_to_pcwks(m); }) == TranslationError::Kind::invalid_input);
}

TEST_CASE("pcwks_to_mhwk requires 1-limited components") {
    PcwksSystem s;
    s.alphabet = Alphabet{{"a"}};
    s.rho = ComplementRelation{{{"a", "a"}}};
    s.components = {WkComponent{{"p", "K1"}, "p", {"p"}, {{"p", {"a"}, {"a"}, "p"}}}};
    s.query_states = {"K1"};
    const auto rep = is_one_limited(s);
    CHECK_FALSE(rep.one_limited);
    REQUIRE(rep.offending.size() == 1);
    CHECK(rep.offending[0].symbols == 2);
    CHECK(kind_of([&] { (void)pcwks_to_mhwk(s); }) == TranslationError::Kind::not_one_limited);
}

TEST_CASE("double round trip on lemma5") {
    const auto m = test::mhwk_fixture("lemma5");
    const auto back = pcwks_to_mhwk(mhwk_to_pcwks(m));
    CHECK(back.k1 == 2);
    CHECK(back.k2 == 2);
    CHECK(agree_on(m, back, unary(12)).agree);

    TranslationOptions prune;
    prune.prune = true;
    const auto small = pcwks_to_mhwk(mhwk_to_pcwks(m), prune);
    CHECK(small.states.size() < back.states.size());
    CHECK(agree_on(m, small, unary(12)).agree);
}

TEST_CASE("product follows the requested semantics") {
    for (auto sem : {Semantics::non_returning, Semantics::returning}) {
        for (const auto* name : {"theorem1", "lemma5"}) {
            auto s = mhwk_to_pcwks(test::mhwk_fixture(name));
            s.semantics = sem;
            TranslationOptions o;
            o.semantics = sem;
            CAPTURE(name, to_string(sem));
            CHECK(agree_on(s, pcwks_to_mhwk(s, o), unary(8)).agree);
        }
    }
}

TEST_CASE("product of deterministic components is deterministic") {
    const auto s = mhwk_to_pcwks(test::mhwk_fixture("theorem8"));
    TranslationOptions o;
    o.prune = true;
    CHECK(classify_mhwk(pcwks_to_mhwk(s, o)).deterministic_literal);
}

TEST_CASE("prune_unreachable drops dead states") {
    auto m = test::mhwk_fixture("theorem1");
    m.states.push_back("island");
    m.transitions.push_back({"island", {"a"}, {"b", "b"}, "qf"});
    m = validated(m);
    const auto p = prune_unreachable(m);
    CHECK(p.states.size() == 7);
    CHECK(p.transitions.size() == 12);
    CHECK(prune_unreachable(p) == p);
}
