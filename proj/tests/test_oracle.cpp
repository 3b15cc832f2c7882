#include <catch_amalgamated.hpp>

#include <set>

#include "mhwk/oracle.hpp"
#include "mhwk/words.hpp"
#include "support.hpp"

using namespace mhwk;

namespace {

/// Plain loop over every complement; no shortcuts.
bool naive_accepts(const MhwkMachine& m, const Word& w) {
    for (const auto& w2 : complement_images(m.alphabet, m.rho, w)) {
        if (accepts_with_strand(m, w, w2)) {
            return true;
        }
    }
    return false;
}

Word l4(std::string_view text) { return parse_word(Alphabet{{"a", "b", "#", "*", "$"}}, text); }

}  // namespace

TEST_CASE("enumerative oracle on theorem1") {
    const auto m = test::mhwk_fixture("theorem1");
    const auto v = decide_mhwk_enumerative(m, test::a(3));
    REQUIRE(v.accepted());
    REQUIRE(v.witness);
    CHECK(v.witness->lower_strand == Word{"b", "c", "c"});
    CHECK(decide_mhwk_enumerative(m, {}).outcome == Outcome::reject);
}

TEST_CASE("enumerative oracle agrees with the naive complement loop") {
    for (const auto* name : {"theorem1", "lemma5", "theorem8"}) {
        const auto m = test::mhwk_fixture(name);
        for (std::size_t n = 0; n <= 10; ++n) {
            CAPTURE(name, n);
            CHECK(decide_mhwk_enumerative(m, test::a(n)).accepted() == naive_accepts(m, test::a(n)));
        }
    }
}

TEST_CASE("lemma5 on a^3: the verbatim table accepts") {
    const auto m = test::mhwk_fixture("lemma5");
    REQUIRE(naive_accepts(m, test::a(3)));
    CHECK(decide_mhwk_enumerative(m, test::a(3)).accepted());
}

TEST_CASE("accepts_with_strand checks the strand itself") {
    const auto m = test::mhwk_fixture("theorem1");
    CHECK(accepts_with_strand(m, test::a(3), {"b", "c", "c"}));
    CHECK_FALSE(accepts_with_strand(m, test::a(3), {"c", "c", "c"}));
    CHECK_FALSE(accepts_with_strand(m, test::a(3), {"a", "c", "c"}));
    CHECK_FALSE(accepts_with_strand(m, test::a(3), {"b", "c"}));
}

TEST_CASE("strand cap yields a limit verdict") {
    ResourceLimits lim;
    lim.max_strands = 2;
    const auto v = decide_mhwk_enumerative(test::mhwk_fixture("theorem8"), test::a(6), lim);
    CHECK(v.outcome == Outcome::limit_exceeded);
}

TEST_CASE("claimed languages") {
    using L = ClaimedLanguage;
    for (std::size_t n : {1u, 3u, 7u, 15u}) {
        CHECK(claimed_membership(L::L1_sum_of_powers, test::a(n)));
    }
    for (std::size_t n : {0u, 2u, 8u, 9u}) {
        CHECK_FALSE(claimed_membership(L::L1_sum_of_powers, test::a(n)));
    }
    for (std::size_t n : {4u, 9u, 16u}) {
        CHECK(claimed_membership(L::L2_square, test::a(n)));
    }
    for (std::size_t n : {0u, 1u, 3u, 8u}) {
        CHECK_FALSE(claimed_membership(L::L2_square, test::a(n)));
    }
    for (std::size_t n : {5u, 10u, 17u}) {
        CHECK(claimed_membership(L::L3_square_plus_one, test::a(n)));
    }
    for (std::size_t n : {1u, 2u, 4u, 9u}) {
        CHECK_FALSE(claimed_membership(L::L3_square_plus_one, test::a(n)));
    }
    CHECK(claimed_membership(L::L4_dup_w_diff_x, l4("#a*a#a*b$")));
    CHECK(claimed_membership(L::L4_dup_w_diff_x, l4("#*#b*#*a$")));
    CHECK_FALSE(claimed_membership(L::L4_dup_w_diff_x, l4("#a*a#a*a$")));
    CHECK_FALSE(claimed_membership(L::L4_dup_w_diff_x, l4("#a*a#b*b$")));
    CHECK_FALSE(claimed_membership(L::L4_dup_w_diff_x, l4("$")));
    CHECK_FALSE(claimed_membership(L::L4_dup_w_diff_x, l4("#a*a#a*b")));
    CHECK_FALSE(claimed_membership(L::L4_dup_w_diff_x, l4("#a#a*b$")));
}

TEST_CASE("claimed language names round-trip") {
    for (auto l : {ClaimedLanguage::L1_sum_of_powers, ClaimedLanguage::L2_square, ClaimedLanguage::L3_square_plus_one,
                   ClaimedLanguage::L4_dup_w_diff_x}) {
        CHECK(parse_claimed_language(to_string(l)) == l);
    }
    CHECK_FALSE(parse_claimed_language("L9").has_value());
}

TEST_CASE("bounded well-formed L4 words") {
    const auto words = l4_words(2, 2);
    // 7 parts over {a,b} up to length 2, 49 blocks, up to two blocks.
    CHECK(words.size() == 1 + 49 + 49 * 49);
    const std::set<Word> unique(words.begin(), words.end());
    CHECK(unique.size() == words.size());
    for (const auto& w : words) {
        REQUIRE_FALSE(w.empty());
        CHECK(w.back() == "$");
    }
}

TEST_CASE("words_up_to order and count") {
    const auto w = words_up_to(Alphabet{{"b", "a"}}, 2);
    REQUIRE(w.size() == 7);
    CHECK(w[0].empty());
    CHECK(w[1] == Word{"b"});
    CHECK(w[2] == Word{"a"});
    CHECK(w[3] == Word{"b", "b"});
    CHECK(w[6] == Word{"a", "a"});
}

TEST_CASE("live symbols") {
    CHECK(live_symbols(test::mhwk_fixture("theorem1")) == std::vector<Symbol>{"a"});
    CHECK(live_symbols(test::mhwk_fixture("theorem10")) == std::vector<Symbol>{"a", "b", "#", "*", "$"});
    CHECK(live_symbols(test::mhfa_fixture("anbn2h")) == std::vector<Symbol>{"a", "b"});
}

TEST_CASE("enumeration matches the oracle") {
    const auto m = test::mhwk_fixture("lemma5");
    std::vector<Word> expected;
    for (std::size_t n = 0; n <= 12; ++n) {
        if (naive_accepts(m, test::a(n))) {
            expected.push_back(test::a(n));
        }
    }
    const auto r = enumerate_accepted(m, 12);
    CHECK_FALSE(r.limit_hit);
    CHECK(r.accepted == expected);

    const auto ab = enumerate_accepted(test::mhfa_fixture("anbn2h"), 6);
    CHECK(ab.accepted == std::vector<Word>{{"a", "b"}, {"a", "a", "b", "b"}, {"a", "a", "a", "b", "b", "b"}});
}

TEST_CASE("bounded equivalence") {
    const AnyMachine t1 = test::mhwk_fixture("theorem1");
    const AnyMachine l5 = test::mhwk_fixture("lemma5");
    const auto same = equivalent_up_to(t1, t1, 8);
    CHECK(same.agree);
    CHECK(same.bound == 8);
    CHECK(same.words_checked == 9);

    const auto diff = equivalent_up_to(t1, l5, 8);
    CHECK_FALSE(diff.agree);
    REQUIRE_FALSE(diff.counterexamples.empty());
    // First counterexample is the shortest word the oracle tells apart.
    std::size_t first = 0;
    while (naive_accepts(std::get<MhwkMachine>(t1), test::a(first)) ==
           naive_accepts(std::get<MhwkMachine>(l5), test::a(first))) {
        ++first;
    }
    CHECK(diff.counterexamples.front().word == test::a(first));

    CHECK_THROWS_AS(equivalent_up_to(t1, test::mhwk_fixture("theorem8"), 3), std::invalid_argument);
}

TEST_CASE("compare_deciders counts limits as counterexamples") {
    const Decider acc = [](const Word&) { return Verdict{Outcome::accept, std::nullopt, 0, 0}; };
    const Decider lim = [](const Word&) { return Verdict{Outcome::limit_exceeded, std::nullopt, 0, 0}; };
    const auto r = compare_deciders(lim, lim, {{}, {"a"}, {"a", "a"}}, 2);
    CHECK_FALSE(r.agree);
    CHECK(r.counterexamples.size() == 2);
    CHECK(compare_deciders(acc, acc, {{}, {"a"}}).agree);
}

TEST_CASE("claims report is complete and deterministic") {
    const auto m = test::mhwk_fixture("theorem1");
    std::vector<Word> words;
    for (std::size_t n = 0; n <= 15; ++n) {
        words.push_back(test::a(n));
    }
    const auto r = compare_to_claim("theorem1", m, ClaimedLanguage::L1_sum_of_powers, words);
    REQUIRE(r.entries.size() == 16);
    for (const auto& e : r.entries) {
        CHECK((e.fixture == Outcome::accept) == naive_accepts(m, e.word));
    }
    const auto again = compare_to_claim("theorem1", m, ClaimedLanguage::L1_sum_of_powers, words);
    REQUIRE(again.mismatches().size() == r.mismatches().size());
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        CHECK(again.entries[i].fixture == r.entries[i].fixture);
    }
}

TEST_CASE("random machines are valid, bounded and seed-determined") {
    RandomBounds b;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto m = random_mhwk(seed, b);
        CHECK(validate_mhwk(m).ok());
        CHECK(m.states.size() <= b.max_states);
        CHECK(m.alphabet.size() <= b.max_symbols);
        CHECK(m.k1 <= b.max_k1);
        CHECK(m.k2 <= b.max_k2);
        CHECK(m.k1 + m.k2 >= 1);
        CHECK(m.transitions.size() <= b.max_rules);
        CHECK(random_mhwk(seed, b) == m);

        const auto f = random_mhfa(seed, b);
        CHECK(validate_mhfa(f).ok());
        CHECK(random_mhfa(seed, b) == f);

        const auto s = random_pcwks(seed, b);
        CHECK(validate_pcwks(s).ok());
        CHECK(classify_pcwks(s).one_limited);
        CHECK(random_pcwks(seed, b) == s);
    }
    CHECK(random_mhwk(1) != random_mhwk(2));
}
