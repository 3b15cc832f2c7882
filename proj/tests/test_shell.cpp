#include <catch_amalgamated.hpp>

#include "cli_matrix.hpp"
#include "mhwk/document.hpp"
#include "mhwk/xlate.hpp"
#include "support.hpp"

using namespace mhwk;

namespace {

std::string errors_of(std::string_view text) {
    try {
        (void)parse_document(text);
    } catch (const DocumentError& e) {
        return e.what();
    }
    return "";
}

const char* kTiny = R"({
  "format_version": 1,
  "kind": "mhwk",
  "meta": {"name": "tiny", "description": "", "provenance": ""},
  "alphabet": ["a", "b"],
  "rho": [["a", "b"]],
  "states": ["s", "t"],
  "initial": "s",
  "finals": ["t"],
  "k1": 1,
  "k2": 1,
  "transitions": [
    {"from": "s", "upper": ["a"], "lower": ["b"], "to": "t"},
    {"from": "s", "upper": ["a", "a"], "lower": ["b"], "to": "t"}
  ]
})";

}  // namespace

TEST_CASE("every fixture survives emit and parse") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        const auto d = fixture(name);
        const auto text = emit_document(d);
        CHECK(emit_document(d) == text);
        const auto back = parse_document(text);
        CHECK(back == d);
        CHECK(emit_document(back) == text);
        CHECK(d.meta.name == name);
        CHECK_FALSE(d.meta.provenance.empty());
    }
}

TEST_CASE("pcwks documents survive emit and parse") {
    for (const auto* name : {"lemma5", "theorem10"}) {
        MachineDocument d{{std::string(name) + "-pcwks", "", ""}, mhwk_to_pcwks(test::mhwk_fixture(name))};
        const auto text = emit_document(d);
        CHECK(parse_document(text) == d);
    }
}

TEST_CASE("theorem8 fixture contents") {
    const auto d = fixture("theorem8");
    CHECK(d.kind() == MachineKind::mhwk);
    const auto& m = std::get<MhwkMachine>(d.machine);
    CHECK(m.alphabet.symbols == std::vector<Symbol>{"a", "b", "c", "#"});
    CHECK(m.rho.pairs == std::vector<std::pair<Symbol, Symbol>>{{"a", "b"}, {"a", "c"}, {"a", "#"}});
    CHECK(m.states.size() == 12);
    CHECK(m.finals == std::vector<StateId>{"q5"});
    CHECK(m.k1 == 1);
    CHECK(m.k2 == 2);
}

TEST_CASE("theorem10 fixture contents") {
    const auto m = test::mhwk_fixture("theorem10");
    CHECK(m.k1 == 1);
    CHECK(m.k2 == 1);
    CHECK(m.alphabet.contains("v_m1"));
    CHECK(m.alphabet.contains("v_m2"));
    CHECK(m.rho.image("#").size() == 3);
}

TEST_CASE("anbn2h fixture is an MHFA") {
    const auto d = fixture("anbn2h");
    CHECK(d.kind() == MachineKind::mhfa);
    CHECK(std::get<MhfaMachine>(d.machine).k == 2);
}

TEST_CASE("unknown fixture") { CHECK_THROWS_AS(fixture("nope"), std::invalid_argument); }

TEST_CASE("schema violation names the transition") {
    const auto e = errors_of(kTiny);
    CHECK(e.find("transitions[1]") != std::string::npos);
    CHECK(e.find("upper vector has length 2, expected 1") != std::string::npos);
}

TEST_CASE("unknown kind tag") {
    std::string text = kTiny;
    text.replace(text.find("\"mhwk\""), 6, "\"tape\"");
    CHECK(errors_of(text).find("unknown kind 'tape'") != std::string::npos);
}

TEST_CASE("syntax errors carry a line number") {
    const auto e = errors_of("{\n  \"kind\": \"mhwk\",\n  oops\n}");
    CHECK(e.find("line 3") != std::string::npos);
}

TEST_CASE("missing and mistyped fields are all reported") {
    const auto e = errors_of(R"({"format_version": 1, "kind": "mhwk", "meta": {}, "k1": -1})");
    CHECK(e.find("meta.name: missing field") != std::string::npos);
    CHECK(e.find("alphabet: missing field") != std::string::npos);
    CHECK(e.find("k1: expected non-negative integer") != std::string::npos);
}

TEST_CASE("unsupported format version") {
    std::string text = kTiny;
    text.replace(text.find("\"format_version\": 1"), 19, "\"format_version\": 2");
    CHECK(errors_of(text).find("format_version") != std::string::npos);
}

TEST_CASE("pcwks reads use the system alphabet") {
    const auto e = errors_of(R"({"format_version": 1, "kind": "pcwks",
      "meta": {"name": "", "description": "", "provenance": ""},
      "alphabet": ["a"], "rho": [["a", "a"]], "semantics": "returning", "query_states": ["K1"],
      "components": [{"states": ["p", "K1"], "initial": "p", "finals": ["p"],
        "transitions": [{"from": "p", "upper": "z", "lower": "", "to": "p"}]}]})");
    CHECK(e.find("components[0].transitions[0].upper") != std::string::npos);
}

TEST_CASE("parse canonicalizes transition order") {
    const auto d = parse_document(R"({"format_version": 1, "kind": "mhwk",
      "meta": {"name": "", "description": "", "provenance": ""},
      "alphabet": ["a", "b"], "rho": [["b", "a"], ["a", "b"]], "states": ["s", "t"], "initial": "s",
      "finals": ["t"], "k1": 1, "k2": 1,
      "transitions": [{"from": "t", "upper": [""], "lower": ["b"], "to": "t"},
                      {"from": "s", "upper": ["a"], "lower": ["b"], "to": "t"},
                      {"from": "s", "upper": ["a"], "lower": ["b"], "to": "t"}]})");
    const auto& m = std::get<MhwkMachine>(d.machine);
    REQUIRE(m.transitions.size() == 2);
    CHECK(m.transitions[0].from == "s");
    CHECK(m.rho.pairs.front().first == "a");
    CHECK(parse_document(emit_document(d)) == d);
}

TEST_CASE("cli exit-code matrix") {
    const auto dir = std::filesystem::temp_directory_path() / "mhwk_test_shell";
    for (const auto& c : test::cli_matrix(dir)) {
        std::string line;
        for (const auto& a : c.args) {
            line += a + " ";
        }
        CAPTURE(line);
        const auto r = test::invoke(c.args);
        CHECK(r.code == c.expected);
        CHECK(r.out.find(c.stdout_contains) != std::string::npos);
        CHECK(r.err.find(c.stderr_contains) != std::string::npos);
        const auto again = test::invoke(c.args);
        CHECK(again.out == r.out);
        CHECK(again.code == r.code);
    }
}

TEST_CASE("cli trace in JSON Lines") {
    const auto dir = std::filesystem::temp_directory_path() / "mhwk_test_trace";
    (void)test::cli_matrix(dir);
    const auto r = test::invoke({"--json", "run", (dir / "theorem1.json").string(), "aaa", "--trace"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) {
        lines.push_back(l);
    }
    REQUIRE(lines.size() == 7);
    CHECK(lines[0].find("\"step\":0") != std::string::npos);
    CHECK(lines[5].find("\"states\":[\"qf\"]") != std::string::npos);
    CHECK(lines[5].find("\"upper_pos\":[3]") != std::string::npos);
    CHECK(lines[6].find("\"lower_strand\":\"bcc\"") != std::string::npos);
}

TEST_CASE("cli writes translations to a file") {
    const auto dir = std::filesystem::temp_directory_path() / "mhwk_test_out";
    (void)test::cli_matrix(dir);
    const auto out = (dir / "anbn2h-mhwk.json").string();
    REQUIRE(test::invoke({"translate", (dir / "anbn2h.json").string(), "--to", "mhwk", "-o", out}).code == 0);
    const auto d = load_document(out);
    CHECK(d.kind() == MachineKind::mhwk);
    CHECK(d.meta.name == "anbn2h-as-mhwk");
    CHECK(test::invoke({"verify", (dir / "anbn2h.json").string(), out, "--max-len", "6"}).code == 0);
}
