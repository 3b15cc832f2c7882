#include "cli.hpp"

#include <algorithm>
#include <fstream>

#include <CLI11.hpp>

#include "mhwk/document.hpp"
#include "mhwk/engine.hpp"
#include "mhwk/oracle.hpp"
#include "mhwk/reports.hpp"
#include "mhwk/words.hpp"
#include "mhwk/xlate.hpp"

namespace mhwk::cli {

namespace {

struct Options {
    bool json = false;
    std::string file;
    std::string file_b;
    std::string word;
    std::string name;
    std::string to;
    std::string semantics;
    std::string output;
    bool trace = false;
    bool prune = false;
    std::size_t limit = ResourceLimits{}.max_configurations;
    std::size_t max_len = 0;
};

int outcome_code(Outcome o) {
    switch (o) {
        case Outcome::accept:
            return kSuccess;
        case Outcome::reject:
            return kNegative;
        case Outcome::limit_exceeded:
            return kLimit;
    }
    return kUsage;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error(path + ": cannot write file");
    }
    f << text;
}

MachineDocument translate(const MachineDocument& src, const std::string& to, const Options& o) {
    TranslationOptions opts;
    opts.prune = o.prune;
    std::optional<Semantics> sem;
    if (!o.semantics.empty()) {
        sem = parse_semantics(o.semantics);
        if (!sem) {
            throw std::invalid_argument("unknown semantics '" + o.semantics + "'");
        }
    }
    if (const auto* s = std::get_if<PcwksSystem>(&src.machine)) {
        opts.semantics = sem.value_or(s->semantics);
    }
    const MachineKind from = src.kind();
    MachineDocument dst;
    dst.meta = {src.meta.name + "-as-" + to,
                "translation of '" + src.meta.name + "' from " + std::string(to_string(from)) + " to " + to,
                src.meta.provenance};
    auto as_mhwk = [&]() -> MhwkMachine {
        switch (from) {
            case MachineKind::mhwk:
                return std::get<MhwkMachine>(src.machine);
            case MachineKind::mhfa:
                return mhfa_to_mhwk(std::get<MhfaMachine>(src.machine), opts);
            case MachineKind::pcwks:
                return pcwks_to_mhwk(std::get<PcwksSystem>(src.machine), opts);
        }
        throw std::logic_error("unreachable");
    };
    if (to == "mhwk") {
        dst.machine = opts.prune ? prune_unreachable(as_mhwk()) : as_mhwk();
    } else if (to == "mhfa") {
        if (from == MachineKind::mhfa) {
            const auto& m = std::get<MhfaMachine>(src.machine);
            dst.machine = opts.prune ? prune_unreachable(m) : m;
        } else {
            dst.machine = mhwk_to_mhfa(as_mhwk(), opts);
        }
    } else if (to == "pcwks") {
        if (from == MachineKind::pcwks) {
            dst.machine = std::get<PcwksSystem>(src.machine);
        } else {
            PcwksSystem s = mhwk_to_pcwks(as_mhwk(), opts);
            if (sem) {
                s.semantics = *sem;
            }
            dst.machine = std::move(s);
        }
    } else {
        throw std::invalid_argument("unknown target kind '" + to + "'");
    }
    return dst;
}

std::optional<ClaimedLanguage> claimed_language_of(std::string_view fixture_name) {
    if (fixture_name == "theorem1") {
        return ClaimedLanguage::L1_sum_of_powers;
    }
    if (fixture_name == "lemma5") {
        return ClaimedLanguage::L2_square;
    }
    if (fixture_name == "theorem8") {
        return ClaimedLanguage::L3_square_plus_one;
    }
    if (fixture_name == "theorem10") {
        return ClaimedLanguage::L4_dup_w_diff_x;
    }
    return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-head Watson-Crick automata: simulate, classify, translate and compare machines"};
    app.name("mhwk");
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");

    auto* validate = app.add_subcommand("validate", "Check a machine document");
    validate->add_option("FILE", o.file)->required();

    auto* classify = app.add_subcommand("classify", "Report determinism and structural classes");
    classify->add_option("FILE", o.file)->required();

    auto* run_cmd = app.add_subcommand("run", "Decide membership of a word");
    run_cmd->add_option("FILE", o.file)->required();
    run_cmd->add_option("WORD", o.word, "Input word; \"\" for the empty word")->required();
    run_cmd->add_flag("--trace", o.trace, "Print the accepting run step by step");
    run_cmd->add_option("--limit", o.limit, "Maximum visited configurations")->check(CLI::PositiveNumber);

    auto* enumerate = app.add_subcommand("enumerate", "List accepted words up to a length");
    enumerate->add_option("FILE", o.file)->required();
    enumerate->add_option("--max-len", o.max_len)->required();

    auto* translate_cmd = app.add_subcommand("translate", "Convert a machine to another kind");
    translate_cmd->add_option("FILE", o.file)->required();
    translate_cmd->add_option("--to", o.to)->required()->check(CLI::IsMember({"mhfa", "mhwk", "pcwks"}));
    translate_cmd->add_option("--semantics", o.semantics, "returning or non_returning")
        ->check(CLI::IsMember({"returning", "non_returning"}));
    translate_cmd->add_flag("--prune", o.prune, "Drop unreachable states");
    translate_cmd->add_option("-o,--output", o.output);

    auto* verify = app.add_subcommand("verify", "Compare two machines on all words up to a length");
    verify->add_option("FILE_A", o.file)->required();
    verify->add_option("FILE_B", o.file_b)->required();
    verify->add_option("--max-len", o.max_len)->required();

    auto* claims = app.add_subcommand("claims-report", "Compare a fixture with its claimed language");
    claims->add_option("FIXTURE", o.name)->required();
    claims->add_option("--max-len", o.max_len)->required();

    auto* fixture_cmd = app.add_subcommand("fixture", "Export an embedded machine");
    fixture_cmd->add_option("NAME", o.name)->required();
    fixture_cmd->add_option("-o,--output", o.output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }
    const Format fmt = o.json ? Format::json : Format::text;

    try {
        if (*validate) {
            out << render_validation(load_document(o.file), fmt);
            return kSuccess;
        }
        if (*classify) {
            out << render_classification(load_document(o.file), fmt);
            return kSuccess;
        }
        if (*run_cmd) {
            const auto doc = load_document(o.file);
            const Word w = parse_word(alphabet_of(doc.machine), o.word);
            ResourceLimits limits;
            limits.max_configurations = o.limit;
            const Verdict v = decide(doc.machine, w, limits);
            if (o.trace) {
                out << (o.json ? render_trace_jsonl(doc.machine, w, v) : render_trace_table(doc.machine, w, v));
            } else {
                out << render_verdict(doc.machine, w, v, fmt);
            }
            return outcome_code(v.outcome);
        }
        if (*enumerate) {
            const auto doc = load_document(o.file);
            const auto r = enumerate_accepted(doc.machine, o.max_len);
            out << render_enumeration(alphabet_of(doc.machine), o.max_len, r, fmt);
            return r.limit_hit ? kLimit : kSuccess;
        }
        if (*translate_cmd) {
            const auto dst = translate(load_document(o.file), o.to, o);
            write_output(emit_document(dst), o.output, out);
            return kSuccess;
        }
        if (*verify) {
            const auto a = load_document(o.file);
            const auto b = load_document(o.file_b);
            const auto r = equivalent_up_to(a.machine, b.machine, o.max_len);
            out << render_equivalence(alphabet_of(a.machine), r, fmt);
            const bool limit = std::any_of(r.counterexamples.begin(), r.counterexamples.end(), [](const auto& c) {
                return c.a == Outcome::limit_exceeded || c.b == Outcome::limit_exceeded;
            });
            return limit ? kLimit : (r.agree ? kSuccess : kNegative);
        }
        if (*claims) {
            const auto lang = claimed_language_of(o.name);
            if (!lang) {
                err << "error: fixture '" << o.name << "' has no claimed language\n";
                return kUsage;
            }
            const auto doc = fixture(o.name);
            const auto& m = std::get<MhwkMachine>(doc.machine);
            std::vector<Word> words;
            if (*lang == ClaimedLanguage::L4_dup_w_diff_x) {
                for (auto& w : l4_words(2, 2)) {
                    if (w.size() <= o.max_len) {
                        words.push_back(std::move(w));
                    }
                }
            } else {
                for (std::size_t n = 0; n <= o.max_len; ++n) {
                    words.push_back(repeat("a", n));
                }
            }
            const auto r = compare_to_claim(o.name, m, *lang, words);
            out << render_claims(m.alphabet, r, fmt);
            const bool limit = std::any_of(r.entries.begin(), r.entries.end(),
                                           [](const auto& e) { return e.fixture == Outcome::limit_exceeded; });
            return limit ? kLimit : kSuccess;
        }
        if (*fixture_cmd) {
            write_output(emit_document(fixture(o.name)), o.output, out);
            return kSuccess;
        }
    } catch (const DocumentError& e) {
        for (const auto& line : e.errors()) {
            err << "error: " << line << "\n";
        }
        return kUsage;
    } catch (const TranslationError& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace mhwk::cli
