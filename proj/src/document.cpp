#include "mhwk/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhwk/words.hpp"

namespace mhwk {

using nlohmann::json;

std::string_view to_string(MachineKind k) {
    switch (k) {
        case MachineKind::mhwk:
            return "mhwk";
        case MachineKind::mhfa:
            return "mhfa";
        case MachineKind::pcwks:
            return "pcwks";
    }
    return "?";
}

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::string out;
    for (const auto& e : errors) {
        out += (out.empty() ? "" : "\n") + e;
    }
    return out;
}

/// Schema reader that records every problem instead of stopping at the first.
class Reader {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

    const json* field(const json& obj, const std::string& path, const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            fail(path.empty() ? key : path + "." + key, "missing field");
            return nullptr;
        }
        return &*it;
    }

    std::string str(const json& obj, const std::string& path, const char* key) {
        const json* v = field(obj, path, key);
        if (v == nullptr) {
            return {};
        }
        if (!v->is_string()) {
            fail(sub(path, key), "expected string");
            return {};
        }
        return v->get<std::string>();
    }

    std::size_t count(const json& obj, const std::string& path, const char* key) {
        const json* v = field(obj, path, key);
        if (v == nullptr) {
            return 0;
        }
        if (!v->is_number_unsigned()) {
            fail(sub(path, key), "expected non-negative integer");
            return 0;
        }
        return v->get<std::size_t>();
    }

    std::vector<std::string> strings(const json& obj, const std::string& path, const char* key) {
        const json* v = field(obj, path, key);
        return v == nullptr ? std::vector<std::string>{} : strings_of(*v, sub(path, key));
    }

    std::vector<std::string> strings_of(const json& v, const std::string& path) {
        std::vector<std::string> out;
        if (!v.is_array()) {
            fail(path, "expected array of strings");
            return out;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string()) {
                fail(path + "[" + std::to_string(i) + "]", "expected string");
                continue;
            }
            out.push_back(v[i].get<std::string>());
        }
        return out;
    }

    const json& array(const json& obj, const std::string& path, const char* key) {
        static const json empty = json::array();
        const json* v = field(obj, path, key);
        if (v == nullptr) {
            return empty;
        }
        if (!v->is_array()) {
            fail(sub(path, key), "expected array");
            return empty;
        }
        return *v;
    }

    bool object(const json& v, const std::string& path) {
        if (!v.is_object()) {
            fail(path, "expected object");
            return false;
        }
        return true;
    }

    static std::string sub(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
    static std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
};

Alphabet read_alphabet(Reader& r, const json& j) { return Alphabet{r.strings(j, "", "alphabet")}; }

ComplementRelation read_rho(Reader& r, const json& j) {
    ComplementRelation rho;
    const json& arr = r.array(j, "", "rho");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        auto pair = r.strings_of(arr[i], Reader::at("rho", i));
        if (pair.size() != 2) {
            r.fail(Reader::at("rho", i), "expected a pair of symbols");
            continue;
        }
        rho.pairs.emplace_back(pair[0], pair[1]);
    }
    return rho;
}

MhwkMachine read_mhwk(Reader& r, const json& j) {
    MhwkMachine m;
    m.alphabet = read_alphabet(r, j);
    m.rho = read_rho(r, j);
    m.states = r.strings(j, "", "states");
    m.initial = r.str(j, "", "initial");
    m.finals = r.strings(j, "", "finals");
    m.k1 = r.count(j, "", "k1");
    m.k2 = r.count(j, "", "k2");
    const json& arr = r.array(j, "", "transitions");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = Reader::at("transitions", i);
        if (!r.object(arr[i], p)) {
            continue;
        }
        m.transitions.push_back({r.str(arr[i], p, "from"), r.strings(arr[i], p, "upper"),
                                 r.strings(arr[i], p, "lower"), r.str(arr[i], p, "to")});
    }
    return m;
}

MhfaMachine read_mhfa(Reader& r, const json& j) {
    MhfaMachine m;
    m.k = r.count(j, "", "k");
    m.alphabet = read_alphabet(r, j);
    m.states = r.strings(j, "", "states");
    m.initial = r.str(j, "", "initial");
    m.finals = r.strings(j, "", "finals");
    const json& arr = r.array(j, "", "transitions");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = Reader::at("transitions", i);
        if (!r.object(arr[i], p)) {
            continue;
        }
        m.transitions.push_back({r.str(arr[i], p, "from"), r.strings(arr[i], p, "reads"), r.str(arr[i], p, "to")});
    }
    return m;
}

PcwksSystem read_pcwks(Reader& r, const json& j) {
    PcwksSystem s;
    s.alphabet = read_alphabet(r, j);
    s.rho = read_rho(r, j);
    s.query_states = r.strings(j, "", "query_states");
    const std::string sem = r.str(j, "", "semantics");
    if (auto v = parse_semantics(sem)) {
        s.semantics = *v;
    } else if (j.contains("semantics")) {
        r.fail("semantics", "unknown semantics '" + sem + "'");
    }
    const json& comps = r.array(j, "", "components");
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const std::string cp = Reader::at("components", c);
        if (!r.object(comps[c], cp)) {
            continue;
        }
        WkComponent comp;
        comp.states = r.strings(comps[c], cp, "states");
        comp.initial = r.str(comps[c], cp, "initial");
        comp.finals = r.strings(comps[c], cp, "finals");
        const json& arr = r.array(comps[c], cp, "transitions");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = Reader::at(cp + ".transitions", i);
            if (!r.object(arr[i], p)) {
                continue;
            }
            WkTransition t{r.str(arr[i], p, "from"), {}, {}, r.str(arr[i], p, "to")};
            for (auto [key, out] : {std::pair{"upper", &t.upper}, std::pair{"lower", &t.lower}}) {
                try {
                    *out = parse_word(s.alphabet, r.str(arr[i], p, key));
                } catch (const std::invalid_argument& e) {
                    r.fail(Reader::sub(p, key), e.what());
                }
            }
            comp.transitions.push_back(std::move(t));
        }
        s.components.push_back(std::move(comp));
    }
    return s;
}

template <typename M>
M checked(Reader& r, M m) {
    try {
        return validated(std::move(m));
    } catch (const ValidationError& e) {
        for (const auto& v : e.report().violations) {
            r.errors.push_back(v.to_string());
        }
    }
    return {};
}

json emit_alphabet_rho(const Alphabet& a, const ComplementRelation& rho) {
    json j;
    j["alphabet"] = a.symbols;
    j["rho"] = json::array();
    for (const auto& [x, y] : rho.pairs) {
        j["rho"].push_back({x, y});
    }
    return j;
}

json emit_machine(const MhwkMachine& m) {
    json j = emit_alphabet_rho(m.alphabet, m.rho);
    j["states"] = m.states;
    j["initial"] = m.initial;
    j["finals"] = m.finals;
    j["k1"] = m.k1;
    j["k2"] = m.k2;
    j["transitions"] = json::array();
    for (const auto& t : m.transitions) {
        j["transitions"].push_back({{"from", t.from}, {"upper", t.upper}, {"lower", t.lower}, {"to", t.to}});
    }
    return j;
}

json emit_machine(const MhfaMachine& m) {
    json j;
    j["k"] = m.k;
    j["alphabet"] = m.alphabet.symbols;
    j["states"] = m.states;
    j["initial"] = m.initial;
    j["finals"] = m.finals;
    j["transitions"] = json::array();
    for (const auto& t : m.transitions) {
        j["transitions"].push_back({{"from", t.from}, {"reads", t.reads}, {"to", t.to}});
    }
    return j;
}

json emit_machine(const PcwksSystem& s) {
    json j = emit_alphabet_rho(s.alphabet, s.rho);
    j["semantics"] = std::string(to_string(s.semantics));
    j["query_states"] = s.query_states;
    j["components"] = json::array();
    for (const auto& c : s.components) {
        json cj;
        cj["states"] = c.states;
        cj["initial"] = c.initial;
        cj["finals"] = c.finals;
        cj["transitions"] = json::array();
        for (const auto& t : c.transitions) {
            cj["transitions"].push_back({{"from", t.from},
                                         {"upper", render_word(s.alphabet, t.upper)},
                                         {"lower", render_word(s.alphabet, t.lower)},
                                         {"to", t.to}});
        }
        j["components"].push_back(std::move(cj));
    }
    return j;
}

}  // namespace

DocumentError::DocumentError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

MachineDocument parse_document(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Map the byte offset to line and column.
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw DocumentError({"line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": syntax error: " + e.what()});
    }
    Reader r;
    if (!r.object(j, "$")) {
        throw DocumentError(r.errors);
    }
    if (const json* v = r.field(j, "", "format_version"); v != nullptr && *v != kFormatVersion) {
        r.fail("format_version", "unsupported version " + v->dump());
    }
    MachineDocument doc;
    if (const json* meta = r.field(j, "", "meta"); meta != nullptr && r.object(*meta, "meta")) {
        doc.meta.name = r.str(*meta, "meta", "name");
        doc.meta.description = r.str(*meta, "meta", "description");
        doc.meta.provenance = r.str(*meta, "meta", "provenance");
    }
    const std::string kind = r.str(j, "", "kind");
    if (kind == "mhwk") {
        doc.machine = read_mhwk(r, j);
    } else if (kind == "mhfa") {
        doc.machine = read_mhfa(r, j);
    } else if (kind == "pcwks") {
        doc.machine = read_pcwks(r, j);
    } else {
        r.fail("kind", "unknown kind '" + kind + "' (expected mhwk, mhfa or pcwks)");
    }
    if (!r.errors.empty()) {
        throw DocumentError(r.errors);
    }
    std::visit([&](auto& m) { m = checked(r, std::move(m)); }, doc.machine);
    if (!r.errors.empty()) {
        throw DocumentError(r.errors);
    }
    return doc;
}

std::string emit_document(const MachineDocument& doc) {
    json j = std::visit([](const auto& m) { return emit_machine(m); }, doc.machine);
    j["format_version"] = kFormatVersion;
    j["kind"] = std::string(to_string(doc.kind()));
    j["meta"] = {{"name", doc.meta.name}, {"description", doc.meta.description}, {"provenance", doc.meta.provenance}};
    return j.dump(2) + "\n";
}

MachineDocument load_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DocumentError({path.string() + ": cannot open file"});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

void save_document(const MachineDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(path.string() + ": cannot write file");
    }
    out << emit_document(doc);
}

}  // namespace mhwk
