#pragma once

// Machine description files: one JSON document per machine, canonical
// emission (sorted keys, canonical transition order), format_version 1.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mhwk/core.hpp"
#include "mhwk/oracle.hpp"

namespace mhwk {

inline constexpr int kFormatVersion = 1;

enum class MachineKind { mhwk, mhfa, pcwks };

std::string_view to_string(MachineKind k);

struct DocumentMeta {
    std::string name;
    std::string description;
    std::string provenance;

    friend bool operator==(const DocumentMeta&, const DocumentMeta&) = default;
};

struct MachineDocument {
    DocumentMeta meta;
    AnyMachine machine;

    MachineKind kind() const { return static_cast<MachineKind>(machine.index()); }

    friend bool operator==(const MachineDocument&, const MachineDocument&) = default;
};

/// Every problem found while reading a document, each prefixed with its
/// JSON path (or line and column for syntax errors).
class DocumentError : public std::runtime_error {
public:
    explicit DocumentError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// Parses, validates and canonicalizes. Throws DocumentError.
MachineDocument parse_document(std::string_view text);
std::string emit_document(const MachineDocument& doc);

MachineDocument load_document(const std::filesystem::path& path);
void save_document(const MachineDocument& doc, const std::filesystem::path& path);

/// Embedded machines: theorem1, lemma5, theorem8, theorem10, anbn2h.
const std::vector<std::string>& fixture_names();
/// Throws std::invalid_argument for an unknown name.
MachineDocument fixture(std::string_view name);

}  // namespace mhwk
