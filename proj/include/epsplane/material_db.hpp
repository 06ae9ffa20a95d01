#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "epsplane/csv.hpp"
#include "epsplane/em_model.hpp"
#include "epsplane/errors.hpp"
#include "epsplane/permittivity.hpp"

namespace epsplane {

// ============================================================================
// Records
// ============================================================================

/// One material with its measured permittivity, literature source tag and an
/// optional free-text category.
struct MaterialRecord {
    std::string name;
    ComplexPermittivity permittivity;
    std::string source;
    std::string category;

    [[nodiscard]] bool operator==(const MaterialRecord&) const = default;
};

/// Immutable collection of records, all valid at one frequency.
struct MaterialDatabase {
    double frequency_ghz = default_frequency_ghz;
    std::vector<MaterialRecord> records;
};

/// Trim ASCII whitespace and fold ASCII letters to lower case. Bytes outside
/// ASCII pass through untouched, so UTF-8 names compare byte-wise.
[[nodiscard]] inline std::string normalize_name(std::string_view name) {
    const std::string_view t = trim(name);
    std::string out(t);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

/// Case-insensitive lookup; exact match after normalization.
[[nodiscard]] inline std::optional<MaterialRecord> find_material(const MaterialDatabase& db,
                                                                 std::string_view name) {
    const std::string key = normalize_name(name);
    for (const auto& record : db.records) {
        if (normalize_name(record.name) == key)
            return record;
    }
    return std::nullopt;
}

// ============================================================================
// Builtin database
// ============================================================================

/// Measured complex permittivities of typical person-worn materials at
/// 30 GHz, compiled from the cited measurement literature.
[[nodiscard]] inline MaterialDatabase builtin_database() {
    MaterialDatabase db;
    db.frequency_ghz = 30.0;
    db.records = {
        {"Silicone rubber", {3.0, 0.001}, "[5]", "benign"},
        {"Petroleum Jelly", {2.15, 0.0007}, "[6]", "benign"},
        {"Jujube Honey", {8.7, 4.8}, "[7]", "water-based"},
        {"Baking Soda", {2.5, 0.025}, "[8]", "surrogate"},
        {"Sugar", {3.5, 0.0025}, "[9]", "surrogate"},
        {"Powdered Sugar", {2.05, 0.004}, "[10]", "benign"},
        {"Talc", {1.75, 0.01}, "[8]", "benign"},
        {"Sheet glass (heated to 1737 F)", {5.29, 0.125}, "[11]", "benign"},
        {"Denim", {1.6, 0.015}, "[12]", "benign"},
        {"TNT", {2.84, 0.005}, "[13]", "explosive"},
        {"RDX", {2.60, 0.01}, "[13]", "explosive"},
        {"Cocaine", {3.0, 0.01}, "[13]", "contraband"},
        {"Methanol 0.6 Mol Solution", {7.0, 7.0}, "[14]", "water-based"},
        {"Paper", {2.35, 0.11}, "[9]", "benign"},
        {"Flour", {1.9, 0.075}, "[9]", "benign"},
        {"Soap", {2.75, 0.225}, "[9]", "benign"},
        {"Wood", {2.55, 0.14}, "[9]", "benign"},
        {"Salt", {3.05, 0.015}, "[9]", "surrogate"},
        {"Sand 1.9 gr/cm³", {4.5, 0.04}, "[10]", "benign"},
        {"Sand 1.8 gr/cm³", {5.9, 0.01}, "[10]", "benign"},
        {"Plexiglass", {2.51, 0.01}, "[15]", "benign"},
        {"Glass, High Purity Fused Silica", {3.75, 0.0035}, "[11]", "benign"},
        {"Red Leather", {2.2, 0.09}, "[12]", "benign"},
        {"PETN", {2.38, 0.02}, "[13]", "explosive"},
        {"C4", {3.28, 0.04}, "[13]", "explosive"},
        {"Ethanol", {4.5, 1.5}, "[14]", "water-based"},
        {"Water", {20.0, 30.0}, "[16]", "water-based"},
        {"Dry Skin", {20.0, 16.0}, "[17]", "reference"},
    };
    return db;
}

// ============================================================================
// CSV ingestion
// ============================================================================

/// One problem found while scanning a CSV file or a built database.
struct Diagnostic {
    enum class Code { malformed_row, duplicate_name, non_physical_value, empty_file };

    Code code = Code::malformed_row;
    std::size_t row = 0;
    std::string message;
};

/// Database scanned from CSV plus every problem encountered. Rows with
/// problems are excluded from the database; scanning never throws on content.
struct ScanResult {
    MaterialDatabase db;
    std::vector<Diagnostic> diagnostics;
};

namespace detail {

inline constexpr std::string_view csv_header = "name,eps_real,eps_imag,source,category";

[[nodiscard]] inline bool header_matches(const std::vector<std::string>& fields) {
    static const std::vector<std::string_view> expected = {"name", "eps_real", "eps_imag",
                                                           "source", "category"};
    if (fields.size() != expected.size())
        return false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (normalize_name(fields[i]) != expected[i])
            return false;
    }
    return true;
}

} // namespace detail

/// Scan a material CSV stream, collecting every diagnostic instead of
/// stopping at the first. Line numbers are physical, 1-based.
[[nodiscard]] inline ScanResult scan_database_csv(std::istream& in) {
    ScanResult result;
    auto& diags = result.diagnostics;

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t data_rows = 0;
    std::vector<std::pair<std::string, std::size_t>> seen_names;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
            line[2] == '\xBF')
            line.erase(0, 3);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;

        const auto fields = split_csv_record(line);
        if (!fields) {
            diags.push_back({Diagnostic::Code::malformed_row, line_no, "unbalanced quotes"});
            continue;
        }

        if (!header_seen) {
            if (!detail::header_matches(*fields)) {
                diags.push_back({Diagnostic::Code::malformed_row, line_no,
                                 "expected header '" + std::string(detail::csv_header) + "'"});
                return result;
            }
            header_seen = true;
            continue;
        }

        ++data_rows;
        if (fields->size() != 5) {
            diags.push_back({Diagnostic::Code::malformed_row, line_no,
                             "expected 5 fields, got " + std::to_string(fields->size())});
            continue;
        }

        MaterialRecord record;
        record.name = std::string(trim((*fields)[0]));
        record.source = std::string(trim((*fields)[3]));
        record.category = std::string(trim((*fields)[4]));
        if (record.name.empty()) {
            diags.push_back({Diagnostic::Code::malformed_row, line_no, "empty material name"});
            continue;
        }

        const auto real = parse_double((*fields)[1]);
        const auto loss = parse_double((*fields)[2]);
        if (!real || !loss) {
            diags.push_back({Diagnostic::Code::malformed_row, line_no,
                             "eps_real and eps_imag must be numbers"});
            continue;
        }
        record.permittivity = {*real, *loss};
        if (!record.permittivity.is_physical()) {
            diags.push_back({Diagnostic::Code::non_physical_value, line_no,
                             "'" + record.name + "' needs finite eps' >= 1 and eps'' >= 0"});
            continue;
        }

        const std::string key = normalize_name(record.name);
        const auto hit = std::find_if(seen_names.begin(), seen_names.end(),
                                      [&](const auto& p) { return p.first == key; });
        if (hit != seen_names.end()) {
            diags.push_back({Diagnostic::Code::duplicate_name, line_no,
                             "'" + record.name + "' already defined at row " +
                                 std::to_string(hit->second)});
            continue;
        }
        seen_names.emplace_back(key, line_no);
        result.db.records.push_back(std::move(record));
    }

    if (data_rows == 0)
        diags.push_back({Diagnostic::Code::empty_file, line_no,
                         header_seen ? "no data rows" : "no content"});
    return result;
}

/// Scan a material CSV file. Throws IoError when the file cannot be opened.
[[nodiscard]] inline ScanResult scan_database_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return scan_database_csv(in);
}

namespace detail {

[[noreturn]] inline void throw_diagnostic(const Diagnostic& d) {
    switch (d.code) {
    case Diagnostic::Code::duplicate_name:
        throw DuplicateNameError(d.row, d.message);
    case Diagnostic::Code::non_physical_value:
        throw NonPhysicalValueError(d.row, d.message);
    case Diagnostic::Code::empty_file:
        throw EmptyFileError(d.message);
    case Diagnostic::Code::malformed_row:
    default:
        throw MalformedRowError(d.row, d.message);
    }
}

} // namespace detail

/// Load a material CSV file, throwing on the first problem.
[[nodiscard]] inline MaterialDatabase load_database(const std::string& path) {
    ScanResult result = scan_database_csv(path);
    if (!result.diagnostics.empty())
        detail::throw_diagnostic(result.diagnostics.front());
    return std::move(result.db);
}

// ============================================================================
// CSV emission
// ============================================================================

/// Serialize to the same CSV dialect load_database accepts.
[[nodiscard]] inline std::string serialize_database_csv(const MaterialDatabase& db) {
    std::string out(detail::csv_header);
    out.push_back('\n');
    for (const auto& r : db.records) {
        out += csv_quote(r.name);
        out.push_back(',');
        out += format_double(r.permittivity.real);
        out.push_back(',');
        out += format_double(r.permittivity.loss);
        out.push_back(',');
        out += csv_quote(r.source);
        out.push_back(',');
        out += csv_quote(r.category);
        out.push_back('\n');
    }
    return out;
}

/// Write the database to a CSV file. Throws IoError on failure.
inline void save_database_csv(const MaterialDatabase& db, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << serialize_database_csv(db);
    if (!out)
        throw IoError("short write to '" + path + "'");
}

} // namespace epsplane
