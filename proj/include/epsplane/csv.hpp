#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace epsplane {

// ============================================================================
// Minimal CSV dialect: comma separated, double quotes around fields that
// contain commas, quotes or leading/trailing spaces, "" escapes a quote.
// Fields never span lines.
// ============================================================================

/// Strip ASCII whitespace from both ends.
[[nodiscard]] inline std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

/// Split one CSV record into fields. Returns nullopt on unbalanced quotes.
[[nodiscard]] inline std::optional<std::vector<std::string>> split_csv_record(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
        ++i;
    }
    if (quoted)
        return std::nullopt;
    fields.push_back(std::move(field));
    return fields;
}

/// Quote a field when the dialect requires it.
[[nodiscard]] inline std::string csv_quote(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                              (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs_quotes)
        return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

/// Strict full-string parse of a double (decimal or scientific notation).
[[nodiscard]] inline std::optional<double> parse_double(std::string_view field) noexcept {
    const std::string_view t = trim(field);
    if (t.empty())
        return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        return std::nullopt;
    return value;
}

/// Shortest decimal form that parses back to the same double. Plain decimal
/// notation for ordinary magnitudes, scientific outside them.
[[nodiscard]] inline std::string format_double(double value) {
    char buf[64];
    const double mag = value < 0.0 ? -value : value;
    const bool plain = value == 0.0 || (mag >= 1e-4 && mag < 1e15);
    const auto [ptr, ec] = plain
                               ? std::to_chars(buf, buf + sizeof(buf), value,
                                               std::chars_format::fixed)
                               : std::to_chars(buf, buf + sizeof(buf), value);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

} // namespace epsplane
