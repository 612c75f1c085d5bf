#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mertens::cli {

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// One report cell. Strings are emitted verbatim (exact rationals, wide integers).
using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// JSON only; CSV carries rows alone.
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// CSV: optional "# generated <timestamp>" line, header, rows.
/// JSON: {"meta": {...}, "rows": [...], "summary": {...}} with meta only when
/// a timestamp is given. Doubles use 17 significant digits in both formats.
std::string render(const Table& table, Format format, const std::optional<std::string>& timestamp);

/// Serializes JSON with doubles printed as %.17g; non-finite doubles become null.
std::string dump_json(const nlohmann::ordered_json& value);

/// UTC, ISO 8601 to the second.
std::string utc_timestamp();

} // namespace mertens::cli
