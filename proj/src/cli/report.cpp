#include "mertens/cli/report.hpp"

#include "mertens/errors.hpp"
#include "mertens/identities/residual.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace mertens::cli {

using nlohmann::ordered_json;

Format parse_format(const std::string& text)
{
    if (text == "csv")
        return Format::csv;
    if (text == "json")
        return Format::json;
    throw PreconditionError("format must be csv or json, got '" + text + "'");
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_cell(const Cell& cell)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_double(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>)
                return csv_field(v);
            else
                return std::to_string(v);
        },
        cell);
}

ordered_json json_cell(const Cell& cell)
{
    return std::visit([](const auto& v) { return ordered_json(v); }, cell);
}

void dump_into(const ordered_json& v, std::string& out)
{
    switch (v.type()) {
    case ordered_json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [key, item] : v.items()) {
            if (!first)
                out += ',';
            first = false;
            out += ordered_json(key).dump();
            out += ':';
            dump_into(item, out);
        }
        out += '}';
        break;
    }
    case ordered_json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ',';
            dump_into(v[i], out);
        }
        out += ']';
        break;
    }
    case ordered_json::value_t::number_float: {
        const double d = v.get<double>();
        out += std::isfinite(d) ? format_double(d) : "null";
        break;
    }
    default:
        out += v.dump();
    }
}

} // namespace

std::string dump_json(const ordered_json& value)
{
    std::string out;
    dump_into(value, out);
    return out;
}

std::string render(const Table& table, Format format, const std::optional<std::string>& timestamp)
{
    std::string out;
    if (format == Format::csv) {
        if (timestamp)
            out += "# generated " + *timestamp + "\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out += (c ? "," : "") + table.columns[c];
        out += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out += (c ? "," : "") + csv_cell(row[c]);
            out += '\n';
        }
        return out;
    }

    ordered_json doc = ordered_json::object();
    if (timestamp)
        doc["meta"] = {{"generated", *timestamp}};
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c)
            obj[table.columns[c]] = json_cell(row[c]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    doc["summary"] = table.summary;
    return dump_json(doc) + "\n";
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace mertens::cli
