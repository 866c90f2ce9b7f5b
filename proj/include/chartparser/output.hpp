#ifndef CHARTPARSER_OUTPUT_HPP
#define CHARTPARSER_OUTPUT_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "chartparser/error.hpp"
#include "chartparser/table.hpp"

namespace chartparser {

enum class TableFormat { Json, Csv, Html };

struct RenderedTable {
    TableFormat format;
    std::string bytes;
};

inline std::string_view format_extension(TableFormat f) {
    switch (f) {
        case TableFormat::Json: return "json";
        case TableFormat::Csv: return "csv";
        case TableFormat::Html: return "html";
    }
    return "";
}

inline std::optional<TableFormat> parse_format(std::string_view s) {
    if (s == "json") return TableFormat::Json;
    if (s == "csv") return TableFormat::Csv;
    if (s == "html") return TableFormat::Html;
    return std::nullopt;
}

/// At most six significant digits, trailing zeros dropped, never "-0".
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
}

namespace detail {

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string html_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// `{"x_label":..,"y_label":..,"categories":[..],"series":[{"name":..,"color":[r,g,b],"values":[..]}]}`
/// on one line, keys in this order, absent cells as null.
inline RenderedTable to_json(const ChartTable& t) {
    std::string s = "{\"x_label\":" + detail::json_string(t.x_label) + ",\"y_label\":" + detail::json_string(t.y_label) +
                    ",\"categories\":[";
    for (std::size_t i = 0; i < t.categories.size(); ++i) {
        if (i) s += ',';
        s += detail::json_string(t.categories[i]);
    }
    s += "],\"series\":[";
    for (std::size_t i = 0; i < t.series.size(); ++i) {
        const auto& ser = t.series[i];
        if (i) s += ',';
        s += "{\"name\":" + detail::json_string(ser.name) + ",\"color\":[" + std::to_string(ser.color.r) + ',' +
             std::to_string(ser.color.g) + ',' + std::to_string(ser.color.b) + "],\"values\":[";
        for (std::size_t k = 0; k < ser.values.size(); ++k) {
            if (k) s += ',';
            s += ser.values[k] ? format_number(*ser.values[k]) : "null";
        }
        s += "]}";
    }
    s += "]}\n";
    return {TableFormat::Json, std::move(s)};
}

inline ChartTable table_from_json(const nlohmann::json& doc) {
    try {
        ChartTable t;
        t.x_label = doc.at("x_label").get<std::string>();
        t.y_label = doc.at("y_label").get<std::string>();
        t.categories = doc.at("categories").get<std::vector<std::string>>();
        for (const auto& s : doc.at("series")) {
            SeriesColumn col;
            col.name = s.at("name").get<std::string>();
            const auto& c = s.at("color");
            col.color = {c.at(0).get<std::uint8_t>(), c.at(1).get<std::uint8_t>(), c.at(2).get<std::uint8_t>()};
            for (const auto& v : s.at("values"))
                col.values.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
            if (col.values.size() != t.categories.size())
                throw Error(ErrorCode::MalformedResponse, "series \"" + col.name + "\" has the wrong number of values");
            t.series.push_back(std::move(col));
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedResponse, std::string("chart table JSON: ") + e.what());
    }
}

inline ChartTable table_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedResponse, std::string("chart table JSON: ") + e.what());
    }
    return table_from_json(doc);
}

inline ChartTable table_from_json(const std::string& text) { return table_from_json(std::string_view(text)); }

/// RFC 4180 fields, LF line endings, empty field for an absent value.
inline RenderedTable to_csv(const ChartTable& t) {
    std::string s = detail::csv_field(t.x_label.empty() ? "category" : t.x_label);
    for (const auto& ser : t.series) s += ',' + detail::csv_field(ser.name);
    s += '\n';
    for (std::size_t c = 0; c < t.categories.size(); ++c) {
        s += detail::csv_field(t.categories[c]);
        for (const auto& ser : t.series) {
            s += ',';
            if (c < ser.values.size() && ser.values[c]) s += format_number(*ser.values[c]);
        }
        s += '\n';
    }
    return {TableFormat::Csv, std::move(s)};
}

/**
 * HTML5 table fragment for screen readers. Column headers and row headers
 * carry scope attributes; absent values read as "no data". The caption is
 * `caption`, followed by the value-axis label and category-axis label when
 * known.
 */
inline RenderedTable to_html(const ChartTable& t, const std::string& caption) {
    using detail::html_escape;
    std::string cap = caption;
    if (!t.y_label.empty()) cap += (cap.empty() ? "" : ": ") + t.y_label;
    if (!t.x_label.empty()) cap += (cap.empty() ? "" : " by ") + t.x_label;

    std::string s = "<table>\n<caption>" + html_escape(cap) + "</caption>\n<thead>\n<tr><th scope=\"col\">" +
                    html_escape(t.x_label.empty() ? "category" : t.x_label) + "</th>";
    for (const auto& ser : t.series) s += "<th scope=\"col\">" + html_escape(ser.name) + "</th>";
    s += "</tr>\n</thead>\n<tbody>\n";
    for (std::size_t c = 0; c < t.categories.size(); ++c) {
        s += "<tr><th scope=\"row\">" + html_escape(t.categories[c]) + "</th>";
        for (const auto& ser : t.series) {
            if (c < ser.values.size() && ser.values[c])
                s += "<td>" + format_number(*ser.values[c]) + "</td>";
            else
                s += "<td aria-label=\"no data\">—</td>";
        }
        s += "</tr>\n";
    }
    s += "</tbody>\n</table>\n";
    return {TableFormat::Html, std::move(s)};
}

inline RenderedTable render_table(const ChartTable& t, TableFormat f, const std::string& caption) {
    switch (f) {
        case TableFormat::Json: return to_json(t);
        case TableFormat::Csv: return to_csv(t);
        case TableFormat::Html: return to_html(t, caption);
    }
    return to_json(t);
}

}  // namespace chartparser

#endif
