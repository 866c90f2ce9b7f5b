#ifndef CHARTPARSER_SERIALIZE_HPP
#define CHARTPARSER_SERIALIZE_HPP

// JSON shapes shared by extraction records and ground-truth files.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartparser/axes.hpp"
#include "chartparser/error.hpp"
#include "chartparser/legend.hpp"
#include "chartparser/ocr.hpp"
#include "chartparser/raster.hpp"
#include "chartparser/ticklabel.hpp"

namespace chartparser::json_io {

using ojson = nlohmann::ordered_json;

inline ojson bbox(const BBox& b) { return ojson::array({b.x, b.y, b.w, b.h}); }
inline BBox bbox(const nlohmann::json& j) {
    return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>(), j.at(3).get<int>()};
}

inline ojson rgb(Rgb c) { return ojson::array({c.r, c.g, c.b}); }
inline Rgb rgb(const nlohmann::json& j) {
    return {j.at(0).get<std::uint8_t>(), j.at(1).get<std::uint8_t>(), j.at(2).get<std::uint8_t>()};
}

inline ojson axes(const AxesGeometry& a) {
    ojson j;
    j["y_axis_col"] = a.y_axis_col;
    j["x_axis_row"] = a.x_axis_row;
    j["y_axis_extent"] = {a.y_axis_extent.first, a.y_axis_extent.second};
    j["x_axis_extent"] = {a.x_axis_extent.first, a.x_axis_extent.second};
    return j;
}
inline AxesGeometry axes(const nlohmann::json& j) {
    AxesGeometry a;
    a.y_axis_col = j.at("y_axis_col").get<int>();
    a.x_axis_row = j.at("x_axis_row").get<int>();
    a.y_axis_extent = {j.at("y_axis_extent").at(0).get<int>(), j.at("y_axis_extent").at(1).get<int>()};
    a.x_axis_extent = {j.at("x_axis_extent").at(0).get<int>(), j.at("x_axis_extent").at(1).get<int>()};
    return a;
}

inline ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }
inline std::optional<double> optional_number(const nlohmann::json& j) {
    return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}

/// `[{"text", "bbox", "value"}]`, anchor order.
inline ojson ticks(const TickSet& t) {
    auto arr = ojson::array();
    for (const auto& tick : t.ticks) {
        ojson j;
        j["text"] = tick.box.text;
        j["bbox"] = bbox(tick.box.bbox);
        j["value"] = optional_number(tick.value);
        arr.push_back(std::move(j));
    }
    return arr;
}
inline TickSet ticks(const nlohmann::json& arr, Axis axis) {
    std::vector<TextBox> boxes;
    std::vector<std::optional<double>> values;
    for (const auto& j : arr) {
        boxes.push_back({j.at("text").get<std::string>(), bbox(j.at("bbox")), 1.0});
        values.push_back(j.contains("value") ? optional_number(j.at("value")) : std::nullopt);
    }
    // Stored sets are already sorted by anchor.
    TickSet set{axis, {}, {}};
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        set.pixel_positions.push_back(anchor(boxes[i].bbox, axis));
        set.ticks.push_back({boxes[i], values[i]});
    }
    return set;
}

inline ojson label(const std::optional<AxisLabel>& l) {
    if (!l) return nullptr;
    ojson j;
    j["text"] = l->text;
    auto boxes = ojson::array();
    for (const auto& b : l->boxes) boxes.push_back(bbox(b.bbox));
    j["boxes"] = std::move(boxes);
    return j;
}
inline std::optional<AxisLabel> label(const nlohmann::json& j, Axis axis) {
    if (j.is_null()) return std::nullopt;
    AxisLabel l{axis, j.at("text").get<std::string>(), {}};
    for (const auto& b : j.at("boxes")) l.boxes.push_back({"", bbox(b), 1.0});
    return l;
}

inline ojson legend(const std::vector<LegendEntry>& entries) {
    auto arr = ojson::array();
    for (const auto& e : entries) {
        ojson j;
        j["name"] = e.name;
        j["color"] = rgb(e.color);
        j["name_box"] = bbox(e.name_box);
        j["swatch_box"] = bbox(e.swatch_box);
        arr.push_back(std::move(j));
    }
    return arr;
}
inline std::vector<LegendEntry> legend(const nlohmann::json& arr) {
    std::vector<LegendEntry> out;
    for (const auto& j : arr)
        out.push_back({j.at("name").get<std::string>(), bbox(j.at("name_box")), bbox(j.at("swatch_box")),
                       rgb(j.at("color"))});
    return out;
}

}  // namespace chartparser::json_io

#endif
