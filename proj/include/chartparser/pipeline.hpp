#ifndef CHARTPARSER_PIPELINE_HPP
#define CHARTPARSER_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartparser/axes.hpp"
#include "chartparser/bars.hpp"
#include "chartparser/error.hpp"
#include "chartparser/legend.hpp"
#include "chartparser/ocr.hpp"
#include "chartparser/output.hpp"
#include "chartparser/raster.hpp"
#include "chartparser/serialize.hpp"
#include "chartparser/ticklabel.hpp"

namespace chartparser {

/// Every tunable of the extraction pipeline.
struct PipelineConfig {
    int binarize_threshold = kDefaultBinarizeThreshold;
    int axis_band = kDefaultAxisBand;
    int merge_gap = kDefaultMergeGap;
    int align_tolerance = kDefaultAlignTolerance;
    int color_tolerance = kDefaultColorTolerance;
    int cluster_cap = kDefaultClusterCap;
    long min_bar_area = kDefaultMinBarArea;
};

inline constexpr const char* kNoLegendSeriesName = "value";

struct Warning {
    ErrorCode code;
    std::string detail;
};

/// Everything a pipeline run found, kept even when a later stage failed so
/// each component can be scored on its own.
struct Extraction {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::vector<TextBox> ocr_boxes;
    std::optional<AxesGeometry> axes;
    std::optional<TickSet> x_ticks;
    std::optional<TickSet> y_ticks;
    std::optional<AxisLabel> x_label;
    std::optional<AxisLabel> y_label;
    LegendSet legend;
    std::optional<Orientation> orientation;
    std::optional<ValueMap> value_map;
    std::vector<BarRect> bars;
    std::optional<ChartTable> table;
    std::vector<Warning> warnings;
    std::optional<Warning> error;

    bool ok() const { return !error.has_value() && table.has_value(); }
};

namespace detail {

inline LegendSet detect_legend(const Raster& img, const std::vector<TextBox>& boxes, const Extraction& ex,
                               const BBox& plot, const PipelineConfig& cfg, std::vector<Warning>& warnings) {
    LegendSet legend;
    const auto candidates =
        prune_non_legend(boxes, *ex.x_ticks, *ex.y_ticks, ex.x_label, ex.y_label, axes_frame(*ex.axes));
    const auto merged = merge_words(candidates, cfg.merge_gap);
    LegendGroup group;
    try {
        group = group_aligned(merged, plot, cfg.align_tolerance);
    } catch (const Error& e) {
        warnings.push_back({e.code(), "single series assumed"});
        return legend;
    }
    legend.orientation = group.orientation;
    for (const auto& name : group.members) {
        try {
            const Swatch sw = estimate_swatch_color(img, name.bbox, cfg.color_tolerance);
            legend.entries.push_back({name.text, name.bbox, sw.box, sw.color});
        } catch (const Error& e) {
            warnings.push_back({e.code(), "dropped legend candidate \"" + name.text + "\""});
        }
    }
    if (legend.entries.empty()) warnings.push_back({ErrorCode::NoLegendFound, "single series assumed"});
    make_names_unique(legend.entries);
    return legend;
}

}  // namespace detail

/**
 * Runs the full extraction on one chart: axes, ticks, labels, legend, bar
 * decomposition and value mapping. Failures are recorded in the returned
 * record rather than thrown.
 */
inline Extraction parse_chart(const Raster& img, const std::vector<TextBox>& boxes, const std::string& image_id,
                              const PipelineConfig& cfg = {}) {
    Extraction ex;
    ex.image_id = image_id;
    ex.width = img.width();
    ex.height = img.height();
    ex.ocr_boxes = boxes;
    try {
        const auto bin = binarize(img, cfg.binarize_threshold);
        ex.axes = detect_axes(run_profiles(bin), cfg.axis_band);
        const AxesGeometry& axes = *ex.axes;
        const BBox plot = plot_region(axes, img.width(), img.height());

        auto [xt, yt] = detect_ticks(boxes, axes, img.height());
        ex.x_ticks = std::move(xt);
        ex.y_ticks = std::move(yt);
        auto [xl, yl] = detect_axis_labels(boxes, axes, *ex.x_ticks, *ex.y_ticks, img.height());
        ex.x_label = std::move(xl);
        ex.y_label = std::move(yl);

        ex.legend = detail::detect_legend(img, boxes, ex, plot, cfg, ex.warnings);
        std::vector<SeriesInfo> series;
        for (const auto& e : ex.legend.entries) series.push_back({e.name, e.color});
        if (series.empty()) {
            const auto color = dominant_color(img, plot, cfg.cluster_cap);
            if (!color) throw Error(ErrorCode::EmptyChart, "plot region holds no colored pixels");
            series.push_back({kNoLegendSeriesName, *color});
        }

        const Raster cleaned = whiten_legend(img, ex.legend, cfg.color_tolerance);
        std::vector<Rgb> seeds;
        for (const auto& s : series) seeds.push_back(s.color);
        const auto masks = cluster_pixels(cleaned, seeds, plot, cfg.cluster_cap);
        for (std::size_t s = 0; s < masks.size(); ++s) {
            auto found = extract_bars(masks[s], series[s].name, Orientation::Vertical, cfg.min_bar_area);
            ex.bars.insert(ex.bars.end(), found.begin(), found.end());
        }

        ex.orientation = detect_orientation(ex.bars, *ex.x_ticks, *ex.y_ticks);
        for (auto& b : ex.bars) b.category_anchor = category_anchor(b.rect, *ex.orientation);
        const bool vertical = *ex.orientation == Orientation::Vertical;
        const TickSet& value_ticks = vertical ? *ex.y_ticks : *ex.x_ticks;
        const TickSet& category_ticks = vertical ? *ex.x_ticks : *ex.y_ticks;
        ex.value_map = value_tick_ratio(value_ticks, axes);

        std::vector<std::string> names;
        for (const auto& s : series) names.push_back(s.name);
        const auto cells = associate_categories(ex.bars, names, category_ticks, *ex.value_map, axes, *ex.orientation);
        // Table labels follow the table's shape: categories, then values.
        ex.table = vertical ? assemble_table(ex.x_label, ex.y_label, series, category_ticks, cells)
                            : assemble_table(ex.y_label, ex.x_label, series, category_ticks, cells);
    } catch (const Error& e) {
        ex.error = Warning{e.code(), e.detail()};
    }
    return ex;
}

inline std::string_view orientation_name(Orientation o) {
    return o == Orientation::Vertical ? "vertical" : "horizontal";
}

inline std::optional<ErrorCode> error_code_from_name(std::string_view name) {
    for (int c = 0; c <= int(ErrorCode::CorpusMismatch); ++c)
        if (code_name(ErrorCode(c)) == name) return ErrorCode(c);
    return std::nullopt;
}

inline nlohmann::ordered_json extraction_to_json(const Extraction& ex) {
    using json_io::ojson;
    ojson j;
    j["image_id"] = ex.image_id;
    j["width"] = ex.width;
    j["height"] = ex.height;
    j["status"] = ex.ok() ? "ok" : "error";
    if (ex.error) {
        j["error"] = {{"code", code_name(ex.error->code)}, {"detail", ex.error->detail}};
    } else {
        j["error"] = nullptr;
    }
    auto warnings = ojson::array();
    for (const auto& w : ex.warnings) warnings.push_back({{"code", code_name(w.code)}, {"detail", w.detail}});
    j["warnings"] = std::move(warnings);
    j["axes"] = ex.axes ? json_io::axes(*ex.axes) : ojson(nullptr);
    j["orientation"] = ex.orientation ? ojson(orientation_name(*ex.orientation)) : ojson(nullptr);
    if (ex.value_map) {
        j["value_map"] = {{"alpha", ex.value_map->alpha},
                          {"axis_value_at_origin", ex.value_map->axis_value_at_origin},
                          {"tick_count", ex.value_map->tick_count}};
    } else {
        j["value_map"] = nullptr;
    }
    j["x_ticks"] = ex.x_ticks ? json_io::ticks(*ex.x_ticks) : ojson(nullptr);
    j["y_ticks"] = ex.y_ticks ? json_io::ticks(*ex.y_ticks) : ojson(nullptr);
    j["x_label"] = json_io::label(ex.x_label);
    j["y_label"] = json_io::label(ex.y_label);
    j["legend"] = json_io::legend(ex.legend.entries);
    auto bars = ojson::array();
    for (const auto& b : ex.bars) bars.push_back({{"series", b.series}, {"rect", json_io::bbox(b.rect)}});
    j["bars"] = std::move(bars);
    j["table"] = ex.table ? ojson::parse(to_json(*ex.table).bytes) : ojson(nullptr);
    j["ocr_boxes"] = box_list_to_json(ex.ocr_boxes);
    return j;
}

inline Extraction extraction_from_json(const nlohmann::json& j) {
    try {
        Extraction ex;
        ex.image_id = j.at("image_id").get<std::string>();
        ex.width = j.at("width").get<int>();
        ex.height = j.at("height").get<int>();
        auto code_of = [](const nlohmann::json& w) {
            return error_code_from_name(w.at("code").get<std::string>()).value_or(ErrorCode::MalformedResponse);
        };
        if (!j.at("error").is_null())
            ex.error = Warning{code_of(j["error"]), j["error"].at("detail").get<std::string>()};
        for (const auto& w : j.at("warnings")) ex.warnings.push_back({code_of(w), w.at("detail").get<std::string>()});
        if (!j.at("axes").is_null()) ex.axes = json_io::axes(j["axes"]);
        if (!j.at("orientation").is_null())
            ex.orientation = j["orientation"] == "vertical" ? Orientation::Vertical : Orientation::Horizontal;
        if (!j.at("value_map").is_null()) {
            const auto& v = j["value_map"];
            ex.value_map = ValueMap{v.at("alpha").get<double>(), v.at("axis_value_at_origin").get<double>(),
                                    v.at("tick_count").get<int>(), Axis::Y};
        }
        if (!j.at("x_ticks").is_null()) ex.x_ticks = json_io::ticks(j["x_ticks"], Axis::X);
        if (!j.at("y_ticks").is_null()) ex.y_ticks = json_io::ticks(j["y_ticks"], Axis::Y);
        ex.x_label = json_io::label(j.at("x_label"), Axis::X);
        ex.y_label = json_io::label(j.at("y_label"), Axis::Y);
        ex.legend.entries = json_io::legend(j.at("legend"));
        for (const auto& b : j.at("bars")) ex.bars.push_back({b.at("series").get<std::string>(), json_io::bbox(b.at("rect")), 0.0});
        if (!j.at("table").is_null()) ex.table = table_from_json(j["table"]);
        ex.ocr_boxes = parse_box_list(j.at("ocr_boxes"));
        return ex;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedResponse, std::string("extraction record: ") + e.what());
    }
}

}  // namespace chartparser

#endif
