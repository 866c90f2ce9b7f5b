#ifndef CHARTPARSER_SYNTHGEN_HPP
#define CHARTPARSER_SYNTHGEN_HPP

/*
 * Deterministic bar-chart renderer with exact ground truth.
 *
 * Layout rules (all in pixels, origin top-left):
 *   - Text is drawn as block glyphs: every character is a solid
 *     char_width x line_height block of kTextInk; words are separated by one
 *     character cell. A word's box is exactly its block.
 *   - Axes are 1 px black lines meeting at (y_axis_col, x_axis_row).
 *   - Value-axis ticks are kTickLength marks outside the plot, spaced
 *     tick_spacing apart starting at the axis line. Tick labels are centered
 *     on their tick and start kTickLength + kTickLabelGap from the axis.
 *   - Category slots are slot_width wide, one per category; bars fill 60% of
 *     the slot, centered. Grouped series split that width evenly; stacked
 *     series share it and stack away from the axis in series order.
 *   - A bar of value v extends round(v / alpha) pixels from the axis, where
 *     alpha = tick_step / tick_spacing.
 *   - The value-axis label (or category-axis label) below the x-axis starts
 *     kLabelGap under the tick labels; the label left of the y-axis is a
 *     stack of words, kLineGap apart, centered on the plot height.
 *   - Legend swatches are kSwatchSize squares with the name kSwatchTextGap to
 *     their right. A right legend starts kLegendPlotGap past the x-axis end,
 *     one entry every kLegendRowPitch rows; a top legend runs left to right
 *     above the plot with kLegendEntryGap between entries.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartparser/axes.hpp"
#include "chartparser/bars.hpp"
#include "chartparser/error.hpp"
#include "chartparser/image_io.hpp"
#include "chartparser/legend.hpp"
#include "chartparser/ocr.hpp"
#include "chartparser/pipeline.hpp"
#include "chartparser/raster.hpp"
#include "chartparser/serialize.hpp"
#include "chartparser/ticklabel.hpp"

namespace chartparser::synth {

inline constexpr int kMargin = 10;
inline constexpr int kTickLength = 4;
inline constexpr int kTickLabelGap = 3;
inline constexpr int kLabelGap = 8;
inline constexpr int kLineGap = 4;
inline constexpr int kSwatchSize = 12;
inline constexpr int kSwatchTextGap = 4;
inline constexpr int kLegendEntryGap = 40;
inline constexpr int kLegendRowPitch = 20;
inline constexpr int kLegendPlotGap = 30;
inline constexpr int kTopLegendClearance = 16;
inline constexpr double kBarFill = 0.6;
inline constexpr int kMinBarThickness = 6;
inline constexpr Rgb kTextInk{50, 50, 50};
inline constexpr Rgb kAxisInk{0, 0, 0};

/// splitmix64; integer-only helpers so corpora are identical on every
/// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    int uniform_int(int lo, int hi) { return lo + int(next() % std::uint64_t(hi - lo + 1)); }
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    bool chance(double p) { return uniform01() < p; }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next() % i]);
    }

private:
    std::uint64_t state_;
};

enum class Variant { Vertical, Horizontal, StackedVertical, StackedHorizontal };
enum class LegendPlacement { Right, Top };

inline bool is_vertical(Variant v) { return v == Variant::Vertical || v == Variant::StackedVertical; }
inline bool is_stacked(Variant v) { return v == Variant::StackedVertical || v == Variant::StackedHorizontal; }

inline std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::Vertical: return "vertical";
        case Variant::Horizontal: return "horizontal";
        case Variant::StackedVertical: return "stacked-vertical";
        case Variant::StackedHorizontal: return "stacked-horizontal";
    }
    return "";
}

inline std::optional<Variant> variant_from_name(std::string_view s) {
    for (auto v : {Variant::Vertical, Variant::Horizontal, Variant::StackedVertical, Variant::StackedHorizontal})
        if (variant_name(v) == s) return v;
    return std::nullopt;
}

struct FontMetrics {
    int char_width = 6;
    int line_height = 12;
};

struct SeriesSpec {
    std::string name;
    Rgb color;
    std::vector<double> values;  // one per category
};

struct ChartSpec {
    Variant variant = Variant::Vertical;
    std::vector<std::string> categories;
    std::vector<SeriesSpec> series;
    int width = 480;
    int height = 360;
    double tick_step = 10.0;
    FontMetrics font;
    LegendPlacement legend_placement = LegendPlacement::Right;
    bool show_legend = true;
    std::string value_label;     // empty: no label
    std::string category_label;  // empty: no label
    std::string tick_suffix;     // appended to value tick text, e.g. "%"
    bool thousands_separator = false;
    std::uint64_t rng_seed = 0;
};

struct GroundTruthBar {
    std::string series;
    std::string category;
    double value = 0.0;
    BBox rect;
};

struct GroundTruth {
    std::string image_id;
    int width = 0;
    int height = 0;
    Variant variant = Variant::Vertical;
    AxesGeometry axes;
    double alpha = 0.0;
    TickSet x_ticks{Axis::X, {}, {}};
    TickSet y_ticks{Axis::Y, {}, {}};
    std::optional<AxisLabel> x_label;
    std::optional<AxisLabel> y_label;
    std::vector<LegendEntry> legend;
    std::vector<std::string> categories;
    std::vector<std::string> series;
    std::vector<GroundTruthBar> bars;
    std::vector<TextBox> text_boxes;
};

struct RenderedChart {
    Raster raster;
    GroundTruth truth;
    std::vector<TextBox> fixture;  // OCR fixture entry for this image
};

namespace detail {

inline int text_width(const std::string& s, const FontMetrics& f) { return int(s.size()) * f.char_width; }

inline std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : s) {
        if (c == ' ') {
            if (!cur.empty()) words.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    return words;
}

/// Draws a phrase on one line starting at (x, y); returns its word boxes.
inline std::vector<TextBox> draw_phrase(Raster& img, int x, int y, const std::string& phrase, const FontMetrics& f) {
    std::vector<TextBox> boxes;
    int cursor = x;
    for (const auto& word : split_words(phrase)) {
        const BBox box{cursor, y, text_width(word, f), f.line_height};
        img.fill_rect(box, kTextInk);
        boxes.push_back({word, box, 1.0});
        cursor += box.w + f.char_width;
    }
    return boxes;
}

inline int phrase_width(const std::string& phrase, const FontMetrics& f) {
    const auto words = split_words(phrase);
    int w = 0;
    for (const auto& word : words) w += text_width(word, f);
    return w + (words.empty() ? 0 : int(words.size() - 1) * f.char_width);
}

inline int max_word_width(const std::string& phrase, const FontMetrics& f) {
    int w = 0;
    for (const auto& word : split_words(phrase)) w = std::max(w, text_width(word, f));
    return w;
}

inline int stack_height(const std::string& phrase, const FontMetrics& f) {
    const auto n = int(split_words(phrase).size());
    return n == 0 ? 0 : n * f.line_height + (n - 1) * kLineGap;
}

inline std::string group_thousands(std::string digits) {
    const bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    std::string out;
    const int n = int(digits.size());
    for (int i = 0; i < n; ++i) {
        out += digits[i];
        if ((n - 1 - i) % 3 == 0 && i != n - 1) out += ',';
    }
    return neg ? "-" + out : out;
}

/// Decimal places needed to print multiples of `step` exactly (at most 3).
inline int step_decimals(double step) {
    for (int d = 0; d < 3; ++d) {
        const double scaled = step * std::pow(10.0, d);
        if (std::abs(scaled - std::round(scaled)) < 1e-9) return d;
    }
    return 3;
}

}  // namespace detail

inline std::string format_tick(double value, const ChartSpec& spec) {
    const int decimals = detail::step_decimals(spec.tick_step);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s = buf;
    if (spec.thousands_separator) {
        const auto dot = s.find('.');
        s = detail::group_thousands(s.substr(0, dot)) + (dot == std::string::npos ? "" : s.substr(dot));
    }
    return s + spec.tick_suffix;
}

/// Largest total any category reaches on the value axis.
inline double value_extent(const ChartSpec& spec) {
    double extent = 0.0;
    for (std::size_t c = 0; c < spec.categories.size(); ++c) {
        double total = 0.0;
        for (const auto& s : spec.series) {
            const double v = c < s.values.size() ? s.values[c] : 0.0;
            total = is_stacked(spec.variant) ? total + v : std::max(total, v);
        }
        extent = std::max(extent, total);
    }
    return extent;
}

inline int tick_intervals(const ChartSpec& spec) {
    return std::max(2, int(std::ceil(value_extent(spec) / spec.tick_step - 1e-9)));
}

/// Geometry the renderer derives from a spec and its canvas.
struct Layout {
    int y_axis_col = 0;
    int x_axis_row = 0;
    int axis_top = 0;    // topmost row of the y-axis line
    int axis_right = 0;  // rightmost column of the x-axis line
    int slot = 0;
    int tick_spacing = 0;
    int intervals = 0;
    std::vector<std::string> tick_texts;
};

namespace detail {

struct Extents {
    int left = 0;           // y_axis_col
    int top = 0;            // axis_top
    int below_axis = 0;     // rows needed under the x-axis row, incl. margin
    int right_of_axis = 0;  // columns needed right of axis_right, incl. margin
    int min_slot = 0;
    int min_spacing = 0;
    int legend_top_width = 0;
};

inline Extents layout_extents(const ChartSpec& spec, const std::vector<std::string>& tick_texts) {
    const FontMetrics& f = spec.font;
    const bool vertical = is_vertical(spec.variant);
    const bool legend = spec.show_legend && !spec.series.empty();
    const std::string& left_label = vertical ? spec.value_label : spec.category_label;
    const std::string& bottom_label = vertical ? spec.category_label : spec.value_label;

    int tick_w = 0;
    for (const auto& t : tick_texts) tick_w = std::max(tick_w, text_width(t, f));
    int cat_w = 0;
    for (const auto& c : spec.categories) cat_w = std::max(cat_w, phrase_width(c, f));

    Extents e;
    const int left_tick_w = vertical ? tick_w : cat_w;
    const int label_w = left_label.empty() ? 0 : max_word_width(left_label, f) + kLabelGap;
    e.left = kMargin + label_w + left_tick_w + kTickLabelGap + kTickLength;

    const bool top_legend = legend && spec.legend_placement == LegendPlacement::Top;
    e.top = top_legend ? kMargin + kSwatchSize + kTopLegendClearance : kMargin + f.line_height / 2;

    e.below_axis = kTickLength + kTickLabelGap + f.line_height +
                   (bottom_label.empty() ? 0 : kLabelGap + f.line_height) + kMargin + 1;

    int name_w = 0;
    for (const auto& s : spec.series) name_w = std::max(name_w, phrase_width(s.name, f));
    const int right_legend = (legend && spec.legend_placement == LegendPlacement::Right)
                                 ? kLegendPlotGap + kSwatchSize + kSwatchTextGap + name_w
                                 : 0;
    const int tick_overhang = vertical ? 0 : tick_w / 2;
    e.right_of_axis = std::max(right_legend, tick_overhang) + kMargin + 1;

    const int nser = int(spec.series.size());
    const int per_bar = is_stacked(spec.variant) ? 1 : std::max(nser, 1);
    const int bar_slot = int(std::ceil(per_bar * kMinBarThickness / kBarFill)) + 2;
    if (vertical) {
        e.min_slot = std::max(cat_w + 6, bar_slot);
        e.min_spacing = f.line_height + 6;
    } else {
        e.min_slot = std::max(f.line_height + 6, bar_slot);
        e.min_spacing = tick_w + 8;
    }
    e.min_slot += e.min_slot % 2;

    if (top_legend) {
        int w = 0;
        for (const auto& s : spec.series)
            w += kSwatchSize + kSwatchTextGap + phrase_width(s.name, f) + kLegendEntryGap;
        e.legend_top_width = w - kLegendEntryGap;
    }
    return e;
}

}  // namespace detail

inline int right_legend_height(const ChartSpec& spec) {
    const int n = int(spec.series.size());
    return n == 0 ? 0 : (n - 1) * kLegendRowPitch + kSwatchSize;
}

/// Throws SpecTooLarge when the canvas cannot hold the chart.
inline Layout compute_layout(const ChartSpec& spec) {
    if (spec.categories.empty() || spec.series.empty())
        throw Error(ErrorCode::SpecTooLarge, "spec needs at least one category and one series");
    if (!(spec.tick_step > 0.0)) throw Error(ErrorCode::SpecTooLarge, "tick step must be positive");
    Layout L;
    L.intervals = tick_intervals(spec);
    for (int k = 0; k <= L.intervals; ++k) L.tick_texts.push_back(format_tick(k * spec.tick_step, spec));
    const auto e = detail::layout_extents(spec, L.tick_texts);
    const int ncat = int(spec.categories.size());

    L.y_axis_col = e.left;
    L.axis_top = e.top;
    const int avail_w = spec.width - e.left - e.right_of_axis;
    const int avail_h = spec.height - e.top - e.below_axis;
    if (is_vertical(spec.variant)) {
        L.slot = avail_w / ncat;
        L.slot -= L.slot % 2;
        L.tick_spacing = avail_h / L.intervals;
        L.axis_right = L.y_axis_col + ncat * L.slot;
        L.x_axis_row = L.axis_top + L.intervals * L.tick_spacing;
    } else {
        L.slot = avail_h / ncat;
        L.slot -= L.slot % 2;
        L.tick_spacing = avail_w / L.intervals;
        L.axis_right = L.y_axis_col + L.intervals * L.tick_spacing;
        L.x_axis_row = L.axis_top + ncat * L.slot;
    }
    if (L.slot < e.min_slot || L.tick_spacing < e.min_spacing)
        throw Error(ErrorCode::SpecTooLarge, "canvas " + std::to_string(spec.width) + "x" +
                                                 std::to_string(spec.height) + " too small (slot " +
                                                 std::to_string(L.slot) + "/" + std::to_string(e.min_slot) +
                                                 ", tick spacing " + std::to_string(L.tick_spacing) + "/" +
                                                 std::to_string(e.min_spacing) + ")");
    if (e.legend_top_width > 0 && L.y_axis_col + 10 + e.legend_top_width > spec.width - kMargin)
        throw Error(ErrorCode::SpecTooLarge, "top legend does not fit the canvas width");
    // A right legend must end above the x-axis, or its last names read as ticks.
    if (spec.show_legend && spec.legend_placement == LegendPlacement::Right &&
        L.axis_top + right_legend_height(spec) > L.x_axis_row)
        throw Error(ErrorCode::SpecTooLarge, "right legend is taller than the plot");
    return L;
}

/// Smallest canvas giving the requested slot width and tick spacing.
inline std::pair<int, int> canvas_for(const ChartSpec& spec, int slot, int tick_spacing) {
    std::vector<std::string> texts;
    const int intervals = tick_intervals(spec);
    for (int k = 0; k <= intervals; ++k) texts.push_back(format_tick(k * spec.tick_step, spec));
    const auto e = detail::layout_extents(spec, texts);
    slot = std::max(slot, e.min_slot);
    slot += slot % 2;
    tick_spacing = std::max(tick_spacing, e.min_spacing);
    const int ncat = int(spec.categories.size());
    int w, h;
    if (is_vertical(spec.variant)) {
        w = e.left + ncat * slot + e.right_of_axis;
        h = e.top + intervals * tick_spacing + e.below_axis;
    } else {
        w = e.left + intervals * tick_spacing + e.right_of_axis;
        h = e.top + ncat * slot + e.below_axis;
    }
    if (e.legend_top_width > 0) w = std::max(w, e.left + 10 + e.legend_top_width + kMargin);
    if (spec.show_legend && spec.legend_placement == LegendPlacement::Right) {
        const int plot_h = is_vertical(spec.variant) ? intervals * tick_spacing : ncat * slot;
        const int need = right_legend_height(spec);
        if (plot_h < need) {
            if (is_vertical(spec.variant)) {
                h += intervals * ((need + intervals - 1) / intervals) - plot_h;
            } else {
                int grown = (need + ncat - 1) / ncat;
                grown += grown % 2;
                h += ncat * grown - plot_h;
            }
        }
    }
    return {w, h};
}

inline std::vector<Rgb> distinct_colors(const ChartSpec& spec) {
    std::vector<Rgb> out;
    for (const auto& s : spec.series) out.push_back(s.color);
    return out;
}

/// Renders `spec` and returns the raster with its ground truth. The image id
/// of the truth is left empty for the caller to fill.
inline RenderedChart render(const ChartSpec& spec) {
    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        if (spec.series[i].values.size() != spec.categories.size())
            throw Error(ErrorCode::SpecTooLarge, "series \"" + spec.series[i].name + "\" needs one value per category");
        for (double v : spec.series[i].values)
            if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::SpecTooLarge, "values must be finite and >= 0");
    }
    const Layout L = compute_layout(spec);
    const FontMetrics& f = spec.font;
    const bool vertical = is_vertical(spec.variant);
    const bool stacked = is_stacked(spec.variant);
    const int ncat = int(spec.categories.size());
    const int nser = int(spec.series.size());
    const double alpha = spec.tick_step / L.tick_spacing;

    Raster img(spec.width, spec.height);
    GroundTruth gt;
    gt.width = spec.width;
    gt.height = spec.height;
    gt.variant = spec.variant;
    gt.alpha = alpha;
    gt.categories = spec.categories;
    std::vector<TextBox> texts;

    // Axes and value ticks.
    img.fill_rect({L.y_axis_col, L.axis_top, 1, L.x_axis_row - L.axis_top + 1}, kAxisInk);
    img.fill_rect({L.y_axis_col, L.x_axis_row, L.axis_right - L.y_axis_col + 1, 1}, kAxisInk);
    std::vector<TextBox> value_tick_boxes, category_tick_boxes;
    const int label_offset = kTickLength + kTickLabelGap;
    for (int k = 0; k <= L.intervals; ++k) {
        const std::string& t = L.tick_texts[std::size_t(k)];
        const int tw = detail::text_width(t, f);
        if (vertical) {
            const int row = L.x_axis_row - k * L.tick_spacing;
            img.fill_rect({L.y_axis_col - kTickLength, row, kTickLength, 1}, kAxisInk);
            auto b = detail::draw_phrase(img, L.y_axis_col - label_offset - tw, row - f.line_height / 2, t, f);
            value_tick_boxes.push_back(b.front());
        } else {
            const int col = L.y_axis_col + k * L.tick_spacing;
            img.fill_rect({col, L.x_axis_row + 1, 1, kTickLength}, kAxisInk);
            auto b = detail::draw_phrase(img, col - tw / 2, L.x_axis_row + label_offset, t, f);
            value_tick_boxes.push_back(b.front());
        }
    }

    // Category ticks.
    std::vector<int> centers;
    for (int c = 0; c < ncat; ++c) {
        const std::string& name = spec.categories[std::size_t(c)];
        const int tw = detail::phrase_width(name, f);
        if (vertical) {
            const int center = L.y_axis_col + c * L.slot + L.slot / 2;
            centers.push_back(center);
            auto b = detail::draw_phrase(img, center - tw / 2, L.x_axis_row + label_offset, name, f);
            category_tick_boxes.insert(category_tick_boxes.end(), b.begin(), b.end());
        } else {
            const int center = L.axis_top + c * L.slot + L.slot / 2;
            centers.push_back(center);
            auto b = detail::draw_phrase(img, L.y_axis_col - label_offset - tw, center - f.line_height / 2, name, f);
            category_tick_boxes.insert(category_tick_boxes.end(), b.begin(), b.end());
        }
    }

    // Bars.
    const int fill = int(L.slot * kBarFill);
    const int thickness = stacked ? fill : fill / nser;
    for (int c = 0; c < ncat; ++c) {
        int stack_offset = 0;
        const int group_start = centers[std::size_t(c)] - (stacked ? thickness : thickness * nser) / 2;
        for (int s = 0; s < nser; ++s) {
            const double v = spec.series[std::size_t(s)].values[std::size_t(c)];
            const int extent = int(std::lround(v / alpha));
            const int across = stacked ? group_start : group_start + s * thickness;
            BBox rect;
            if (vertical)
                rect = {across, L.x_axis_row - stack_offset - extent, thickness, extent};
            else
                rect = {L.y_axis_col + 1 + stack_offset, across, extent, thickness};
            if (stacked) stack_offset += extent;
            if (extent > 0) img.fill_rect(rect, spec.series[std::size_t(s)].color);
            gt.bars.push_back({spec.show_legend ? spec.series[std::size_t(s)].name : std::string(kNoLegendSeriesName),
                               spec.categories[std::size_t(c)], v, rect});
        }
    }

    // Axis labels.
    const std::string& left_label = vertical ? spec.value_label : spec.category_label;
    const std::string& bottom_label = vertical ? spec.category_label : spec.value_label;
    std::vector<TextBox> bottom_boxes, left_boxes;
    if (!bottom_label.empty()) {
        const int pw = detail::phrase_width(bottom_label, f);
        const int center = (L.y_axis_col + L.axis_right) / 2;
        bottom_boxes = detail::draw_phrase(img, center - pw / 2,
                                           L.x_axis_row + label_offset + f.line_height + kLabelGap, bottom_label, f);
    }
    if (!left_label.empty()) {
        const int column_center = kMargin + detail::max_word_width(left_label, f) / 2;
        int y = (L.axis_top + L.x_axis_row) / 2 - detail::stack_height(left_label, f) / 2;
        for (const auto& word : detail::split_words(left_label)) {
            const int ww = detail::text_width(word, f);
            auto b = detail::draw_phrase(img, column_center - ww / 2, y, word, f);
            left_boxes.push_back(b.front());
            y += f.line_height + kLineGap;
        }
    }

    // Legend.
    std::vector<TextBox> legend_boxes;
    if (spec.show_legend) {
        int x = spec.legend_placement == LegendPlacement::Top ? L.y_axis_col + 10 : L.axis_right + kLegendPlotGap;
        int y = spec.legend_placement == LegendPlacement::Top ? kMargin : L.axis_top;
        for (const auto& s : spec.series) {
            const BBox swatch{x, y, kSwatchSize, kSwatchSize};
            img.fill_rect(swatch, s.color);
            const int name_x = x + kSwatchSize + kSwatchTextGap;
            const int name_y = y + (kSwatchSize - f.line_height) / 2;
            auto words = detail::draw_phrase(img, name_x, name_y, s.name, f);
            BBox name_box = words.front().bbox;
            for (const auto& w : words) name_box = bbox_union(name_box, w.bbox);
            gt.legend.push_back({s.name, name_box, swatch, s.color});
            legend_boxes.insert(legend_boxes.end(), words.begin(), words.end());
            if (spec.legend_placement == LegendPlacement::Top)
                x = name_box.right() + kLegendEntryGap;
            else
                y += kLegendRowPitch;
        }
        for (const auto& s : spec.series) gt.series.push_back(s.name);
    } else {
        gt.series.push_back(kNoLegendSeriesName);
    }

    // Ground truth assembly.
    const auto profile = run_profiles(binarize(img));
    gt.axes.y_axis_col = L.y_axis_col;
    gt.axes.x_axis_row = L.x_axis_row;
    gt.axes.y_axis_extent = {profile.col_run_start[std::size_t(L.y_axis_col)],
                             profile.col_run_start[std::size_t(L.y_axis_col)] +
                                 profile.col_max_run[std::size_t(L.y_axis_col)] - 1};
    gt.axes.x_axis_extent = {profile.row_run_start[std::size_t(L.x_axis_row)],
                             profile.row_run_start[std::size_t(L.x_axis_row)] +
                                 profile.row_max_run[std::size_t(L.x_axis_row)] - 1};

    auto& x_tick_boxes = vertical ? category_tick_boxes : value_tick_boxes;
    auto& y_tick_boxes = vertical ? value_tick_boxes : category_tick_boxes;
    gt.x_ticks = parse_tick_values(make_tick_set(Axis::X, x_tick_boxes));
    gt.y_ticks = parse_tick_values(make_tick_set(Axis::Y, y_tick_boxes));
    if (!bottom_boxes.empty()) gt.x_label = make_axis_label(Axis::X, bottom_boxes);
    if (!left_boxes.empty()) gt.y_label = make_axis_label(Axis::Y, left_boxes);

    for (const auto* group : {&y_tick_boxes, &x_tick_boxes, &left_boxes, &bottom_boxes, &legend_boxes})
        texts.insert(texts.end(), group->begin(), group->end());
    gt.text_boxes = texts;
    return {std::move(img), std::move(gt), std::move(texts)};
}

/// Bounded per-channel jitter in [-k, k], seeded. With `antialias`, pixels on
/// a color edge are additionally blended with their 4-neighbourhood.
inline Raster perturb(const Raster& img, int k, std::uint64_t seed, bool antialias = false) {
    if (k < 0 || k > 10) throw std::invalid_argument("jitter bound must lie in [0, 10]");
    Raster out = img;
    if (antialias) {
        for (int y = 1; y + 1 < img.height(); ++y) {
            for (int x = 1; x + 1 < img.width(); ++x) {
                const Rgb c = img.at(x, y);
                const Rgb n[4] = {img.at(x - 1, y), img.at(x + 1, y), img.at(x, y - 1), img.at(x, y + 1)};
                if (std::all_of(std::begin(n), std::end(n), [&](Rgb o) { return o == c; })) continue;
                int s[3] = {4 * c.r, 4 * c.g, 4 * c.b};
                for (const Rgb& o : n) {
                    s[0] += o.r;
                    s[1] += o.g;
                    s[2] += o.b;
                }
                out.set(x, y, {std::uint8_t((s[0] + 4) / 8), std::uint8_t((s[1] + 4) / 8), std::uint8_t((s[2] + 4) / 8)});
            }
        }
    }
    if (k == 0) return out;
    Rng rng(seed);
    auto jitter = [&](std::uint8_t v) {
        const int d = int(rng.next() % std::uint64_t(2 * k + 1)) - k;
        return std::uint8_t(std::clamp(int(v) + d, 0, 255));
    };
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            const Rgb c = out.at(x, y);
            out.set(x, y, {jitter(c.r), jitter(c.g), jitter(c.b)});
        }
    return out;
}

/// Returns a description of the first violated ground-truth invariant, or
/// nothing when the record is self-consistent.
inline std::optional<std::string> check_ground_truth(const GroundTruth& gt) {
    auto inside = [&](const BBox& b) { return b.x >= 0 && b.y >= 0 && b.right() <= gt.width && b.bottom() <= gt.height; };
    if (!(gt.alpha > 0.0)) return "alpha must be positive";
    for (const auto& t : gt.text_boxes)
        if (t.text.empty() || !inside(t.bbox) || t.bbox.w < 1 || t.bbox.h < 1) return "text box \"" + t.text + "\" invalid";
    const bool vertical = is_vertical(gt.variant);
    for (const auto& b : gt.bars) {
        const int extent = vertical ? b.rect.h : b.rect.w;
        if (extent != int(std::lround(b.value / gt.alpha)))
            return "bar " + b.series + "/" + b.category + " extent disagrees with its value";
        if (extent > 0 && !inside(b.rect)) return "bar " + b.series + "/" + b.category + " leaves the canvas";
    }
    for (const auto* set : {&gt.x_ticks, &gt.y_ticks})
        for (std::size_t i = 1; i < set->pixel_positions.size(); ++i)
            if (set->pixel_positions[i] <= set->pixel_positions[i - 1]) return "tick anchors not increasing";
    if (gt.bars.size() != gt.categories.size() * gt.series.size()) return "bar count mismatch";
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Corpus generation

namespace pools {
inline const std::vector<std::string> categories = {
    "Alpha", "Beta",  "Gamma", "Delta", "Omega", "Sigma", "ResNet", "VGG",   "BERT",  "GPT",   "CNN",
    "RNN",   "LSTM",  "SVM",   "KNN",   "Jan",   "Feb",   "Mar",    "Apr",   "May",   "Jun",   "Jul",
    "Aug",   "Sep",   "Oct",   "Nov",   "Dec",   "Mon",   "Tue",    "Wed",   "Thu",   "Fri",   "Q1",
    "Q2",    "Q3",    "Q4",    "North", "South", "East",  "West",   "Small", "Large", "Medium"};
inline const std::vector<std::string> series = {
    "Model A",  "Model B",  "Baseline", "Ours",    "Proposed",   "Male",       "Female", "Group 1",
    "Group 2",  "Urban",    "Rural",    "Before",  "After",      "Precision",  "Recall", "Control",
    "Treatment", "Our Method", "Prior Work", "2019", "2020", "Train", "Test"};
inline const std::vector<std::string> value_labels = {
    "Accuracy", "Accuracy (%)", "Score", "F1 Score", "Count", "Number of Papers", "Time (s)", "Revenue",
    "Error Rate (%)"};
inline const std::vector<std::string> category_labels = {
    "Method", "Model", "Dataset", "Month", "Region", "Model Variant", "Day of Week", "Size"};
inline const std::vector<Rgb> palette = {
    {31, 119, 180}, {255, 127, 14}, {44, 160, 44},  {214, 39, 40}, {148, 103, 189}, {140, 86, 75},
    {227, 119, 194}, {127, 127, 127}, {188, 189, 34}, {23, 190, 207}, {0, 0, 139},   {255, 215, 0},
    {0, 128, 128}};
inline const std::vector<double> steps = {0.1, 0.2, 0.5, 1, 2, 5, 10, 20, 25, 50, 100, 1000, 2500};
}  // namespace pools

namespace detail {

inline std::vector<std::string> sample_distinct(Rng& rng, const std::vector<std::string>& pool, int n) {
    auto copy = pool;
    rng.shuffle(copy);
    copy.resize(std::size_t(n));
    return copy;
}

inline std::string sample_label(Rng& rng, const std::vector<std::string>& pool, int max_words) {
    std::vector<std::string> ok;
    for (const auto& l : pool)
        if (int(split_words(l).size()) <= max_words) ok.push_back(l);
    if (ok.empty()) return "";
    return ok[std::size_t(rng.uniform_int(0, int(ok.size()) - 1))];
}

/// Colors pairwise further apart than the clustering cap.
inline std::vector<Rgb> sample_colors(Rng& rng, int n) {
    for (;;) {
        auto pal = pools::palette;
        rng.shuffle(pal);
        std::vector<Rgb> out;
        for (const Rgb& c : pal) {
            if (std::all_of(out.begin(), out.end(), [&](Rgb o) { return squared_distance(o, c) > kDefaultClusterCap; }))
                out.push_back(c);
            if (int(out.size()) == n) return out;
        }
    }
}

inline double quantize(double v, double step) { return std::round(v / step * 100.0) / 100.0 * step; }

}  // namespace detail

/// Pseudo-random spec for corpus entry `index`. Canvas size is derived from
/// sampled slot width and tick spacing, so the spec always fits.
inline ChartSpec random_spec(std::uint64_t seed, int index, Variant variant) {
    Rng rng(seed * 0x9E3779B97F4A7C15ull + std::uint64_t(index) * 0xD1B54A32D192ED03ull + 1);
    ChartSpec spec;
    spec.variant = variant;
    spec.rng_seed = rng.next();
    const int nser = rng.uniform_int(1, 5);
    const int ncat = rng.uniform_int(2, 8);
    spec.categories = detail::sample_distinct(rng, pools::categories, ncat);
    const auto names = detail::sample_distinct(rng, pools::series, nser);
    const auto colors = detail::sample_colors(rng, nser);
    spec.tick_step = pools::steps[std::size_t(rng.uniform_int(0, int(pools::steps.size()) - 1))];
    spec.thousands_separator = spec.tick_step >= 1000;
    spec.tick_suffix = rng.chance(0.2) ? "%" : "";
    const int intervals = rng.uniform_int(3, 6);
    const bool stacked = is_stacked(variant);
    for (int s = 0; s < nser; ++s) {
        SeriesSpec ser{names[std::size_t(s)], colors[std::size_t(s)], {}};
        for (int c = 0; c < ncat; ++c) {
            const double hi = stacked ? std::max(0.5, double(intervals) / nser) : double(intervals);
            ser.values.push_back(detail::quantize(spec.tick_step * rng.uniform(0.4, hi), spec.tick_step));
        }
        spec.series.push_back(std::move(ser));
    }
    spec.legend_placement = rng.chance(0.5) ? LegendPlacement::Right : LegendPlacement::Top;
    spec.show_legend = nser > 1 || rng.chance(0.5);

    const int value_ticks = tick_intervals(spec) + 1;
    if (rng.chance(0.8)) spec.value_label = detail::sample_label(rng, pools::value_labels, value_ticks);
    if (rng.chance(0.8)) spec.category_label = detail::sample_label(rng, pools::category_labels, ncat);

    const int slot = rng.uniform_int(30, 70);
    const int spacing = is_vertical(variant) ? rng.uniform_int(20, 50) : rng.uniform_int(40, 80);
    const auto [w, h] = canvas_for(spec, slot, spacing);
    spec.width = w + rng.uniform_int(0, 3);
    spec.height = h + rng.uniform_int(0, 3);
    return spec;
}

struct CorpusEntry {
    std::string id;
    ChartSpec spec;
    RenderedChart chart;
};

inline std::string corpus_id(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "chart_%04d", index);
    return buf;
}

/// `count` charts; variants are dealt round-robin and then shuffled, so each
/// variant makes up a quarter (±1) of the corpus.
inline std::vector<CorpusEntry> corpus(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("corpus needs at least one chart");
    std::vector<Variant> variants;
    for (int i = 0; i < count; ++i) variants.push_back(Variant(i % 4));
    Rng rng(seed);
    rng.shuffle(variants);
    std::vector<CorpusEntry> out;
    out.reserve(std::size_t(count));
    for (int i = 0; i < count; ++i) {
        CorpusEntry e{corpus_id(i), random_spec(seed, i, variants[std::size_t(i)]), {Raster(1, 1), {}, {}}};
        e.chart = render(e.spec);
        e.chart.truth.image_id = e.id;
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json truth_to_json(const GroundTruth& gt) {
    using json_io::ojson;
    ojson j;
    j["image_id"] = gt.image_id;
    j["width"] = gt.width;
    j["height"] = gt.height;
    j["variant"] = variant_name(gt.variant);
    j["alpha"] = gt.alpha;
    j["axes"] = json_io::axes(gt.axes);
    j["x_ticks"] = json_io::ticks(gt.x_ticks);
    j["y_ticks"] = json_io::ticks(gt.y_ticks);
    j["x_label"] = json_io::label(gt.x_label);
    j["y_label"] = json_io::label(gt.y_label);
    j["legend"] = json_io::legend(gt.legend);
    j["categories"] = gt.categories;
    j["series"] = gt.series;
    auto bars = ojson::array();
    for (const auto& b : gt.bars)
        bars.push_back({{"series", b.series}, {"category", b.category}, {"value", b.value}, {"rect", json_io::bbox(b.rect)}});
    j["bars"] = std::move(bars);
    j["text_boxes"] = box_list_to_json(gt.text_boxes);
    return j;
}

inline GroundTruth truth_from_json(const nlohmann::json& j) {
    try {
        GroundTruth gt;
        gt.image_id = j.at("image_id").get<std::string>();
        gt.width = j.at("width").get<int>();
        gt.height = j.at("height").get<int>();
        gt.variant = variant_from_name(j.at("variant").get<std::string>()).value_or(Variant::Vertical);
        gt.alpha = j.at("alpha").get<double>();
        gt.axes = json_io::axes(j.at("axes"));
        gt.x_ticks = json_io::ticks(j.at("x_ticks"), Axis::X);
        gt.y_ticks = json_io::ticks(j.at("y_ticks"), Axis::Y);
        gt.x_label = json_io::label(j.at("x_label"), Axis::X);
        gt.y_label = json_io::label(j.at("y_label"), Axis::Y);
        gt.legend = json_io::legend(j.at("legend"));
        gt.categories = j.at("categories").get<std::vector<std::string>>();
        gt.series = j.at("series").get<std::vector<std::string>>();
        for (const auto& b : j.at("bars"))
            gt.bars.push_back({b.at("series").get<std::string>(), b.at("category").get<std::string>(),
                               b.at("value").get<double>(), json_io::bbox(b.at("rect"))});
        gt.text_boxes = parse_box_list(j.at("text_boxes"));
        return gt;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedResponse, std::string("ground truth record: ") + e.what());
    }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

/**
 * Writes `<id>.png`, `<id>.truth.json` and `<id>.ocr.json` per chart, plus
 * `ocr_fixture.json` (all charts) and `manifest.json`. A positive `jitter`
 * perturbs the rasters; truth and fixtures are unchanged.
 */
inline void write_corpus(const std::filesystem::path& dir, int count, std::uint64_t seed, int jitter = 0) {
    std::filesystem::create_directories(dir);
    const auto entries = corpus(count, seed);
    std::map<std::string, std::vector<TextBox>> all;
    nlohmann::ordered_json manifest;
    manifest["seed"] = seed;
    manifest["count"] = count;
    manifest["perturb"] = jitter;
    manifest["ocr_fixture"] = "ocr_fixture.json";
    manifest["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        const Raster raster = jitter > 0 ? perturb(e.chart.raster, jitter, e.spec.rng_seed) : e.chart.raster;
        write_png(dir / (e.id + ".png"), raster);
        write_text(dir / (e.id + ".truth.json"), truth_to_json(e.chart.truth).dump(2) + "\n");
        write_text(dir / (e.id + ".ocr.json"), fixture_to_json({{e.id, e.chart.fixture}}).dump(2) + "\n");
        all[e.id] = e.chart.fixture;
        manifest["entries"].push_back({{"id", e.id},
                                       {"image", e.id + ".png"},
                                       {"truth", e.id + ".truth.json"},
                                       {"variant", variant_name(e.spec.variant)}});
    }
    write_text(dir / "ocr_fixture.json", fixture_to_json(all).dump(2) + "\n");
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace chartparser::synth

#endif
