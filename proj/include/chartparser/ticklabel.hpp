#ifndef CHARTPARSER_TICKLABEL_HPP
#define CHARTPARSER_TICKLABEL_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chartparser/axes.hpp"
#include "chartparser/error.hpp"
#include "chartparser/ocr.hpp"

namespace chartparser {

enum class Axis { X, Y };

struct Tick {
    TextBox box;
    std::optional<double> value;
};

/// Ticks of one axis sorted by anchor: x-center for X, y-center for Y.
struct TickSet {
    Axis axis = Axis::X;
    std::vector<Tick> ticks;
    std::vector<double> pixel_positions;

    std::size_t size() const { return ticks.size(); }
    bool empty() const { return ticks.empty(); }

    std::size_t numeric_count() const {
        return std::size_t(std::count_if(ticks.begin(), ticks.end(), [](const Tick& t) { return t.value.has_value(); }));
    }
    /// Every tick carries a value and there are at least two of them.
    bool is_numeric() const { return ticks.size() >= 2 && numeric_count() == ticks.size(); }
};

struct AxisLabel {
    Axis axis = Axis::X;
    std::string text;
    std::vector<TextBox> boxes;
};

inline double anchor(const BBox& b, Axis axis) { return axis == Axis::X ? b.center_x() : b.center_y(); }

/// Sorts by anchor; rejects coincident anchors with NonMonotonicTicks.
inline TickSet make_tick_set(Axis axis, std::vector<TextBox> boxes) {
    std::sort(boxes.begin(), boxes.end(), [axis](const TextBox& a, const TextBox& b) {
        return anchor(a.bbox, axis) < anchor(b.bbox, axis);
    });
    TickSet set;
    set.axis = axis;
    for (auto& b : boxes) {
        const double pos = anchor(b.bbox, axis);
        if (!set.pixel_positions.empty() && pos <= set.pixel_positions.back())
            throw Error(ErrorCode::NonMonotonicTicks, "two ticks share anchor " + std::to_string(pos));
        set.pixel_positions.push_back(pos);
        set.ticks.push_back({std::move(b), std::nullopt});
    }
    return set;
}

/// Boxes below the x-axis and boxes left of the y-axis, judged by box center.
inline std::pair<std::vector<TextBox>, std::vector<TextBox>> filter_candidates(const std::vector<TextBox>& boxes,
                                                                               const AxesGeometry& axes) {
    std::vector<TextBox> xs, ys;
    for (const auto& b : boxes) {
        if (b.bbox.center_y() > axes.x_axis_row) xs.push_back(b);
        if (b.bbox.center_x() < axes.y_axis_col) ys.push_back(b);
    }
    return {xs, ys};
}

enum class SweepDirection { Down, Left };

/// A horizontal line at row r hits rows [y, y+h); a vertical line at column c
/// hits columns [x, x+w).
inline bool sweep_hits(const BBox& b, int pos, SweepDirection dir) {
    return dir == SweepDirection::Down ? (pos >= b.y && pos < b.bottom()) : (pos >= b.x && pos < b.right());
}

/**
 * Moves a line from `start` to `end` (inclusive, one pixel per step) and
 * returns the boxes hit at the position with the most hits. The earliest
 * such position wins ties.
 */
inline std::vector<TextBox> sweep_detect(const std::vector<TextBox>& candidates, int start, int end,
                                         SweepDirection dir) {
    if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "nothing to sweep");
    const int step = start <= end ? 1 : -1;
    int best_pos = start;
    std::size_t best_count = 0;
    for (int pos = start;; pos += step) {
        const auto count = std::size_t(std::count_if(candidates.begin(), candidates.end(),
                                                     [&](const TextBox& b) { return sweep_hits(b.bbox, pos, dir); }));
        if (count > best_count) {
            best_count = count;
            best_pos = pos;
        }
        if (pos == end) break;
    }
    std::vector<TextBox> hit;
    if (best_count == 0) return hit;
    for (const auto& b : candidates)
        if (sweep_hits(b.bbox, best_pos, dir)) hit.push_back(b);
    return hit;
}

/// Numeric reading of a tick string. Commas, '%' and surrounding whitespace
/// are dropped; scientific notation is accepted. Locale independent.
inline std::optional<double> parse_tick_value(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (c != ',' && c != '%') s.push_back(c);
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return std::nullopt;
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline TickSet parse_tick_values(TickSet ticks) {
    for (auto& t : ticks.ticks) t.value = parse_tick_value(t.box.text);
    return ticks;
}

/**
 * X ticks: boxes below the x-axis hit by a line sweeping down from the axis.
 * Y ticks: boxes left of the y-axis hit by a line sweeping left from it.
 * Values are parsed. Throws TooFewTicks unless some axis has two numeric
 * ticks to map values with.
 */
inline std::pair<TickSet, TickSet> detect_ticks(const std::vector<TextBox>& boxes, const AxesGeometry& axes,
                                                int image_height) {
    const auto [xs, ys] = filter_candidates(boxes, axes);
    TickSet x_ticks{Axis::X, {}, {}};
    TickSet y_ticks{Axis::Y, {}, {}};
    if (!xs.empty() && axes.x_axis_row + 1 < image_height)
        x_ticks = parse_tick_values(
            make_tick_set(Axis::X, sweep_detect(xs, axes.x_axis_row + 1, image_height - 1, SweepDirection::Down)));
    if (!ys.empty() && axes.y_axis_col > 0)
        y_ticks = parse_tick_values(
            make_tick_set(Axis::Y, sweep_detect(ys, axes.y_axis_col - 1, 0, SweepDirection::Left)));
    if (x_ticks.numeric_count() < 2 && y_ticks.numeric_count() < 2)
        throw Error(ErrorCode::TooFewTicks, "no axis has two numeric ticks (x: " + std::to_string(x_ticks.size()) +
                                                ", y: " + std::to_string(y_ticks.size()) + ")");
    return {std::move(x_ticks), std::move(y_ticks)};
}

inline AxisLabel make_axis_label(Axis axis, std::vector<TextBox> boxes) {
    std::sort(boxes.begin(), boxes.end(), [axis](const TextBox& a, const TextBox& b) {
        if (axis == Axis::X) return std::pair(a.bbox.x, a.bbox.y) < std::pair(b.bbox.x, b.bbox.y);
        return std::pair(a.bbox.y, a.bbox.x) < std::pair(b.bbox.y, b.bbox.x);
    });
    AxisLabel label{axis, {}, {}};
    for (const auto& b : boxes) {
        if (!label.text.empty()) label.text += ' ';
        label.text += b.text;
    }
    label.boxes = std::move(boxes);
    return label;
}

/**
 * X label: boxes strictly below the lowest X tick, swept downward. Y label:
 * boxes strictly left of the leftmost Y tick (and above the x-axis), swept
 * leftward. Words are joined left-to-right for X and top-to-bottom for Y.
 */
inline std::pair<std::optional<AxisLabel>, std::optional<AxisLabel>> detect_axis_labels(
    const std::vector<TextBox>& boxes, const AxesGeometry& axes, const TickSet& x_ticks, const TickSet& y_ticks,
    int image_height) {
    std::optional<AxisLabel> x_label, y_label;

    int below = axes.x_axis_row;
    for (const auto& t : x_ticks.ticks) below = std::max(below, t.box.bbox.bottom() - 1);
    std::vector<TextBox> xs;
    for (const auto& b : boxes)
        if (b.bbox.y > below) xs.push_back(b);
    if (!xs.empty()) {
        auto hit = sweep_detect(xs, below + 1, image_height - 1, SweepDirection::Down);
        if (!hit.empty()) x_label = make_axis_label(Axis::X, std::move(hit));
    }

    int left = axes.y_axis_col;
    for (const auto& t : y_ticks.ticks) left = std::min(left, t.box.bbox.x);
    std::vector<TextBox> ys;
    for (const auto& b : boxes)
        if (b.bbox.right() - 1 < left && b.bbox.center_y() < axes.x_axis_row) ys.push_back(b);
    if (!ys.empty() && left > 0) {
        auto hit = sweep_detect(ys, left - 1, 0, SweepDirection::Left);
        if (!hit.empty()) y_label = make_axis_label(Axis::Y, std::move(hit));
    }
    return {std::move(x_label), std::move(y_label)};
}

}  // namespace chartparser

#endif
