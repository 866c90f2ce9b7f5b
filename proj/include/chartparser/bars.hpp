#ifndef CHARTPARSER_BARS_HPP
#define CHARTPARSER_BARS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chartparser/axes.hpp"
#include "chartparser/error.hpp"
#include "chartparser/legend.hpp"
#include "chartparser/raster.hpp"
#include "chartparser/table.hpp"
#include "chartparser/ticklabel.hpp"

namespace chartparser {

/// Pixels further than this (squared RGB distance) from every series color
/// stay unassigned. Keeps axis ink and gridlines out of the series masks.
inline constexpr int kDefaultClusterCap = 3 * 60 * 60;
inline constexpr long kDefaultMinBarArea = 25;
/// A bar whose base is within this many pixels of the axis is measured from
/// the axis; anything further up is a stacked segment measured by itself.
inline constexpr int kBaseContactTolerance = 2;

enum class Orientation { Vertical, Horizontal };

inline double category_anchor(const BBox& rect, Orientation o) {
    return o == Orientation::Vertical ? rect.center_x() : rect.center_y();
}

struct BarRect {
    std::string series;
    BBox rect;
    double category_anchor = 0.0;
};

struct ValueMap {
    double alpha = 0.0;  // value units per pixel
    double axis_value_at_origin = 0.0;
    int tick_count = 0;
    Axis axis = Axis::Y;
};

/**
 * Paints every legend name and swatch white. The estimated swatch box only
 * covers what lay inside the search strip, so the swatch is flood-filled from
 * it: 4-neighbours within `tolerance` of the entry color, kept within
 * kSwatchStripMaxOffset of the box.
 */
inline Raster whiten_legend(Raster img, const LegendSet& legend, int tolerance = kDefaultColorTolerance) {
    auto close = [&](Rgb a, Rgb b) {
        return std::abs(a.r - b.r) <= tolerance && std::abs(a.g - b.g) <= tolerance && std::abs(a.b - b.b) <= tolerance;
    };
    for (const auto& e : legend.entries) {
        const BBox& sw = e.swatch_box;
        BBox window{sw.x - kSwatchStripMaxOffset, sw.y - kSwatchStripMaxOffset, sw.w + 2 * kSwatchStripMaxOffset,
                    sw.h + 2 * kSwatchStripMaxOffset};
        std::vector<std::pair<int, int>> fill;
        if (sw.w > 0 && sw.h > 0 && clip_to_image(window, img.width(), img.height())) {
            std::vector<char> seen(std::size_t(window.w) * std::size_t(window.h), 0);
            auto idx = [&](int x, int y) { return std::size_t(y - window.y) * std::size_t(window.w) + std::size_t(x - window.x); };
            std::deque<std::pair<int, int>> queue;
            for (int y = sw.y; y < sw.bottom(); ++y)
                for (int x = sw.x; x < sw.right(); ++x)
                    if (window.contains(x, y) && close(img.at(x, y), e.color)) {
                        seen[idx(x, y)] = 1;
                        queue.emplace_back(x, y);
                    }
            while (!queue.empty()) {
                const auto [x, y] = queue.front();
                queue.pop_front();
                fill.emplace_back(x, y);
                static constexpr int dx[4] = {1, -1, 0, 0};
                static constexpr int dy[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nx = x + dx[k], ny = y + dy[k];
                    if (!window.contains(nx, ny) || seen[idx(nx, ny)] || !close(img.at(nx, ny), e.color)) continue;
                    seen[idx(nx, ny)] = 1;
                    queue.emplace_back(nx, ny);
                }
            }
        }
        img.fill_rect(e.name_box, kWhite);
        img.fill_rect(sw, kWhite);
        for (const auto& [x, y] : fill) img.set(x, y, kWhite);
    }
    return img;
}

/**
 * One mask per seed color. Every non-white pixel of the plot region goes to
 * the nearest seed (squared RGB distance, first seed on ties) if that
 * distance is within `cap`.
 */
inline std::vector<BinaryImage> cluster_pixels(const Raster& img, const std::vector<Rgb>& seeds, const BBox& plot,
                                               int cap = kDefaultClusterCap) {
    std::vector<BinaryImage> masks(seeds.size(), BinaryImage(img.width(), img.height()));
    if (seeds.empty()) return masks;
    const int x0 = std::max(plot.x, 0), x1 = std::min(plot.right(), img.width());
    const int y0 = std::max(plot.y, 0), y1 = std::min(plot.bottom(), img.height());
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const Rgb c = img.at(x, y);
            if (is_near_white(c)) continue;
            std::size_t best = 0;
            int best_d = std::numeric_limits<int>::max();
            for (std::size_t s = 0; s < seeds.size(); ++s) {
                const int d = squared_distance(c, seeds[s]);
                if (d < best_d) {
                    best_d = d;
                    best = s;
                }
            }
            if (best_d <= cap) masks[best].set(x, y, true);
        }
    }
    return masks;
}

/// Most common non-white, non-ink color of the plot region, used as the sole
/// series color when a chart has no legend. Colors are binned at 16 levels per
/// channel; the winning bin's mean is returned.
inline std::optional<Rgb> dominant_color(const Raster& img, const BBox& plot, int cap = kDefaultClusterCap) {
    std::map<int, std::pair<long, std::array<long, 3>>> bins;
    for (int y = std::max(plot.y, 0); y < std::min(plot.bottom(), img.height()); ++y) {
        for (int x = std::max(plot.x, 0); x < std::min(plot.right(), img.width()); ++x) {
            const Rgb c = img.at(x, y);
            if (is_near_white(c) || squared_distance(c, kBlack) <= cap) continue;
            auto& [count, sum] = bins[(c.r >> 4) << 8 | (c.g >> 4) << 4 | (c.b >> 4)];
            ++count;
            sum[0] += c.r;
            sum[1] += c.g;
            sum[2] += c.b;
        }
    }
    if (bins.empty()) return std::nullopt;
    auto best = bins.begin();
    for (auto it = bins.begin(); it != bins.end(); ++it)
        if (it->second.first > best->second.first) best = it;
    const long n = best->second.first;
    const auto& s = best->second.second;
    return Rgb{std::uint8_t((s[0] + n / 2) / n), std::uint8_t((s[1] + n / 2) / n), std::uint8_t((s[2] + n / 2) / n)};
}

/**
 * 8-connected components of a series mask. Each component's bounding
 * rectangle becomes a bar when its area reaches `min_area`. Bars come out
 * sorted by position.
 */
inline std::vector<BarRect> extract_bars(const BinaryImage& mask, const std::string& series,
                                         Orientation orientation = Orientation::Vertical,
                                         long min_area = kDefaultMinBarArea) {
    const int w = mask.width(), h = mask.height();
    std::vector<std::uint8_t> seen(std::size_t(w) * std::size_t(h), 0);
    std::vector<BarRect> bars;
    std::deque<std::pair<int, int>> queue;
    for (int sy = 0; sy < h; ++sy) {
        for (int sx = 0; sx < w; ++sx) {
            if (!mask.get(sx, sy) || seen[std::size_t(sy) * w + sx]) continue;
            int x0 = sx, x1 = sx, y0 = sy, y1 = sy;
            seen[std::size_t(sy) * w + sx] = 1;
            queue.emplace_back(sx, sy);
            while (!queue.empty()) {
                const auto [x, y] = queue.front();
                queue.pop_front();
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        auto& s = seen[std::size_t(ny) * w + nx];
                        if (s || !mask.get(nx, ny)) continue;
                        s = 1;
                        queue.emplace_back(nx, ny);
                    }
                }
            }
            const BBox rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
            if (rect.area() >= min_area) bars.push_back({series, rect, category_anchor(rect, orientation)});
        }
    }
    std::sort(bars.begin(), bars.end(), [](const BarRect& a, const BarRect& b) {
        return std::pair(a.rect.x, a.rect.y) < std::pair(b.rect.x, b.rect.y);
    });
    return bars;
}

/**
 * Vertical when only the Y ticks are numeric, horizontal when only the X
 * ticks are. With both numeric, tall bars mean vertical.
 */
inline Orientation detect_orientation(const std::vector<BarRect>& bars, const TickSet& x_ticks,
                                      const TickSet& y_ticks) {
    const bool x_num = x_ticks.is_numeric();
    const bool y_num = y_ticks.is_numeric();
    if (y_num && !x_num) return Orientation::Vertical;
    if (x_num && !y_num) return Orientation::Horizontal;
    if (!x_num && !y_num) throw Error(ErrorCode::AmbiguousOrientation, "neither axis has numeric ticks");
    if (bars.empty()) throw Error(ErrorCode::AmbiguousOrientation, "both axes numeric and no bars to compare");
    std::vector<int> ws, hs;
    for (const auto& b : bars) {
        ws.push_back(b.rect.w);
        hs.push_back(b.rect.h);
    }
    auto median = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size() / 2;
        return v.size() % 2 ? double(v[m]) : (v[m - 1] + v[m]) / 2.0;
    };
    return median(hs) > median(ws) ? Orientation::Vertical : Orientation::Horizontal;
}

/// Pixel distance of an anchor from the value axis' zero line, growing in
/// the direction values grow.
inline double distance_from_axis(double anchor_pos, Axis axis, const AxesGeometry& axes) {
    return axis == Axis::Y ? axes.x_axis_row - anchor_pos : anchor_pos - axes.y_axis_col;
}

/**
 * Value units per pixel: the mean step between consecutive tick values over
 * the mean pixel step between their anchors. The value at the axis line is
 * extrapolated from the tick nearest to it.
 */
inline ValueMap value_tick_ratio(const TickSet& ticks, const AxesGeometry& axes) {
    std::vector<std::pair<double, double>> pts;  // (distance from axis, value)
    for (std::size_t i = 0; i < ticks.ticks.size(); ++i)
        if (ticks.ticks[i].value)
            pts.emplace_back(distance_from_axis(ticks.pixel_positions[i], ticks.axis, axes), *ticks.ticks[i].value);
    if (pts.size() < 2) throw Error(ErrorCode::TooFewTicks, "value axis needs two numeric ticks");
    std::sort(pts.begin(), pts.end());

    double value_steps = 0.0, pixel_steps = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].second <= pts[i - 1].second)
            throw Error(ErrorCode::NonMonotonicTicks, "tick values do not increase away from the axis");
        value_steps += pts[i].second - pts[i - 1].second;
        pixel_steps += pts[i].first - pts[i - 1].first;
    }
    const double steps = double(pts.size() - 1);
    const double mean_pixels = pixel_steps / steps;
    if (!(mean_pixels > 0.0)) throw Error(ErrorCode::ZeroPixelSpan, "ticks have no pixel spread");

    ValueMap vm;
    vm.alpha = (value_steps / steps) / mean_pixels;
    vm.tick_count = int(pts.size());
    vm.axis = ticks.axis;
    const auto nearest = std::min_element(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return std::abs(a.first) < std::abs(b.first);
    });
    vm.axis_value_at_origin = nearest->second - vm.alpha * nearest->first;
    return vm;
}

/**
 * Bar value from its pixel extent. A bar resting on the axis spans from the
 * axis to its far edge; a stacked segment floating above it counts its own
 * extent only.
 */
inline double bar_value(const BarRect& bar, const ValueMap& vm, const AxesGeometry& axes, Orientation orientation) {
    const BBox& r = bar.rect;
    if (orientation == Orientation::Vertical) {
        if (axes.x_axis_row - r.bottom() <= kBaseContactTolerance)
            return vm.axis_value_at_origin + vm.alpha * (axes.x_axis_row - r.y);
        return vm.alpha * r.h;
    }
    if (r.x - (axes.y_axis_col + 1) <= kBaseContactTolerance)
        return vm.axis_value_at_origin + vm.alpha * (r.right() - 1 - axes.y_axis_col);
    return vm.alpha * r.w;
}

/// cells[series][category]
using CellGrid = std::vector<std::vector<std::optional<double>>>;

/**
 * Assigns each bar to the category tick with the nearest anchor along the
 * category axis and sums what lands in the same (series, category) cell.
 */
inline CellGrid associate_categories(const std::vector<BarRect>& bars, const std::vector<std::string>& series_names,
                                     const TickSet& categories, const ValueMap& vm, const AxesGeometry& axes,
                                     Orientation orientation) {
    CellGrid cells(series_names.size(), std::vector<std::optional<double>>(categories.size()));
    if (categories.empty()) return cells;
    for (const auto& bar : bars) {
        const auto s = std::find(series_names.begin(), series_names.end(), bar.series);
        if (s == series_names.end()) continue;
        std::size_t best = 0;
        for (std::size_t c = 1; c < categories.size(); ++c)
            if (std::abs(categories.pixel_positions[c] - bar.category_anchor) <
                std::abs(categories.pixel_positions[best] - bar.category_anchor))
                best = c;
        auto& cell = cells[std::size_t(s - series_names.begin())][best];
        cell = cell.value_or(0.0) + bar_value(bar, vm, axes, orientation);
    }
    return cells;
}

struct SeriesInfo {
    std::string name;
    Rgb color;
};

/// Throws EmptyChart when no cell holds a value.
inline ChartTable assemble_table(const std::optional<AxisLabel>& x_label, const std::optional<AxisLabel>& y_label,
                                 const std::vector<SeriesInfo>& series, const TickSet& categories,
                                 const CellGrid& cells) {
    bool any = false;
    for (const auto& row : cells)
        for (const auto& v : row) any = any || v.has_value();
    if (!any) throw Error(ErrorCode::EmptyChart, "no bars were found");

    ChartTable table;
    table.x_label = x_label ? x_label->text : "";
    table.y_label = y_label ? y_label->text : "";
    for (const auto& t : categories.ticks) table.categories.push_back(t.box.text);
    for (std::size_t s = 0; s < series.size(); ++s)
        table.series.push_back({series[s].name, series[s].color, cells[s]});
    return table;
}

}  // namespace chartparser

#endif
