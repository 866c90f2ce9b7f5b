#ifndef CHARTPARSER_LEGEND_HPP
#define CHARTPARSER_LEGEND_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chartparser/axes.hpp"
#include "chartparser/error.hpp"
#include "chartparser/ocr.hpp"
#include "chartparser/raster.hpp"
#include "chartparser/ticklabel.hpp"

namespace chartparser {

inline constexpr int kDefaultMergeGap = 10;
inline constexpr int kDefaultAlignTolerance = 5;
inline constexpr int kDefaultColorTolerance = 5;
inline constexpr int kSwatchStripMaxOffset = 30;
inline constexpr long kMinSwatchPixels = 9;

struct LegendEntry {
    std::string name;
    BBox name_box;
    BBox swatch_box;
    Rgb color;
};

enum class LegendOrientation { Horizontal, Vertical };

struct LegendSet {
    std::vector<LegendEntry> entries;
    LegendOrientation orientation = LegendOrientation::Vertical;

    bool empty() const { return entries.empty(); }
};

namespace detail {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    /// Members of each set, sets ordered by their smallest member.
    std::vector<std::vector<std::size_t>> groups() {
        std::map<std::size_t, std::vector<std::size_t>> by_root;
        for (std::size_t i = 0; i < parent.size(); ++i) by_root[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [root, members] : by_root) out.push_back(std::move(members));
        return out;
    }
};

inline bool same_box(const TextBox& a, const TextBox& b) { return a.text == b.text && a.bbox == b.bbox; }

}  // namespace detail

/// OCR readings of error-bar whiskers.
inline bool is_error_bar_glyph(const std::string& text) { return text == "I" || text == "l" || text == "|"; }

/**
 * Drops everything that cannot be a legend name: tick and axis-label boxes,
 * error-bar glyphs, and numeric-only boxes centered inside `plot` (value
 * annotations above bars). Pass the axes frame to keep numeric legend names
 * that sit outside it.
 */
inline std::vector<TextBox> prune_non_legend(const std::vector<TextBox>& boxes, const TickSet& x_ticks,
                                             const TickSet& y_ticks, const std::optional<AxisLabel>& x_label,
                                             const std::optional<AxisLabel>& y_label, const BBox& plot) {
    std::vector<const TextBox*> claimed;
    for (const auto* set : {&x_ticks, &y_ticks})
        for (const auto& t : set->ticks) claimed.push_back(&t.box);
    for (const auto* label : {&x_label, &y_label})
        if (*label)
            for (const auto& b : (*label)->boxes) claimed.push_back(&b);

    std::vector<TextBox> out;
    for (const auto& b : boxes) {
        if (std::any_of(claimed.begin(), claimed.end(), [&](const TextBox* c) { return detail::same_box(*c, b); }))
            continue;
        if (is_error_bar_glyph(b.text)) continue;
        const bool inside = plot.contains(int(std::floor(b.bbox.center_x())), int(std::floor(b.bbox.center_y())));
        if (inside && parse_tick_value(b.text)) continue;
        out.push_back(b);
    }
    return out;
}

/**
 * Joins words into multi-word names. Two boxes are linked when the
 * horizontal gap between them is below `gap` and their vertical centers
 * differ by at most half the shorter height; merged names are the transitive
 * closure, texts joined left to right. Result is sorted top-to-bottom, then
 * left-to-right, so input order does not matter.
 */
inline std::vector<TextBox> merge_words(const std::vector<TextBox>& boxes, int gap = kDefaultMergeGap) {
    const std::size_t n = boxes.size();
    detail::DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const BBox& a = boxes[i].bbox;
            const BBox& b = boxes[j].bbox;
            const int hgap = std::max(b.x - a.right(), a.x - b.right());
            const double dy = std::abs(a.center_y() - b.center_y());
            if (hgap < gap && dy <= std::min(a.h, b.h) / 2.0) sets.unite(i, j);
        }
    }
    std::vector<TextBox> merged;
    for (auto& members : sets.groups()) {
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            const BBox& p = boxes[a].bbox;
            const BBox& q = boxes[b].bbox;
            if (p.x != q.x) return p.x < q.x;
            if (p.y != q.y) return p.y < q.y;
            return boxes[a].text < boxes[b].text;
        });
        TextBox m = boxes[members.front()];
        for (std::size_t k = 1; k < members.size(); ++k) {
            const TextBox& w = boxes[members[k]];
            m.text += ' ';
            m.text += w.text;
            m.bbox = bbox_union(m.bbox, w.bbox);
            m.confidence = std::min(m.confidence, w.confidence);
        }
        merged.push_back(std::move(m));
    }
    std::sort(merged.begin(), merged.end(), [](const TextBox& a, const TextBox& b) {
        if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
        if (a.bbox.x != b.bbox.x) return a.bbox.x < b.bbox.x;
        return a.text < b.text;
    });
    return merged;
}

struct LegendGroup {
    std::vector<TextBox> members;  // reading order for the orientation
    LegendOrientation orientation = LegendOrientation::Vertical;
};

/// Connected components under "vertical centers within tolerance" or "left
/// edges within tolerance".
inline std::vector<std::vector<TextBox>> aligned_components(const std::vector<TextBox>& merged,
                                                            int tolerance = kDefaultAlignTolerance) {
    detail::DisjointSets sets(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        for (std::size_t j = i + 1; j < merged.size(); ++j) {
            const BBox& a = merged[i].bbox;
            const BBox& b = merged[j].bbox;
            const bool horizontal = std::abs(a.center_y() - b.center_y()) <= tolerance;
            const bool vertical = std::abs(a.x - b.x) <= tolerance;
            if (horizontal || vertical) sets.unite(i, j);
        }
    }
    std::vector<std::vector<TextBox>> out;
    for (const auto& members : sets.groups()) {
        std::vector<TextBox> comp;
        for (auto i : members) comp.push_back(merged[i]);
        out.push_back(std::move(comp));
    }
    return out;
}

/**
 * Picks the largest aligned component as the legend. Equal sizes go to the
 * component whose nearest member center is closest to the plot region's
 * top-right corner. Throws NoLegendFound when there is nothing to group.
 */
inline LegendGroup group_aligned(const std::vector<TextBox>& merged, const BBox& plot,
                                 int tolerance = kDefaultAlignTolerance) {
    if (merged.empty()) throw Error(ErrorCode::NoLegendFound, "no candidate legend text");
    const double cx = plot.right(), cy = plot.y;
    auto corner_distance = [&](const std::vector<TextBox>& comp) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& b : comp) best = std::min(best, std::hypot(b.bbox.center_x() - cx, b.bbox.center_y() - cy));
        return best;
    };

    auto comps = aligned_components(merged, tolerance);
    std::size_t pick = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
        if (comps[i].size() > comps[pick].size() ||
            (comps[i].size() == comps[pick].size() && corner_distance(comps[i]) < corner_distance(comps[pick])))
            pick = i;
    }

    LegendGroup group;
    group.members = std::move(comps[pick]);
    auto [min_x, max_x] = std::minmax_element(group.members.begin(), group.members.end(),
                                              [](const TextBox& a, const TextBox& b) { return a.bbox.center_x() < b.bbox.center_x(); });
    auto [min_y, max_y] = std::minmax_element(group.members.begin(), group.members.end(),
                                              [](const TextBox& a, const TextBox& b) { return a.bbox.center_y() < b.bbox.center_y(); });
    const double spread_x = max_x->bbox.center_x() - min_x->bbox.center_x();
    const double spread_y = max_y->bbox.center_y() - min_y->bbox.center_y();
    group.orientation = spread_x > spread_y ? LegendOrientation::Horizontal : LegendOrientation::Vertical;
    std::sort(group.members.begin(), group.members.end(), [&](const TextBox& a, const TextBox& b) {
        if (group.orientation == LegendOrientation::Horizontal)
            return std::pair(a.bbox.x, a.bbox.y) < std::pair(b.bbox.x, b.bbox.y);
        return std::pair(a.bbox.y, a.bbox.x) < std::pair(b.bbox.y, b.bbox.x);
    });
    return group;
}

struct PixelGroup {
    BBox box;
    Rgb color;  // rounded per-channel mean
    long size = 0;
};

/**
 * Splits a rectangle of the image into color-coherent regions. Seeds are taken
 * in raster order; a region absorbs a 4-neighbour when every channel is
 * within `tolerance` of the region's running mean.
 */
inline std::vector<PixelGroup> grow_regions(const Raster& img, const BBox& area, int tolerance) {
    std::vector<PixelGroup> groups;
    if (area.w <= 0 || area.h <= 0) return groups;
    std::vector<int> owner(std::size_t(area.w) * std::size_t(area.h), -1);
    auto idx = [&](int x, int y) { return std::size_t(y - area.y) * std::size_t(area.w) + std::size_t(x - area.x); };

    for (int sy = area.y; sy < area.bottom(); ++sy) {
        for (int sx = area.x; sx < area.right(); ++sx) {
            if (owner[idx(sx, sy)] >= 0) continue;
            const int id = int(groups.size());
            long sum[3] = {0, 0, 0};
            long n = 0;
            int x0 = sx, x1 = sx, y0 = sy, y1 = sy;
            auto take = [&](int x, int y) {
                const Rgb c = img.at(x, y);
                owner[idx(x, y)] = id;
                sum[0] += c.r;
                sum[1] += c.g;
                sum[2] += c.b;
                ++n;
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            };
            std::deque<std::pair<int, int>> queue;
            take(sx, sy);
            queue.emplace_back(sx, sy);
            while (!queue.empty()) {
                const auto [x, y] = queue.front();
                queue.pop_front();
                static constexpr int dx[4] = {1, -1, 0, 0};
                static constexpr int dy[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nx = x + dx[k], ny = y + dy[k];
                    if (!area.contains(nx, ny) || owner[idx(nx, ny)] >= 0) continue;
                    const Rgb c = img.at(nx, ny);
                    const double dn = double(n);
                    if (std::abs(c.r - sum[0] / dn) <= tolerance && std::abs(c.g - sum[1] / dn) <= tolerance &&
                        std::abs(c.b - sum[2] / dn) <= tolerance) {
                        take(nx, ny);
                        queue.emplace_back(nx, ny);
                    }
                }
            }
            auto mean = [n](long s) { return std::uint8_t((s + n / 2) / n); };
            groups.push_back({{x0, y0, x1 - x0 + 1, y1 - y0 + 1}, {mean(sum[0]), mean(sum[1]), mean(sum[2])}, n});
        }
    }
    return groups;
}

/// Strips beside a legend name where its swatch is searched: same rows,
/// min(3 x height, 30) columns wide, clipped to the image.
inline std::pair<BBox, BBox> swatch_strips(const BBox& name, int width, int height) {
    const int span = std::min(3 * name.h, kSwatchStripMaxOffset);
    BBox left{name.x - span, name.y, span, name.h};
    BBox right{name.right(), name.y, span, name.h};
    if (!clip_to_image(left, width, height)) left = {0, 0, 0, 0};
    if (!clip_to_image(right, width, height)) right = {0, 0, 0, 0};
    return {left, right};
}

struct Swatch {
    BBox box;
    Rgb color;
    long pixels = 0;
};

/**
 * Estimates a legend entry's color from the largest non-background region in
 * the strips beside its name. Equal sizes prefer the region nearer the name.
 * Throws NoSwatchFound when no region of at least 9 pixels exists.
 */
inline Swatch estimate_swatch_color(const Raster& img, const BBox& name_box,
                                    int tolerance = kDefaultColorTolerance) {
    const auto [left, right] = swatch_strips(name_box, img.width(), img.height());
    std::optional<Swatch> best;
    int best_distance = 0;
    for (const BBox& strip : {left, right}) {
        for (const auto& g : grow_regions(img, strip, tolerance)) {
            if (is_near_white(g.color) || g.size < kMinSwatchPixels) continue;
            const int distance = std::max(name_box.x - g.box.right(), g.box.x - name_box.right());
            if (!best || g.size > best->pixels || (g.size == best->pixels && distance < best_distance)) {
                best = Swatch{g.box, g.color, g.size};
                best_distance = distance;
            }
        }
    }
    if (!best) throw Error(ErrorCode::NoSwatchFound, "no colored region beside name box at (" + std::to_string(name_box.x) +
                                                  "," + std::to_string(name_box.y) + ")");
    return *best;
}

/// Appends " (2)", " (3)", ... to repeated names.
inline void make_names_unique(std::vector<LegendEntry>& entries) {
    std::map<std::string, int> seen;
    for (auto& e : entries) {
        const int n = ++seen[e.name];
        if (n > 1) e.name += " (" + std::to_string(n) + ")";
    }
}

}  // namespace chartparser

#endif
