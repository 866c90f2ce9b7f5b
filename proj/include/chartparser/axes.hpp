#ifndef CHARTPARSER_AXES_HPP
#define CHARTPARSER_AXES_HPP

#include <algorithm>
#include <string>
#include <utility>

#include "chartparser/error.hpp"
#include "chartparser/raster.hpp"

namespace chartparser {

inline constexpr int kDefaultAxisBand = 10;

struct AxesGeometry {
    int y_axis_col = 0;
    int x_axis_row = 0;
    std::pair<int, int> y_axis_extent;  // (top row, bottom row)
    std::pair<int, int> x_axis_extent;  // (left col, right col)

    friend bool operator==(const AxesGeometry&, const AxesGeometry&) = default;
};

/**
 * Locates the y-axis as the first column and the x-axis as the last row whose
 * longest ink run falls within `band` pixels of the longest run in that
 * direction.
 *
 * Throws NoAxisFound on a blank profile and DegenerateAxes when the axes leave
 * no plot interior.
 */
inline AxesGeometry detect_axes(const RunProfile& profile, int band = kDefaultAxisBand) {
    const auto& cols = profile.col_max_run;
    const auto& rows = profile.row_max_run;
    const int max_col = cols.empty() ? 0 : *std::max_element(cols.begin(), cols.end());
    const int max_row = rows.empty() ? 0 : *std::max_element(rows.begin(), rows.end());
    if (max_col == 0 || max_row == 0) throw Error(ErrorCode::NoAxisFound, "blank image");

    auto in_band = [band](int run, int max) { return run >= max - band && run <= max + band; };

    AxesGeometry g;
    g.y_axis_col = -1;
    for (int x = 0; x < int(cols.size()); ++x) {
        if (in_band(cols[x], max_col)) {
            g.y_axis_col = x;
            break;
        }
    }
    g.x_axis_row = -1;
    for (int y = int(rows.size()) - 1; y >= 0; --y) {
        if (in_band(rows[y], max_row)) {
            g.x_axis_row = y;
            break;
        }
    }
    // Both loops always hit the maximum itself.
    const int yc = g.y_axis_col, xr = g.x_axis_row;
    g.y_axis_extent = {profile.col_run_start[yc], profile.col_run_start[yc] + cols[yc] - 1};
    g.x_axis_extent = {profile.row_run_start[xr], profile.row_run_start[xr] + rows[xr] - 1};

    if (yc == int(cols.size()) - 1 || xr == 0)
        throw Error(ErrorCode::DegenerateAxes,
                    "y-axis at column " + std::to_string(yc) + ", x-axis at row " + std::to_string(xr));
    return g;
}

/// Interior strictly right of the y-axis and strictly above the x-axis.
inline BBox plot_region(const AxesGeometry& axes, int width, int height) {
    const int x0 = std::max(axes.y_axis_col + 1, 0);
    const int y1 = std::min(axes.x_axis_row, height);
    const BBox box{x0, 0, width - x0, y1};
    if (box.w <= 0 || box.h <= 0) throw Error(ErrorCode::EmptyPlotRegion, "axes leave no interior");
    return box;
}

/// Rectangle enclosed by the drawn axis lines: right of the y-axis up to the
/// x-axis run's right end, above the x-axis down from the y-axis run's top.
/// Narrower than plot_region whenever a legend sits beside or above the axes.
inline BBox axes_frame(const AxesGeometry& axes) {
    const int x0 = axes.y_axis_col + 1;
    const int y0 = axes.y_axis_extent.first;
    return {x0, y0, std::max(0, axes.x_axis_extent.second - x0 + 1), std::max(0, axes.x_axis_row - y0)};
}

}  // namespace chartparser

#endif
