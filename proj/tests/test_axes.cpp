#include <gtest/gtest.h>

#include <random>

#include "chartparser/axes.hpp"
#include "corpus_cache.hpp"
#include "test_util.hpp"

using namespace chartparser;

namespace {

Raster l_shape(int w, int h, int col, int top, int row, int right) {
    Raster img(w, h);
    img.fill_rect({col, top, 1, row - top + 1}, kBlack);
    img.fill_rect({col, row, right - col + 1, 1}, kBlack);
    return img;
}

AxesGeometry axes_of(const Raster& img, int band = kDefaultAxisBand) { return detect_axes(run_profiles(binarize(img)), band); }

}  // namespace

TEST(DetectAxes, LShapeWithBars) {
    Raster img = l_shape(200, 200, 30, 20, 180, 190);
    img.fill_rect({50, 40, 20, 140}, {31, 119, 180});
    img.fill_rect({100, 30, 20, 150}, {214, 39, 40});
    const auto a = axes_of(img);
    EXPECT_EQ(a.y_axis_col, 30);
    EXPECT_EQ(a.x_axis_row, 180);
    EXPECT_EQ(a.y_axis_extent, std::make_pair(20, 180));
    EXPECT_EQ(a.x_axis_extent, std::make_pair(30, 190));
}

TEST(DetectAxes, BlankImageHasNoAxis) {
    EXPECT_EQ(error_of([] { axes_of(Raster(50, 50)); }), ErrorCode::NoAxisFound);
}

TEST(DetectAxes, AxisOnLastColumnIsDegenerate) {
    Raster img(40, 40);
    img.fill_rect({39, 0, 1, 40}, kBlack);
    img.fill_rect({0, 39, 40, 1}, kBlack);
    EXPECT_EQ(error_of([&] { axes_of(img); }), ErrorCode::DegenerateAxes);
}

TEST(DetectAxes, GridlineInsideBandLeftOfAxisWins) {
    Raster img = l_shape(120, 120, 40, 10, 100, 110);
    img.fill_rect({20, 15, 1, 86}, {60, 60, 60});  // run 86 vs 91: inside the band
    EXPECT_EQ(axes_of(img).y_axis_col, 20);
    EXPECT_EQ(axes_of(img, 3).y_axis_col, 40);
}

TEST(DetectAxes, FirstColumnAndLastRowProperty) {
    std::mt19937 rng(6);
    for (int t = 0; t < 300; ++t) {
        const int w = 20 + int(rng() % 60), h = 20 + int(rng() % 60);
        Raster img(w, h);
        for (int k = 0; k < 6; ++k) {
            const int x = int(rng() % w), y = int(rng() % h);
            if (rng() % 2)
                img.fill_rect({x, y, 1, 1 + int(rng() % (h - y))}, kBlack);
            else
                img.fill_rect({x, y, 1 + int(rng() % (w - x)), 1}, kBlack);
        }
        const auto p = run_profiles(binarize(img));
        AxesGeometry a;
        try {
            a = detect_axes(p, 10);
        } catch (const Error&) {
            continue;
        }
        const int maxcol = *std::max_element(p.col_max_run.begin(), p.col_max_run.end());
        const int maxrow = *std::max_element(p.row_max_run.begin(), p.row_max_run.end());
        EXPECT_GE(p.col_max_run[std::size_t(a.y_axis_col)], maxcol - 10);
        for (int x = 0; x < a.y_axis_col; ++x) EXPECT_LT(p.col_max_run[std::size_t(x)], maxcol - 10);
        EXPECT_GE(p.row_max_run[std::size_t(a.x_axis_row)], maxrow - 10);
        for (int y = a.x_axis_row + 1; y < h; ++y) EXPECT_LT(p.row_max_run[std::size_t(y)], maxrow - 10);
    }
}

TEST(DetectAxes, InvariantUnderPaddingRightAndTop) {
    const Raster img = l_shape(100, 90, 12, 5, 80, 95);
    const auto base = axes_of(img);
    for (int pad : {1, 7, 30}) {
        Raster padded(100 + pad, 90 + pad);
        for (int y = 0; y < 90; ++y)
            for (int x = 0; x < 100; ++x) padded.set(x, y + pad, img.at(x, y));
        const auto a = axes_of(padded);
        EXPECT_EQ(a.y_axis_col, base.y_axis_col);
        EXPECT_EQ(a.x_axis_row, base.x_axis_row + pad);
    }
}

TEST(PlotRegion, InteriorRightOfAndAboveAxes) {
    AxesGeometry a;
    a.y_axis_col = 30;
    a.x_axis_row = 180;
    EXPECT_EQ(plot_region(a, 200, 200), (BBox{31, 0, 169, 180}));
}

TEST(PlotRegion, CornerAxes) {
    AxesGeometry a;
    a.y_axis_col = 0;
    a.x_axis_row = 49;
    EXPECT_EQ(plot_region(a, 60, 50), (BBox{1, 0, 59, 49}));
}

TEST(PlotRegion, AxisOnLastColumnIsEmpty) {
    AxesGeometry a;
    a.y_axis_col = 59;
    a.x_axis_row = 20;
    EXPECT_EQ(error_of([&] { plot_region(a, 60, 50); }), ErrorCode::EmptyPlotRegion);
}

TEST(AxesFrame, BoundedByAxisRuns) {
    AxesGeometry a;
    a.y_axis_col = 30;
    a.x_axis_row = 180;
    a.y_axis_extent = {20, 180};
    a.x_axis_extent = {30, 190};
    EXPECT_EQ(axes_frame(a), (BBox{31, 20, 160, 160}));
}

TEST(DetectAxes, ExactOnSyntheticCorpus) {
    for (const auto& e : cached_corpus(200, 42)) {
        const auto a = axes_of(e.chart.raster);
        const auto& t = e.chart.truth.axes;
        EXPECT_EQ(a.y_axis_col, t.y_axis_col) << e.id;
        EXPECT_EQ(a.x_axis_row, t.x_axis_row) << e.id;
        EXPECT_EQ(a.y_axis_extent, t.y_axis_extent) << e.id;
        EXPECT_EQ(a.x_axis_extent, t.x_axis_extent) << e.id;
    }
}
