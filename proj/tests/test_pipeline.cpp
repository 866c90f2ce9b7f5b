#include <gtest/gtest.h>

#include "chartparser/eval.hpp"
#include "chartparser/pipeline.hpp"
#include "corpus_cache.hpp"

using namespace chartparser;

namespace {

eval::EvalReport score_corpus(int jitter) {
    std::vector<Extraction> pred;
    std::vector<synth::GroundTruth> truth;
    for (const auto& e : cached_corpus(200, 42)) {
        const Raster img = jitter ? synth::perturb(e.chart.raster, jitter, e.spec.rng_seed) : e.chart.raster;
        pred.push_back(parse_chart(img, e.chart.fixture, e.id));
        truth.push_back(e.chart.truth);
    }
    return eval::component_accuracy(pred, truth);
}

}  // namespace

TEST(Pipeline, CrispCorpusIsFullyRecovered) {
    const auto r = score_corpus(0);
    for (int c = 0; c < eval::kComponentCount; ++c)
        EXPECT_DOUBLE_EQ(r.accuracy[std::size_t(c)], 1.0) << eval::kComponentKeys[std::size_t(c)];
    EXPECT_DOUBLE_EQ(r.text.f1(), 1.0);
}

TEST(Pipeline, JitteredCorpusIsFullyRecovered) {
    const auto r = score_corpus(4);
    for (int c = 0; c < eval::kComponentCount; ++c)
        EXPECT_DOUBLE_EQ(r.accuracy[std::size_t(c)], 1.0) << eval::kComponentKeys[std::size_t(c)];
}

TEST(Pipeline, ValuesWithinTwoPixels) {
    for (const auto& e : cached_corpus(200, 42)) {
        const auto ex = parse_chart(e.chart.raster, e.chart.fixture, e.id);
        ASSERT_TRUE(ex.ok()) << e.id;
        const auto& t = *ex.table;
        for (const auto& b : e.chart.truth.bars) {
            const auto c = std::size_t(std::find(t.categories.begin(), t.categories.end(), b.category) - t.categories.begin());
            const auto s = std::find_if(t.series.begin(), t.series.end(), [&](const auto& col) { return col.name == b.series; });
            ASSERT_NE(s, t.series.end()) << e.id;
            EXPECT_LE(std::abs(s->values[c].value_or(0.0) - b.value), 2 * e.chart.truth.alpha + 1e-9) << e.id;
        }
    }
}

TEST(Pipeline, NoLegendFallsBackToOneSeries) {
    synth::ChartSpec spec;
    spec.categories = {"A", "B", "C"};
    spec.series = {{"ignored", {31, 119, 180}, {10, 20, 30}}};
    spec.show_legend = false;
    spec.tick_step = 10;
    spec.category_label = "Method";
    const auto chart = synth::render(spec);
    const auto ex = parse_chart(chart.raster, chart.fixture, "solo");
    ASSERT_TRUE(ex.ok()) << ex.error->detail;
    ASSERT_EQ(ex.table->series.size(), 1u);
    EXPECT_EQ(ex.table->series[0].name, "value");
    EXPECT_EQ(ex.table->series[0].color, (Rgb{31, 119, 180}));
    EXPECT_EQ(ex.table->categories, spec.categories);
    EXPECT_EQ(ex.table->x_label, "Method");
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(*ex.table->series[0].values[std::size_t(c)], 10.0 * (c + 1), 1e-9);
    ASSERT_FALSE(ex.warnings.empty());
    EXPECT_EQ(ex.warnings.back().code, ErrorCode::NoLegendFound);
}

TEST(Pipeline, BlankImageReportsNoAxes) {
    const auto ex = parse_chart(Raster(100, 100), {}, "blank");
    EXPECT_FALSE(ex.ok());
    ASSERT_TRUE(ex.error.has_value());
    EXPECT_EQ(ex.error->code, ErrorCode::NoAxisFound);
}

TEST(Pipeline, ExtractionJsonRoundTrip) {
    int n = 0;
    for (const auto& e : cached_corpus(200, 42)) {
        if (++n > 40) break;
        const auto ex = parse_chart(e.chart.raster, e.chart.fixture, e.id);
        const auto j = extraction_to_json(ex);
        const auto back = extraction_from_json(nlohmann::json::parse(j.dump()));
        EXPECT_EQ(extraction_to_json(back).dump(), j.dump()) << e.id;
        const auto s1 = eval::score_chart(ex, e.chart.truth), s2 = eval::score_chart(back, e.chart.truth);
        EXPECT_EQ(s1.pass, s2.pass) << e.id;
    }
}

TEST(Pipeline, HorizontalTableLabelsFollowTheAxes) {
    synth::ChartSpec spec;
    spec.variant = synth::Variant::Horizontal;
    spec.categories = {"A", "B"};
    spec.series = {{"s", {31, 119, 180}, {10, 20}}};
    spec.show_legend = false;
    spec.tick_step = 10;
    spec.category_label = "Method";
    spec.value_label = "Score";
    const auto [w, h] = synth::canvas_for(spec, 40, 50);
    spec.width = w;
    spec.height = h;
    const auto chart = synth::render(spec);
    const auto ex = parse_chart(chart.raster, chart.fixture, "h");
    ASSERT_TRUE(ex.ok());
    EXPECT_EQ(ex.x_label->text, "Score");  // drawn under the x-axis
    EXPECT_EQ(ex.table->x_label, "Method");
    EXPECT_EQ(ex.table->y_label, "Score");
}
