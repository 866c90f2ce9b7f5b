#include <gtest/gtest.h>

#include <map>

#include "chartparser/synthgen.hpp"
#include "corpus_cache.hpp"
#include "test_util.hpp"

using namespace chartparser;
using namespace chartparser::synth;

namespace {

ChartSpec one_bar(Variant v, std::vector<double> values) {
    ChartSpec spec;
    spec.variant = v;
    spec.categories = {"A"};
    for (std::size_t i = 0; i < values.size(); ++i)
        spec.series.push_back({"s" + std::to_string(i), pools::palette[i], {values[i]}});
    spec.tick_step = 5.0;
    spec.show_legend = false;
    spec.width = 200;
    spec.height = 200;
    return spec;
}

}  // namespace

TEST(Synthgen, SingleBarReachesItsTick) {
    const auto chart = render(one_bar(Variant::Vertical, {10.0}));
    const auto& t = chart.truth;
    ASSERT_EQ(t.bars.size(), 1u);
    ASSERT_EQ(t.y_ticks.size(), 3u);  // 10, 5, 0 from the top
    EXPECT_EQ(*t.y_ticks.ticks[0].value, 10.0);
    const BBox r = t.bars[0].rect;
    EXPECT_EQ(r.bottom(), t.axes.x_axis_row);
    EXPECT_EQ(double(r.y), t.y_ticks.pixel_positions[0]);
    EXPECT_DOUBLE_EQ(t.alpha * r.h, 10.0);
    EXPECT_EQ(t.series, (std::vector<std::string>{"value"}));
    EXPECT_EQ(chart.raster.at(r.x, r.y), pools::palette[0]);
    EXPECT_EQ(check_ground_truth(t), std::nullopt);
}

TEST(Synthgen, StackedSegmentsAbut) {
    const auto t = render(one_bar(Variant::StackedVertical, {10.0, 10.0})).truth;
    ASSERT_EQ(t.bars.size(), 2u);
    const BBox lower = t.bars[0].rect, upper = t.bars[1].rect;
    EXPECT_EQ(lower.bottom(), t.axes.x_axis_row);
    EXPECT_EQ(upper.bottom(), lower.y);
    EXPECT_EQ(upper.h, lower.h);
    EXPECT_EQ(upper.x, lower.x);
    EXPECT_EQ(t.y_ticks.size(), 5u);  // 0..20 in steps of 5

    const auto h = render(one_bar(Variant::StackedHorizontal, {10.0, 10.0})).truth;
    EXPECT_EQ(h.bars[0].rect.x, h.axes.y_axis_col + 1);
    EXPECT_EQ(h.bars[1].rect.x, h.bars[0].rect.right());
}

TEST(Synthgen, TickFormatting) {
    ChartSpec spec;
    spec.tick_step = 2500;
    spec.thousands_separator = true;
    EXPECT_EQ(format_tick(12500, spec), "12,500");
    spec.thousands_separator = false;
    spec.tick_step = 0.2;
    spec.tick_suffix = "%";
    EXPECT_EQ(format_tick(0.6000000000000001, spec), "0.6%");
    EXPECT_EQ(parse_tick_value("12,500"), 12500.0);
    EXPECT_EQ(parse_tick_value("0.6%"), 0.6);
}

TEST(Synthgen, TooSmallCanvasIsRejected) {
    auto spec = one_bar(Variant::Vertical, {10.0});
    spec.width = 20;
    spec.height = 20;
    EXPECT_EQ(error_of([&] { render(spec); }), ErrorCode::SpecTooLarge);
    spec = one_bar(Variant::Vertical, {10.0});
    spec.categories = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "N"};
    spec.series[0].values.assign(spec.categories.size(), 1.0);
    EXPECT_EQ(error_of([&] { render(spec); }), ErrorCode::SpecTooLarge);
    spec = one_bar(Variant::Vertical, {-1.0});
    EXPECT_EQ(error_of([&] { render(spec); }), ErrorCode::SpecTooLarge);
}

TEST(Synthgen, RightLegendStaysAboveTheAxis) {
    auto spec = one_bar(Variant::Vertical, {1.0, 1.0, 1.0, 1.0, 1.0});
    spec.show_legend = true;
    spec.legend_placement = LegendPlacement::Right;
    const auto [w, h] = canvas_for(spec, 40, 10);
    spec.width = w;
    spec.height = h;
    const auto t = render(spec).truth;
    for (const auto& e : t.legend) EXPECT_LE(e.name_box.bottom(), t.axes.x_axis_row);
}

TEST(Synthgen, CorpusIsDeterministic) {
    const auto a = corpus(12, 7);
    const auto b = corpus(12, 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].chart.raster, b[i].chart.raster);
        EXPECT_EQ(truth_to_json(a[i].chart.truth).dump(), truth_to_json(b[i].chart.truth).dump());
    }
    const auto c = corpus(12, 8);
    int differ = 0;
    for (std::size_t i = 0; i < a.size(); ++i) differ += !(a[i].chart.raster == c[i].chart.raster);
    EXPECT_GT(differ, 0);
}

TEST(Synthgen, VariantsAreBalanced) {
    std::map<Variant, int> hist;
    for (const auto& e : cached_corpus(200, 42)) ++hist[e.spec.variant];
    for (auto v : {Variant::Vertical, Variant::Horizontal, Variant::StackedVertical, Variant::StackedHorizontal})
        EXPECT_EQ(hist[v], 50) << variant_name(v);
    std::map<Variant, int> small;
    for (const auto& e : corpus(100, 42)) ++small[e.spec.variant];
    for (const auto& [v, n] : small) EXPECT_GE(n, 20) << variant_name(v);
}

TEST(Synthgen, CorpusTruthIsConsistent) {
    for (const auto& e : cached_corpus(200, 42)) {
        const auto& t = e.chart.truth;
        EXPECT_EQ(check_ground_truth(t), std::nullopt) << e.id;
        EXPECT_EQ(t.image_id, e.id);
        EXPECT_EQ(t.text_boxes, e.chart.fixture) << e.id;
        EXPECT_EQ(t.width, e.chart.raster.width());
        // Truth text boxes are solid text ink and never overlap each other.
        for (std::size_t i = 0; i < t.text_boxes.size(); ++i) {
            const BBox b = t.text_boxes[i].bbox;
            EXPECT_EQ(e.chart.raster.at(b.x, b.y), kTextInk) << e.id;
            EXPECT_EQ(e.chart.raster.at(b.right() - 1, b.bottom() - 1), kTextInk) << e.id;
            for (std::size_t j = i + 1; j < t.text_boxes.size(); ++j)
                EXPECT_EQ(intersection_area(b, t.text_boxes[j].bbox), 0) << e.id;
        }
        // Swatch truth carries the series color and is painted with it.
        for (std::size_t s = 0; s < t.legend.size(); ++s) {
            EXPECT_EQ(t.legend[s].color, e.spec.series[s].color);
            EXPECT_EQ(e.chart.raster.at(t.legend[s].swatch_box.x, t.legend[s].swatch_box.y), t.legend[s].color);
        }
    }
}

TEST(Synthgen, TruthJsonRoundTrip) {
    for (const auto& e : cached_corpus(200, 42)) {
        const auto j = truth_to_json(e.chart.truth);
        const auto back = truth_from_json(nlohmann::json::parse(j.dump()));
        EXPECT_EQ(truth_to_json(back).dump(), j.dump()) << e.id;
    }
    EXPECT_EQ(error_of([] { truth_from_json(nlohmann::json::object()); }), ErrorCode::MalformedResponse);
}

TEST(Perturb, BoundedAndSeeded) {
    const auto& e = cached_corpus(200, 42)[3];
    const Raster& img = e.chart.raster;
    for (int k : {1, 4, 10}) {
        const Raster p = perturb(img, k, 99);
        int max_delta = 0;
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) {
                const Rgb a = img.at(x, y), b = p.at(x, y);
                max_delta = std::max({max_delta, std::abs(a.r - b.r), std::abs(a.g - b.g), std::abs(a.b - b.b)});
            }
        EXPECT_LE(max_delta, k);
        EXPECT_EQ(max_delta, k);  // the bound is actually reached on a real chart
        EXPECT_EQ(p, perturb(img, k, 99));
        EXPECT_FALSE(p == perturb(img, k, 100));
    }
    EXPECT_EQ(perturb(img, 0, 5), img);
    EXPECT_THROW(perturb(img, 11, 5), std::invalid_argument);
    EXPECT_THROW(perturb(img, -1, 5), std::invalid_argument);
}

TEST(Perturb, AntialiasOnlyTouchesEdges) {
    Raster img(20, 20);
    img.fill_rect({5, 5, 10, 10}, {200, 0, 0});
    const Raster p = perturb(img, 0, 1, true);
    EXPECT_EQ(p.at(10, 10), img.at(10, 10));
    EXPECT_EQ(p.at(1, 1), img.at(1, 1));
    EXPECT_FALSE(p.at(5, 10) == img.at(5, 10));
}

TEST(WriteCorpus, FilesAndManifest) {
    const auto dir = std::filesystem::temp_directory_path() / "chartparser_write_corpus";
    std::filesystem::remove_all(dir);
    write_corpus(dir, 5, 42, 2);
    std::ifstream in(dir / "manifest.json");
    const auto manifest = nlohmann::json::parse(in);
    EXPECT_EQ(manifest["count"], 5);
    EXPECT_EQ(manifest["perturb"], 2);
    ASSERT_EQ(manifest["entries"].size(), 5u);
    const auto fixture = load_fixture(dir / "ocr_fixture.json");
    EXPECT_EQ(fixture.images().size(), 5u);
    const auto entries = corpus(5, 42);
    for (const auto& e : entries) {
        EXPECT_TRUE(std::filesystem::exists(dir / (e.id + ".truth.json")));
        const Raster png = read_image(dir / (e.id + ".png"));
        EXPECT_EQ(png, perturb(e.chart.raster, 2, e.spec.rng_seed));
    }
    std::filesystem::remove_all(dir);
}
