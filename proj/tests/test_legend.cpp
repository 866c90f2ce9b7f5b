#include <gtest/gtest.h>

#include <random>

#include "chartparser/legend.hpp"
#include "corpus_cache.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace chartparser;

namespace {

TextBox box(std::string text, int x, int y, int w, int h = 12) { return {std::move(text), {x, y, w, h}, 1.0}; }

const TickSet kNoTicksX{Axis::X, {}, {}};
const TickSet kNoTicksY{Axis::Y, {}, {}};

std::vector<std::string> texts(const std::vector<TextBox>& v) {
    std::vector<std::string> out;
    for (const auto& b : v) out.push_back(b.text);
    return out;
}

}  // namespace

TEST(PruneNonLegend, ErrorBarsAnnotationsTicksAndLabels) {
    const BBox plot{50, 0, 200, 150};
    TickSet xt = make_tick_set(Axis::X, {box("A", 80, 160, 6)});
    const AxisLabel xl{Axis::X, "Method", {box("Method", 120, 180, 36)}};
    const std::vector<TextBox> boxes = {box("I", 100, 40, 6),      box("l", 120, 40, 6),    box("|", 140, 40, 6),
                                        box("12.5", 100, 60, 24),  box("12.5", 260, 60, 24), box("Model", 150, 20, 30),
                                        box("A", 80, 160, 6),      box("Method", 120, 180, 36)};
    const auto kept = prune_non_legend(boxes, xt, kNoTicksY, xl, std::nullopt, plot);
    EXPECT_EQ(texts(kept), (std::vector<std::string>{"12.5", "Model"}));
    EXPECT_EQ(kept[0].bbox.x, 260);
}

TEST(MergeWords, JoinsNearbyWords) {
    const auto m = merge_words({box("Model", 100, 50, 40), box("A", 144, 50, 10)});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].text, "Model A");
    EXPECT_EQ(m[0].bbox, (BBox{100, 50, 54, 12}));
}

TEST(MergeWords, GapIsStrict) {
    EXPECT_EQ(merge_words({box("a", 0, 0, 10), box("b", 25, 0, 10)}).size(), 2u);  // 15 px apart
    EXPECT_EQ(merge_words({box("a", 0, 0, 10), box("b", 20, 0, 10)}).size(), 2u);  // exactly 10
    EXPECT_EQ(merge_words({box("a", 0, 0, 10), box("b", 19, 0, 10)}).size(), 1u);
}

TEST(MergeWords, NeedsVerticalOverlap) {
    EXPECT_EQ(merge_words({box("a", 0, 0, 10), box("b", 12, 6, 10)}).size(), 1u);  // offset 6 = h/2
    EXPECT_EQ(merge_words({box("a", 0, 0, 10), box("b", 12, 7, 10)}).size(), 2u);
}

TEST(MergeWords, TransitiveChain) {
    const auto m = merge_words({box("c", 36, 0, 10), box("a", 0, 0, 10), box("b", 18, 0, 10)});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].text, "a b c");
}

TEST(MergeWords, OrderInvariantAndMatchesOracle) {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<TextBox> words;
        const int n = 4 + int(rng() % 10);
        for (int i = 0; i < n; ++i)
            words.push_back(box("w" + std::to_string(i), int(rng() % 120), int(rng() % 40), 6 + int(rng() % 30),
                                8 + int(rng() % 8)));
        const auto expected = oracle::box_set(oracle::merge(words, 10));
        const auto reference = merge_words(words);
        EXPECT_EQ(oracle::box_set(reference), expected);
        for (int p = 0; p < 25; ++p) {
            std::shuffle(words.begin(), words.end(), rng);
            ASSERT_EQ(merge_words(words), reference) << "trial " << trial << " permutation " << p;
        }
    }
}

TEST(GroupAligned, LargestComponentWins) {
    const BBox plot{50, 0, 300, 200};
    const auto g = group_aligned({box("a", 100, 20, 30), box("b", 160, 22, 30), box("c", 220, 18, 30),
                                  box("stray", 400, 120, 30)},
                                 plot);
    EXPECT_EQ(texts(g.members), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(g.orientation, LegendOrientation::Horizontal);
}

TEST(GroupAligned, SingleBoxIsSingletonLegend) {
    const auto g = group_aligned({box("Ours", 300, 30, 24)}, BBox{50, 0, 300, 200});
    EXPECT_EQ(texts(g.members), (std::vector<std::string>{"Ours"}));
}

TEST(GroupAligned, TieGoesToTopRight) {
    const BBox plot{50, 0, 300, 200};
    const auto g = group_aligned({box("far1", 60, 150, 30), box("far2", 60, 170, 30), box("near1", 300, 10, 30),
                                  box("near2", 300, 30, 30)},
                                 plot);
    EXPECT_EQ(texts(g.members), (std::vector<std::string>{"near1", "near2"}));
    EXPECT_EQ(g.orientation, LegendOrientation::Vertical);
}

TEST(GroupAligned, NothingToGroup) {
    EXPECT_EQ(error_of([] { group_aligned({}, BBox{0, 0, 10, 10}); }), ErrorCode::NoLegendFound);
}

TEST(GroupAligned, ComponentsPartitionInput) {
    std::mt19937 rng(9);
    for (int t = 0; t < 200; ++t) {
        std::vector<TextBox> v;
        const int n = 1 + int(rng() % 12);
        for (int i = 0; i < n; ++i) v.push_back(box("b" + std::to_string(i), int(rng() % 200), int(rng() % 200), 20));
        const auto comps = aligned_components(v);
        std::size_t total = 0, largest = 0;
        std::multiset<std::tuple<std::string, int, int, int, int>> seen;
        for (const auto& c : comps) {
            total += c.size();
            largest = std::max(largest, c.size());
            const auto s = oracle::box_set(c);
            seen.insert(s.begin(), s.end());
        }
        EXPECT_EQ(total, v.size());
        EXPECT_EQ(seen, oracle::box_set(v));
        EXPECT_EQ(group_aligned(v, BBox{0, 0, 200, 200}).members.size(), largest);
    }
}

TEST(EstimateSwatch, FlatSwatchIsExactAtEveryTolerance) {
    Raster img(200, 60);
    img.fill_rect({80, 20, 10, 10}, {31, 119, 180});
    const BBox name{94, 19, 40, 12};
    for (int tol = 0; tol <= 30; ++tol) {
        const auto s = estimate_swatch_color(img, name, tol);
        EXPECT_EQ(s.color, (Rgb{31, 119, 180}));
        EXPECT_EQ(s.box, (BBox{80, 20, 10, 10}));
        EXPECT_EQ(s.pixels, 100);
    }
}

TEST(EstimateSwatch, SwatchOnTheRight) {
    Raster img(200, 60);
    img.fill_rect({140, 20, 12, 12}, {214, 39, 40});
    EXPECT_EQ(estimate_swatch_color(img, BBox{94, 20, 40, 12}).color, (Rgb{214, 39, 40}));
}

TEST(EstimateSwatch, NoisySwatchMeanOfGrownGroup) {
    std::mt19937 rng(10);
    std::uniform_int_distribution<int> noise(28, 34);
    for (int t = 0; t < 50; ++t) {
        Raster img(120, 40);
        long sum = 0;
        for (int y = 10; y < 20; ++y)
            for (int x = 40; x < 50; ++x) {
                const int r = noise(rng);
                sum += r;
                img.set(x, y, {std::uint8_t(r), 119, 180});
            }
        const auto s = estimate_swatch_color(img, BBox{54, 9, 40, 12});
        EXPECT_NEAR(s.color.r, 31, 3);
        EXPECT_EQ(s.color.g, 119);
        if (s.pixels == 100) {
            EXPECT_EQ(s.color.r, (sum + 50) / 100);
        }
    }
}

TEST(EstimateSwatch, NothingBesideTheName) {
    Raster img(120, 40);
    EXPECT_EQ(error_of([&] { estimate_swatch_color(img, BBox{54, 9, 40, 12}); }), ErrorCode::NoSwatchFound);
    img.fill_rect({45, 12, 2, 2}, {214, 39, 40});  // 4 px speck
    EXPECT_EQ(error_of([&] { estimate_swatch_color(img, BBox{54, 9, 40, 12}); }), ErrorCode::NoSwatchFound);
}

TEST(GrowRegions, GroupsPartitionTheArea) {
    std::mt19937 rng(11);
    Raster img(30, 20);
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 30; ++x) img.set(x, y, {std::uint8_t(100 + rng() % 12), 50, 50});
    const BBox area{3, 2, 20, 15};
    long total = 0;
    for (const auto& g : grow_regions(img, area, 5)) total += g.size;
    EXPECT_EQ(total, area.area());
}

TEST(GrowRegions, LargestGroupMonotoneInTolerance) {
    std::mt19937 rng(12);
    for (int t = 0; t < 300; ++t) {
        const int w = 6 + int(rng() % 20), h = 6 + int(rng() % 12);
        const int spread = 2 + int(rng() % 14);
        Raster img(w, h);
        const int base = 60 + int(rng() % 120);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                img.set(x, y, {std::uint8_t(base + int(rng() % spread)), std::uint8_t(base), std::uint8_t(base)});
        long prev = 0;
        for (int tol = 0; tol <= 12; ++tol) {
            long largest = 0;
            for (const auto& g : grow_regions(img, {0, 0, w, h}, tol)) largest = std::max(largest, g.size);
            EXPECT_GE(largest, prev) << "trial " << t << " tolerance " << tol;
            prev = largest;
        }
    }
}

TEST(MakeNamesUnique, NumbersRepeats) {
    std::vector<LegendEntry> e = {{"A", {}, {}, {}}, {"B", {}, {}, {}}, {"A", {}, {}, {}}, {"A", {}, {}, {}}};
    make_names_unique(e);
    EXPECT_EQ(e[2].name, "A (2)");
    EXPECT_EQ(e[3].name, "A (3)");
    EXPECT_EQ(e[1].name, "B");
}

TEST(EstimateSwatch, RecoversEverySyntheticLegendColor) {
    for (const auto& e : cached_corpus(200, 42)) {
        const auto jittered = synth::perturb(e.chart.raster, 4, e.spec.rng_seed);
        for (const auto& entry : e.chart.truth.legend) {
            const auto s = estimate_swatch_color(e.chart.raster, entry.name_box);
            EXPECT_EQ(s.color, entry.color) << e.id << " " << entry.name;
            EXPECT_EQ(s.box, entry.swatch_box) << e.id << " " << entry.name;
            const auto n = estimate_swatch_color(jittered, entry.name_box);
            EXPECT_LE(std::abs(n.color.r - entry.color.r), 5) << e.id;
            EXPECT_LE(std::abs(n.color.g - entry.color.g), 5) << e.id;
            EXPECT_LE(std::abs(n.color.b - entry.color.b), 5) << e.id;
        }
    }
}
