#include <gtest/gtest.h>

#include <random>

#include "chartparser/image_io.hpp"
#include "test_util.hpp"

using namespace chartparser;

namespace {
const std::filesystem::path kImages = std::filesystem::path(CHARTPARSER_TEST_DATA) / "data" / "images";

std::optional<ErrorCode> decode_error_code(std::span<const std::uint8_t> bytes) {
    return error_of([&] { decode_image(bytes); });
}
}  // namespace

TEST(DecodeImage, WhitePixel) {
    const Raster r = read_image(kImages / "white_1x1.png");
    EXPECT_EQ(r, Raster(1, 1, kWhite));
}

TEST(DecodeImage, BlackThenRed) {
    const Raster r = read_image(kImages / "black_red_2x1.png");
    EXPECT_EQ(r, Raster(2, 1, std::vector<Rgb>{{0, 0, 0}, {255, 0, 0}}));
}

TEST(DecodeImage, AlphaCompositedOverWhite) {
    const Raster r = read_image(kImages / "alpha_2x1.png");
    // 128/255 red over white: green and blue are 255*127/255 rounded.
    EXPECT_EQ(r.at(0, 0), (Rgb{255, 127, 127}));
    EXPECT_EQ(r.at(1, 0), kWhite);
}

TEST(DecodeImage, GrayAndPaletteExpandToRgb) {
    const Raster g = read_image(kImages / "gray_3x1.png");
    EXPECT_EQ(g, Raster(3, 1, std::vector<Rgb>{{0, 0, 0}, {128, 128, 128}, {255, 255, 255}}));
    const Raster p = read_image(kImages / "palette_4x2.png");
    EXPECT_EQ(p.width(), 4);
    EXPECT_EQ(p.height(), 2);
    EXPECT_EQ(p.at(3, 1), (Rgb{31, 119, 180}));
}

TEST(DecodeImage, JpegWithinCompressionNoise) {
    const Raster r = read_image(kImages / "flat_16x16.jpg");
    ASSERT_EQ(r.width(), 16);
    ASSERT_EQ(r.height(), 16);
    for (const Rgb& c : r.pixels()) {
        EXPECT_NEAR(c.r, 31, 3);
        EXPECT_NEAR(c.g, 119, 3);
        EXPECT_NEAR(c.b, 180, 3);
    }
}

TEST(DecodeImage, TruncatedStreamsFail) {
    for (const char* name : {"flat_16x8.png", "flat_16x16.jpg"}) {
        auto bytes = read_file_bytes(kImages / name);
        bytes.resize(bytes.size() / 2);
        EXPECT_EQ(decode_error_code(bytes), ErrorCode::DecodeError) << name;
    }
}

TEST(DecodeImage, GarbageAndEmptyFail) {
    const std::vector<std::uint8_t> garbage = {'G', 'I', 'F', '8', '9', 'a', 0, 1, 2, 3};
    EXPECT_EQ(decode_error_code(garbage), ErrorCode::DecodeError);
    EXPECT_EQ(decode_error_code({}), ErrorCode::DecodeError);
}

TEST(DecodeImage, MissingFileIsDecodeError) {
    EXPECT_EQ(error_of([] { read_image(kImages / "does_not_exist.png"); }), ErrorCode::DecodeError);
}

TEST(EncodePng, RoundTripsPixelsExactly) {
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        const int w = 1 + int(rng() % 40), h = 1 + int(rng() % 40);
        Raster img(w, h);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) img.set(x, y, {std::uint8_t(rng()), std::uint8_t(rng()), std::uint8_t(rng())});
        const auto once = decode_image(encode_png(img));
        EXPECT_EQ(once, img);
        EXPECT_EQ(decode_image(encode_png(once)), img);
    }
}

TEST(EncodeJpeg, DecodesToSameSize) {
    const Raster img(33, 17, Rgb{200, 30, 30});
    const Raster back = decode_image(encode_jpeg(img, 95));
    EXPECT_EQ(back.width(), 33);
    EXPECT_EQ(back.height(), 17);
    EXPECT_NEAR(back.at(10, 10).r, 200, 4);
}
