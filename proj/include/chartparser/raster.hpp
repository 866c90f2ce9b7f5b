#ifndef CHARTPARSER_RASTER_HPP
#define CHARTPARSER_RASTER_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace chartparser {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};

/// Squared euclidean distance in RGB space.
inline constexpr int squared_distance(Rgb a, Rgb b) {
    const int dr = int(a.r) - int(b.r);
    const int dg = int(a.g) - int(b.g);
    const int db = int(a.b) - int(b.b);
    return dr * dr + dg * dg + db * db;
}

/// Background test shared by legend swatch search and pixel clustering.
inline constexpr bool is_near_white(Rgb c, int floor = 250) {
    return c.r >= floor && c.g >= floor && c.b >= floor;
}

/// Axis-aligned pixel rectangle. Covers columns [x, x+w) and rows [y, y+h).
struct BBox {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    int right() const { return x + w; }
    int bottom() const { return y + h; }
    long area() const { return long(w) * long(h); }
    double center_x() const { return x + w / 2.0; }
    double center_y() const { return y + h / 2.0; }
    bool contains(int px, int py) const { return px >= x && px < x + w && py >= y && py < y + h; }

    friend bool operator==(const BBox&, const BBox&) = default;
};

inline long intersection_area(const BBox& a, const BBox& b) {
    const int w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    const int h = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
    return (w > 0 && h > 0) ? long(w) * long(h) : 0;
}

inline BBox bbox_union(const BBox& a, const BBox& b) {
    const int x0 = std::min(a.x, b.x);
    const int y0 = std::min(a.y, b.y);
    return {x0, y0, std::max(a.right(), b.right()) - x0, std::max(a.bottom(), b.bottom()) - y0};
}

/// Decoded RGB image, row-major, origin top-left.
class Raster {
public:
    Raster(int width, int height, Rgb fill = kWhite)
        : width_(width), height_(height) {
        if (width < 1 || height < 1) throw std::invalid_argument("raster dimensions must be positive");
        pixels_.assign(std::size_t(width) * std::size_t(height), fill);
    }

    Raster(int width, int height, std::vector<Rgb> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        if (width < 1 || height < 1) throw std::invalid_argument("raster dimensions must be positive");
        if (pixels_.size() != std::size_t(width) * std::size_t(height))
            throw std::invalid_argument("pixel count does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::span<const Rgb> pixels() const { return pixels_; }

    Rgb at(int x, int y) const {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return pixels_[index(x, y)];
    }
    void set(int x, int y, Rgb c) {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        pixels_[index(x, y)] = c;
    }

    /// Paints the part of `box` that lies inside the image.
    void fill_rect(const BBox& box, Rgb c) {
        const int x0 = std::max(box.x, 0), x1 = std::min(box.right(), width_);
        const int y0 = std::max(box.y, 0), y1 = std::min(box.bottom(), height_);
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) pixels_[index(x, y)] = c;
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    std::size_t index(int x, int y) const { return std::size_t(y) * std::size_t(width_) + std::size_t(x); }

    int width_;
    int height_;
    std::vector<Rgb> pixels_;
};

/// 1 = ink, 0 = background.
class BinaryImage {
public:
    BinaryImage(int width, int height, bool fill = false)
        : width_(width), height_(height),
          bits_(std::size_t(width) * std::size_t(height), fill ? 1 : 0) {
        if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    bool get(int x, int y) const { return bits_[std::size_t(y) * std::size_t(width_) + std::size_t(x)] != 0; }
    void set(int x, int y, bool v) { bits_[std::size_t(y) * std::size_t(width_) + std::size_t(x)] = v ? 1 : 0; }
    std::span<const std::uint8_t> bits() const { return bits_; }

    long count() const { return long(std::count(bits_.begin(), bits_.end(), std::uint8_t{1})); }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// Longest contiguous ink run per row and per column. The start index of the
/// first longest run is kept so detected axes can report their extent.
struct RunProfile {
    std::vector<int> row_max_run;
    std::vector<int> col_max_run;
    std::vector<int> row_run_start;
    std::vector<int> col_run_start;
};

/// Rec. 601 luma, rounded half up. Integer arithmetic keeps it bit-exact.
inline constexpr int luminance(Rgb c) {
    return (299 * int(c.r) + 587 * int(c.g) + 114 * int(c.b) + 500) / 1000;
}

inline constexpr int kDefaultBinarizeThreshold = 128;

inline BinaryImage binarize(const Raster& img, int threshold = kDefaultBinarizeThreshold) {
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out.set(x, y, luminance(img.at(x, y)) < threshold);
    return out;
}

/// Ink as black, background as white.
inline Raster render(const BinaryImage& bin) {
    Raster out(bin.width(), bin.height());
    for (int y = 0; y < bin.height(); ++y)
        for (int x = 0; x < bin.width(); ++x)
            if (bin.get(x, y)) out.set(x, y, kBlack);
    return out;
}

inline RunProfile run_profiles(const BinaryImage& bin) {
    const int w = bin.width(), h = bin.height();
    RunProfile p;
    p.row_max_run.assign(std::size_t(h), 0);
    p.row_run_start.assign(std::size_t(h), 0);
    p.col_max_run.assign(std::size_t(w), 0);
    p.col_run_start.assign(std::size_t(w), 0);

    for (int y = 0; y < h; ++y) {
        int run = 0;
        for (int x = 0; x < w; ++x) {
            run = bin.get(x, y) ? run + 1 : 0;
            if (run > p.row_max_run[y]) {
                p.row_max_run[y] = run;
                p.row_run_start[y] = x - run + 1;
            }
        }
    }
    for (int x = 0; x < w; ++x) {
        int run = 0;
        for (int y = 0; y < h; ++y) {
            run = bin.get(x, y) ? run + 1 : 0;
            if (run > p.col_max_run[x]) {
                p.col_max_run[x] = run;
                p.col_run_start[x] = y - run + 1;
            }
        }
    }
    return p;
}

}  // namespace chartparser

#endif
