#ifndef CHARTPARSER_IMAGE_IO_HPP
#define CHARTPARSER_IMAGE_IO_HPP

// PNG goes through libpng's simplified API; JPEG through libjpeg with a
// setjmp error handler. Both decoders produce an opaque RGB raster.

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <png.h>
#include <jpeglib.h>

#include "chartparser/error.hpp"
#include "chartparser/raster.hpp"

namespace chartparser {

namespace detail {

inline bool has_png_signature(std::span<const std::uint8_t> bytes) {
    static constexpr std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

inline bool has_jpeg_signature(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

// Alpha is composited over white with round-half-up.
inline std::uint8_t over_white(std::uint8_t c, std::uint8_t a) {
    return std::uint8_t((int(c) * int(a) + 255 * (255 - int(a)) + 127) / 255);
}

inline Raster decode_png(std::span<const std::uint8_t> bytes) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw Error(ErrorCode::DecodeError, std::string("png header: ") + image.message);
    image.format = PNG_FORMAT_RGBA;
    std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorCode::DecodeError, "png data: " + msg);
    }
    const int w = int(image.width), h = int(image.height);
    std::vector<Rgb> px(std::size_t(w) * std::size_t(h));
    for (std::size_t i = 0; i < px.size(); ++i) {
        const std::uint8_t* p = &rgba[4 * i];
        px[i] = {over_white(p[0], p[3]), over_white(p[1], p[3]), over_white(p[2], p[3])};
    }
    return Raster(w, h, std::move(px));
}

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

extern "C" inline void jpeg_error_exit_to_jump(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, mgr->message);
    std::longjmp(mgr->jump, 1);
}

extern "C" inline void jpeg_silence(j_common_ptr) {}

// Locals touched after setjmp live on the heap so a longjmp back here leaves
// them in a defined state.
inline Raster decode_jpeg(std::span<const std::uint8_t> bytes) {
    auto cinfo = std::make_unique<jpeg_decompress_struct>();
    auto err = std::make_unique<JpegErrorManager>();
    auto rgb = std::make_unique<std::vector<std::uint8_t>>();
    cinfo->err = jpeg_std_error(&err->pub);
    err->pub.error_exit = jpeg_error_exit_to_jump;
    err->pub.output_message = jpeg_silence;
    err->message[0] = '\0';

    if (setjmp(err->jump)) {
        jpeg_destroy_decompress(cinfo.get());
        throw Error(ErrorCode::DecodeError, std::string("jpeg: ") + err->message);
    }
    jpeg_create_decompress(cinfo.get());
    jpeg_mem_src(cinfo.get(), bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(cinfo.get(), TRUE);
    cinfo->out_color_space = JCS_RGB;
    jpeg_start_decompress(cinfo.get());
    const std::size_t stride = std::size_t(cinfo->output_width) * 3;
    rgb->resize(stride * cinfo->output_height);
    while (cinfo->output_scanline < cinfo->output_height) {
        JSAMPROW row = rgb->data() + stride * cinfo->output_scanline;
        jpeg_read_scanlines(cinfo.get(), &row, 1);
    }
    // libjpeg pads a truncated stream with a fake EOI and only warns.
    const bool truncated = cinfo->err->num_warnings > 0;
    jpeg_finish_decompress(cinfo.get());
    const int w = int(cinfo->output_width), h = int(cinfo->output_height);
    jpeg_destroy_decompress(cinfo.get());
    if (truncated) throw Error(ErrorCode::DecodeError, "jpeg: corrupt or truncated stream");

    std::vector<Rgb> px(std::size_t(w) * std::size_t(h));
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = {(*rgb)[3 * i], (*rgb)[3 * i + 1], (*rgb)[3 * i + 2]};
    return Raster(w, h, std::move(px));
}

}  // namespace detail

/// Decodes a PNG or JPEG byte stream. Throws Error(DecodeError).
inline Raster decode_image(std::span<const std::uint8_t> bytes) {
    if (detail::has_png_signature(bytes)) return detail::decode_png(bytes);
    if (detail::has_jpeg_signature(bytes)) return detail::decode_jpeg(bytes);
    throw Error(ErrorCode::DecodeError, "unrecognized image format");
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::DecodeError, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Raster read_image(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    return decode_image(bytes);
}

inline std::vector<std::uint8_t> encode_png(const Raster& img) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = png_uint_32(img.width());
    image.height = png_uint_32(img.height());
    image.format = PNG_FORMAT_RGB;

    std::vector<std::uint8_t> rgb;
    rgb.reserve(img.pixels().size() * 3);
    for (Rgb c : img.pixels()) {
        rgb.push_back(c.r);
        rgb.push_back(c.g);
        rgb.push_back(c.b);
    }
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, rgb.data(), 0, nullptr))
        throw std::runtime_error(std::string("png encode: ") + image.message);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, rgb.data(), 0, nullptr))
        throw std::runtime_error(std::string("png encode: ") + image.message);
    out.resize(size);
    return out;
}

inline std::vector<std::uint8_t> encode_jpeg(const Raster& img, int quality = 90) {
    jpeg_compress_struct cinfo;
    jpeg_error_mgr jerr;
    cinfo.err = jpeg_std_error(&jerr);
    jpeg_create_compress(&cinfo);
    unsigned char* buffer = nullptr;
    unsigned long size = 0;
    jpeg_mem_dest(&cinfo, &buffer, &size);
    cinfo.image_width = JDIMENSION(img.width());
    cinfo.image_height = JDIMENSION(img.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    std::vector<std::uint8_t> row(std::size_t(img.width()) * 3);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Rgb c = img.at(x, y);
            row[3 * x] = c.r;
            row[3 * x + 1] = c.g;
            row[3 * x + 2] = c.b;
        }
        JSAMPROW r = row.data();
        jpeg_write_scanlines(&cinfo, &r, 1);
    }
    jpeg_finish_compress(&cinfo);
    std::vector<std::uint8_t> out(buffer, buffer + size);
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    return out;
}

inline void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

inline void write_png(const std::filesystem::path& path, const Raster& img) {
    write_file_bytes(path, encode_png(img));
}

}  // namespace chartparser

#endif
