#pragma once

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "fgf/error.hpp"
#include "fgf/image.hpp"

namespace fgf {

/// Clamp to [0,1] then round half up to an integer in [0, max_value].
/// NaN maps to 0.
inline std::uint32_t quantize(double v, std::uint32_t max_value) noexcept {
    if (!(v > 0.0)) return 0;
    if (v >= 1.0) return max_value;
    return static_cast<std::uint32_t>(std::floor(v * max_value + 0.5));
}

namespace detail {

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError(IoErrc::file_not_found, path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoErrc::file_not_found, path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoErrc::write_failed, "cannot open " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(IoErrc::write_failed, path.string());
}

inline constexpr std::uint8_t png_signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

inline bool has_png_signature(const std::vector<std::uint8_t>& bytes) {
    return bytes.size() >= 8 && std::equal(std::begin(png_signature), std::end(png_signature),
                                            bytes.begin());
}

// ---- PGM / PPM (binary P5 / P6) -------------------------------------------

class PnmHeaderReader {
public:
    explicit PnmHeaderReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    unsigned long next_number(const std::string& what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw IoError(IoErrc::corrupt_data, "PNM header: expected " + what);
        }
        unsigned long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + static_cast<unsigned long>(bytes_[pos_++] - '0');
            if (v > 0xFFFFFFFFul) throw IoError(IoErrc::corrupt_data, "PNM header: " + what);
        }
        return v;
    }

    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw IoError(IoErrc::corrupt_data, "PNM header not terminated");
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 2;
};

inline MultiImage decode_pnm(const std::vector<std::uint8_t>& bytes) {
    const std::size_t channels = bytes[1] == '5' ? 1 : 3;
    PnmHeaderReader header(bytes);
    const auto width = header.next_number("width");
    const auto height = header.next_number("height");
    const auto max_value = header.next_number("maxval");
    if (width == 0 || height == 0 || width > (1ul << 24) || height > (1ul << 24)) {
        throw IoError(IoErrc::corrupt_data, "PNM dimensions out of range");
    }
    if (max_value == 0 || max_value > 65535) {
        throw IoError(IoErrc::corrupt_data, "PNM maxval out of range");
    }
    const std::size_t offset = header.raster_offset();
    const std::size_t sample_bytes = max_value > 255 ? 2 : 1;
    const std::size_t samples = width * height * channels;
    if (bytes.size() - offset < samples * sample_bytes) {
        throw IoError(IoErrc::corrupt_data, "PNM raster truncated");
    }

    std::vector<ImagePlane> planes(channels, ImagePlane(width, height));
    const double scale = 1.0 / static_cast<double>(max_value);
    const std::uint8_t* src = bytes.data() + offset;
    for (std::size_t i = 0; i < width * height; ++i) {
        for (std::size_t c = 0; c < channels; ++c) {
            unsigned v = *src++;
            if (sample_bytes == 2) v = (v << 8) | *src++;
            if (v > max_value) throw IoError(IoErrc::corrupt_data, "PNM sample exceeds maxval");
            planes[c].values()[i] = static_cast<float>(v * scale);
        }
    }
    return MultiImage(std::move(planes));
}

inline std::vector<std::uint8_t> encode_pnm(const MultiImage& img, int bit_depth) {
    if (img.channels() != 1 && img.channels() != 3) {
        throw IoError(IoErrc::unsupported_format, "PGM/PPM need 1 or 3 channels");
    }
    const std::uint32_t max_value = bit_depth == 16 ? 65535 : 255;
    const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") + "\n" +
                               std::to_string(img.width()) + " " + std::to_string(img.height()) +
                               "\n" + std::to_string(max_value) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + img.width() * img.height() * img.channels() * (bit_depth / 8));
    for (std::size_t i = 0; i < img.width() * img.height(); ++i) {
        for (std::size_t c = 0; c < img.channels(); ++c) {
            const std::uint32_t q = quantize(img[c].values()[i], max_value);
            if (bit_depth == 16) out.push_back(static_cast<std::uint8_t>(q >> 8));
            out.push_back(static_cast<std::uint8_t>(q & 0xFF));
        }
    }
    return out;
}

// ---- PNG ----------------------------------------------------------------

struct PngContext {
    const std::uint8_t* data = nullptr;
    std::size_t size = 0;
    std::size_t pos = 0;
    std::vector<std::uint8_t>* sink = nullptr;
    char message[256] = {};
};

extern "C" inline void fgf_png_error(png_structp png, png_const_charp msg) {
    auto* ctx = static_cast<PngContext*>(png_get_error_ptr(png));
    std::strncpy(ctx->message, msg, sizeof(ctx->message) - 1);
    png_longjmp(png, 1);
}

extern "C" inline void fgf_png_warning(png_structp, png_const_charp) {}

extern "C" inline void fgf_png_read(png_structp png, png_bytep out, png_size_t length) {
    auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
    if (ctx->size - ctx->pos < length) png_error(png, "unexpected end of PNG data");
    std::memcpy(out, ctx->data + ctx->pos, length);
    ctx->pos += length;
}

extern "C" inline void fgf_png_write(png_structp png, png_bytep in, png_size_t length) {
    auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
    ctx->sink->insert(ctx->sink->end(), in, in + length);
}

extern "C" inline void fgf_png_flush(png_structp) {}

struct PngReadHandles {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadHandles() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct PngWriteHandles {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteHandles() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

// libpng reports errors by longjmp. Only trivially destructible state is
// created between each setjmp and the libpng calls it guards.
inline MultiImage decode_png(const std::vector<std::uint8_t>& bytes) {
    PngContext ctx;
    ctx.data = bytes.data();
    ctx.size = bytes.size();
    PngReadHandles h;
    h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &ctx, fgf_png_error, fgf_png_warning);
    if (!h.png) throw IoError(IoErrc::corrupt_data, "cannot create PNG reader");
    h.info = png_create_info_struct(h.png);
    if (!h.info) throw IoError(IoErrc::corrupt_data, "cannot create PNG info");
    png_set_read_fn(h.png, &ctx, fgf_png_read);

    if (setjmp(png_jmpbuf(h.png))) throw IoError(IoErrc::corrupt_data, ctx.message);
    png_read_info(h.png, h.info);
    const int color_type = png_get_color_type(h.png, h.info);
    const int source_depth = png_get_bit_depth(h.png, h.info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(h.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && source_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(h.png);
    }
    png_set_strip_alpha(h.png);
    png_read_update_info(h.png, h.info);
    const std::size_t width = png_get_image_width(h.png, h.info);
    const std::size_t height = png_get_image_height(h.png, h.info);
    const std::size_t channels = png_get_channels(h.png, h.info);
    const int depth = png_get_bit_depth(h.png, h.info);
    const std::size_t row_bytes = png_get_rowbytes(h.png, h.info);

    if ((channels != 1 && channels != 3) || (depth != 8 && depth != 16)) {
        throw IoError(IoErrc::unsupported_format, "PNG layout not supported");
    }
    std::vector<std::uint8_t> raster(row_bytes * height);
    std::vector<png_bytep> rows(height);
    for (std::size_t y = 0; y < height; ++y) rows[y] = raster.data() + y * row_bytes;

    if (setjmp(png_jmpbuf(h.png))) throw IoError(IoErrc::corrupt_data, ctx.message);
    png_read_image(h.png, rows.data());
    png_read_end(h.png, nullptr);

    std::vector<ImagePlane> planes(channels, ImagePlane(width, height));
    const double scale = depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
    for (std::size_t y = 0; y < height; ++y) {
        const std::uint8_t* src = rows[y];
        for (std::size_t x = 0; x < width; ++x) {
            for (std::size_t c = 0; c < channels; ++c) {
                unsigned v = *src++;
                if (depth == 16) v = (v << 8) | *src++;
                planes[c](x, y) = static_cast<float>(v * scale);
            }
        }
    }
    return MultiImage(std::move(planes));
}

inline std::vector<std::uint8_t> encode_png(const MultiImage& img, int bit_depth) {
    static constexpr int color_types[] = {PNG_COLOR_TYPE_GRAY, PNG_COLOR_TYPE_GRAY_ALPHA,
                                          PNG_COLOR_TYPE_RGB, PNG_COLOR_TYPE_RGB_ALPHA};
    const std::size_t width = img.width();
    const std::size_t height = img.height();
    const std::size_t channels = img.channels();
    const std::size_t sample_bytes = bit_depth == 16 ? 2 : 1;
    const std::uint32_t max_value = bit_depth == 16 ? 65535 : 255;

    const std::size_t row_bytes = width * channels * sample_bytes;
    std::vector<std::uint8_t> raster(row_bytes * height);
    std::vector<png_bytep> rows(height);
    for (std::size_t y = 0; y < height; ++y) {
        std::uint8_t* dst = raster.data() + y * row_bytes;
        rows[y] = dst;
        for (std::size_t x = 0; x < width; ++x) {
            for (std::size_t c = 0; c < channels; ++c) {
                const std::uint32_t q = quantize(img[c](x, y), max_value);
                if (sample_bytes == 2) *dst++ = static_cast<std::uint8_t>(q >> 8);
                *dst++ = static_cast<std::uint8_t>(q & 0xFF);
            }
        }
    }

    std::vector<std::uint8_t> out;
    PngContext ctx;
    ctx.sink = &out;
    PngWriteHandles h;
    h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &ctx, fgf_png_error, fgf_png_warning);
    if (!h.png) throw IoError(IoErrc::write_failed, "cannot create PNG writer");
    h.info = png_create_info_struct(h.png);
    if (!h.info) throw IoError(IoErrc::write_failed, "cannot create PNG info");

    if (setjmp(png_jmpbuf(h.png))) throw IoError(IoErrc::write_failed, ctx.message);
    png_set_write_fn(h.png, &ctx, fgf_png_write, fgf_png_flush);
    png_set_IHDR(h.png, h.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, color_types[channels - 1], PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(h.png, h.info);
    png_write_image(h.png, rows.data());
    png_write_end(h.png, nullptr);
    return out;
}

inline std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

} // namespace detail

/// Reads a PNG or binary PGM/PPM file (detected from its content) into
/// planes normalized to [0,1]. Alpha channels are dropped.
inline MultiImage decode(const std::filesystem::path& path) {
    const auto bytes = detail::read_bytes(path);
    if (detail::has_png_signature(bytes)) return detail::decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        if (bytes[1] == '5' || bytes[1] == '6') return detail::decode_pnm(bytes);
        if (std::isdigit(bytes[1])) {
            throw IoError(IoErrc::unsupported_format, "only binary PGM (P5) and PPM (P6) are read");
        }
    }
    if (bytes.empty()) throw IoError(IoErrc::corrupt_data, "empty file " + path.string());
    throw IoError(IoErrc::unsupported_format, path.string());
}

/// Writes `img` in the format named by the path's extension (.png, .pgm,
/// .ppm, .pnm). Values are clamped to [0,1] and rounded half up.
inline void encode(const MultiImage& img, const std::filesystem::path& path, int bit_depth = 8) {
    if (bit_depth != 8 && bit_depth != 16) throw ParameterError("bit depth must be 8 or 16");
    const std::string ext = detail::lower_extension(path);
    if (ext == ".png") {
        detail::write_bytes(path, detail::encode_png(img, bit_depth));
    } else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
        detail::write_bytes(path, detail::encode_pnm(img, bit_depth));
    } else {
        throw IoError(IoErrc::unsupported_format, "unknown output extension '" + ext + "'");
    }
}

inline void encode(const ImagePlane& plane, const std::filesystem::path& path, int bit_depth = 8) {
    encode(MultiImage(plane), path, bit_depth);
}

} // namespace fgf
