#include "ffiredt/image.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <jpeglib.h>
#include <png.h>

#include "ffiredt/error.hpp"

namespace ffiredt {

RasterImage::RasterImage(int width, int height, std::vector<Rgb8> pixels, std::uint64_t id)
    : width_(width), height_(height), id_(id), pixels_(std::move(pixels)) {
    if (width_ < 1 || height_ < 1) {
        throw DecodeError("image dimensions must be at least 1x1");
    }
    if (pixels_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
        throw DecodeError("pixel buffer size does not match width * height");
    }
}

RasterImage RasterImage::filled(int width, int height, Rgb8 color, std::uint64_t id) {
    return RasterImage(width, height,
                       std::vector<Rgb8>(static_cast<std::size_t>(width) * height, color), id);
}

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool looks_like_png(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0;
}

bool looks_like_jpeg(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff;
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

// State shared with the libpng callbacks. Longjmp-crossed frames must only
// hold trivially destructible data, so the row buffers live outside of it.
struct PngReadState {
    std::span<const std::uint8_t> bytes;
    std::size_t offset = 0;
    char message[256] = "unknown libpng failure";
};

void png_error_to_state(png_structp png, png_const_charp msg) {
    auto* state = static_cast<PngReadState*>(png_get_error_ptr(png));
    std::snprintf(state->message, sizeof(state->message), "%s", msg);
    png_longjmp(png, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

void png_read_from_span(png_structp png, png_bytep out, png_size_t length) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (state->offset + length > state->bytes.size()) {
        std::snprintf(state->message, sizeof(state->message),
                      "truncated PNG stream at byte offset %zu (wanted %zu more bytes)",
                      state->offset, static_cast<std::size_t>(length));
        png_longjmp(png, 1);
    }
    std::memcpy(out, state->bytes.data() + state->offset, length);
    state->offset += length;
}

RasterImage decode_png(std::span<const std::uint8_t> bytes, std::uint64_t id) {
    PngReadState state;
    state.bytes = bytes;

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state,
                                             png_error_to_state, png_warning_ignore);
    if (!png) throw DecodeError("failed to allocate PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DecodeError("failed to allocate PNG info");
    }

    std::vector<Rgb8> pixels;
    std::vector<png_byte> row;
    png_uint_32 width = 0, height = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError(std::string("PNG decode error: ") + state.message +
                          " (at byte offset " + std::to_string(state.offset) + ")");
    }

    png_set_read_fn(png, &state, png_read_from_span);
    png_read_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    // Normalize every variant to 8-bit RGB; alpha is dropped, gray replicated.
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (png_get_rowbytes(png, info) != width * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("PNG decode error: unexpected row stride after normalization");
    }

    pixels.resize(static_cast<std::size_t>(width) * height);
    row.resize(width * 3);
    for (png_uint_32 y = 0; y < height; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (png_uint_32 x = 0; x < width; ++x) {
            pixels[static_cast<std::size_t>(y) * width + x] = {row[x * 3], row[x * 3 + 1],
                                                               row[x * 3 + 2]};
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels), id);
}

// ---------------------------------------------------------------------------
// JPEG
// ---------------------------------------------------------------------------

struct JpegErrorState {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX] = "unknown libjpeg failure";
};

void jpeg_error_to_state(j_common_ptr cinfo) {
    auto* state = reinterpret_cast<JpegErrorState*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, state->message);
    std::longjmp(state->jump, 1);
}

void jpeg_emit_quiet(j_common_ptr cinfo, int msg_level) {
    // Corrupt-data warnings are counted and rejected after decoding; trace
    // messages are dropped.
    if (msg_level < 0) cinfo->err->num_warnings++;
}

RasterImage decode_jpeg(std::span<const std::uint8_t> bytes, std::uint64_t id) {
    jpeg_decompress_struct cinfo;
    JpegErrorState err;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_error_to_state;
    err.mgr.emit_message = jpeg_emit_quiet;

    std::vector<Rgb8> pixels;
    std::vector<JSAMPLE> row;
    unsigned width = 0, height = 0;

    if (setjmp(err.jump)) {
        const std::size_t consumed =
            bytes.size() - (cinfo.src ? cinfo.src->bytes_in_buffer : bytes.size());
        jpeg_destroy_decompress(&cinfo);
        throw DecodeError(std::string("JPEG decode error: ") + err.message +
                          " (near byte offset " + std::to_string(consumed) + ")");
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    width = cinfo.output_width;
    height = cinfo.output_height;
    pixels.resize(static_cast<std::size_t>(width) * height);
    row.resize(static_cast<std::size_t>(width) * cinfo.output_components);

    while (cinfo.output_scanline < height) {
        const unsigned y = cinfo.output_scanline;
        JSAMPROW rows[1] = {row.data()};
        jpeg_read_scanlines(&cinfo, rows, 1);
        for (unsigned x = 0; x < width; ++x) {
            pixels[static_cast<std::size_t>(y) * width + x] = {row[x * 3], row[x * 3 + 1],
                                                               row[x * 3 + 2]};
        }
    }
    jpeg_finish_decompress(&cinfo);
    const long warnings = err.mgr.num_warnings;
    jpeg_destroy_decompress(&cinfo);

    if (warnings > 0) {
        throw DecodeError("JPEG decode error: corrupt or truncated stream (" +
                          std::to_string(warnings) + " data warnings)");
    }
    return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels), id);
}

}  // namespace

RasterImage decode_image(std::span<const std::uint8_t> bytes, std::uint64_t id) {
    if (looks_like_png(bytes)) return decode_png(bytes, id);
    if (looks_like_jpeg(bytes)) return decode_jpeg(bytes, id);
    throw UnsupportedFormatError("unsupported image format: payload is neither PNG nor JPEG");
}

RasterImage load_image(const std::filesystem::path& path, std::uint64_t id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DecodeError("cannot open image file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode_image(bytes, id);
    } catch (const DecodeError& e) {
        throw DecodeError(path.string() + ": " + e.what());
    }
}

namespace {

void png_write_to_vector(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

}  // namespace

std::vector<std::uint8_t> encode_png(const RasterImage& image) {
    std::vector<std::uint8_t> out;
    PngReadState state;  // reused only for its message buffer

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state,
                                              png_error_to_state, png_warning_ignore);
    if (!png) throw Error("failed to allocate PNG writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("failed to allocate PNG info");
    }

    std::vector<png_byte> row;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(std::string("PNG encode error: ") + state.message);
    }

    png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
    png_set_IHDR(png, info, image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    row.resize(static_cast<std::size_t>(image.width()) * 3);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            const Rgb8& p = image.at(x, y);
            row[x * 3] = p.r;
            row[x * 3 + 1] = p.g;
            row[x * 3 + 2] = p.b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

void save_png(const RasterImage& image, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed writing " + path.string());
}

}  // namespace ffiredt
