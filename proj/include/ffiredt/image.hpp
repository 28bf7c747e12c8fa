#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ffiredt/color.hpp"

namespace ffiredt {

struct Rgb8 {
    std::uint8_t r = 0, g = 0, b = 0;

    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// Decoded image: row-major RGB grid, 8 bits per channel, immutable after
/// construction. Safe to share between worker threads.
class RasterImage {
public:
    /// Throws DecodeError unless width, height >= 1 and pixels has exactly
    /// width * height entries.
    RasterImage(int width, int height, std::vector<Rgb8> pixels, std::uint64_t id = 0);

    static RasterImage filled(int width, int height, Rgb8 color, std::uint64_t id = 0);

    int width() const { return width_; }
    int height() const { return height_; }
    std::uint64_t id() const { return id_; }
    void set_id(std::uint64_t id) { id_ = id; }

    const Rgb8& at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    Rgb rgb_at(int x, int y) const {
        const Rgb8& p = at(x, y);
        return {static_cast<double>(p.r), static_cast<double>(p.g), static_cast<double>(p.b)};
    }
    std::span<const Rgb8> pixels() const { return pixels_; }
    std::size_t pixel_count() const { return pixels_.size(); }

private:
    int width_;
    int height_;
    std::uint64_t id_;
    std::vector<Rgb8> pixels_;
};

/// Decodes a PNG or JPEG payload. Alpha is dropped, grayscale is replicated
/// to three equal channels. Throws DecodeError on malformed payloads (naming
/// the failure reason and, where known, the byte offset) and a distinct
/// DecodeError for unsupported formats.
RasterImage decode_image(std::span<const std::uint8_t> bytes, std::uint64_t id = 0);

RasterImage load_image(const std::filesystem::path& path, std::uint64_t id = 0);

std::vector<std::uint8_t> encode_png(const RasterImage& image);

void save_png(const RasterImage& image, const std::filesystem::path& path);

}  // namespace ffiredt
