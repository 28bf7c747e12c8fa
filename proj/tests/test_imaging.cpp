#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>

#include "ffiredt/color.hpp"
#include "ffiredt/error.hpp"
#include "ffiredt/image.hpp"
#include "fixtures.hpp"

using namespace ffiredt;
using fixtures::kGray2x2Png;
using fixtures::kGreenJpeg;
using fixtures::kRedPixelPng;

namespace {

std::span<const std::uint8_t> bytes_of(std::span<const unsigned char> arr) {
    return {arr.data(), arr.size()};
}

}  // namespace

TEST_CASE("decode 1x1 red PNG") {
    const RasterImage img = decode_image(bytes_of(kRedPixelPng));
    CHECK(img.width() == 1);
    CHECK(img.height() == 1);
    CHECK(img.at(0, 0) == Rgb8{255, 0, 0});
}

TEST_CASE("grayscale PNG replicates channels") {
    const RasterImage img = decode_image(bytes_of(kGray2x2Png));
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    for (const Rgb8& p : img.pixels()) CHECK(p == Rgb8{7, 7, 7});
}

TEST_CASE("JPEG decodes and truncation is rejected") {
    const RasterImage img = decode_image(bytes_of(kGreenJpeg));
    CHECK(img.width() == 8);
    CHECK(img.height() == 8);

    const auto full = bytes_of(kGreenJpeg);
    CHECK_THROWS_AS(decode_image(full.subspan(0, full.size() / 2)), DecodeError);
}

TEST_CASE("truncated PNG reports the byte offset") {
    const auto full = bytes_of(kRedPixelPng);
    try {
        decode_image(full.subspan(0, 30));
        FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
        CHECK(std::string(e.what()).find("offset") != std::string::npos);
    }
}

TEST_CASE("unsupported format is a distinct error") {
    const std::uint8_t bmp[] = {'B', 'M', 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(decode_image(bmp), UnsupportedFormatError);
    const std::uint8_t empty[] = {0};
    CHECK_THROWS_AS(decode_image({empty, 0}), UnsupportedFormatError);
}

TEST_CASE("PNG encode/decode round trip") {
    std::mt19937_64 rng(7);
    std::vector<Rgb8> pixels;
    for (int i = 0; i < 9 * 5; ++i) {
        pixels.push_back({static_cast<std::uint8_t>(rng() & 0xff),
                          static_cast<std::uint8_t>(rng() & 0xff),
                          static_cast<std::uint8_t>(rng() & 0xff)});
    }
    const RasterImage img(9, 5, pixels, 42);
    const std::vector<std::uint8_t> encoded = encode_png(img);
    const RasterImage back = decode_image(encoded, 42);
    CHECK(back.width() == 9);
    CHECK(back.height() == 5);
    for (int y = 0; y < 5; ++y) {
        for (int x = 0; x < 9; ++x) CHECK(back.at(x, y) == img.at(x, y));
    }
}

TEST_CASE("raster invariants are enforced") {
    CHECK_THROWS_AS(RasterImage(0, 1, {}), DecodeError);
    CHECK_THROWS_AS(RasterImage(2, 2, std::vector<Rgb8>(3)), DecodeError);
}

TEST_CASE("YCbCr matches the full-range BT.601 forms") {
    const Ycbcr gray = rgb_to_ycbcr({128, 128, 128});
    CHECK(gray.y == doctest::Approx(128).epsilon(1e-12));
    CHECK(gray.cb == doctest::Approx(128).epsilon(1e-12));
    CHECK(gray.cr == doctest::Approx(128).epsilon(1e-12));

    const Ycbcr black = rgb_to_ycbcr({0, 0, 0});
    CHECK(black.y == 0.0);
    CHECK(black.cb == 128.0);
    CHECK(black.cr == 128.0);

    const Ycbcr red = rgb_to_ycbcr({255, 0, 0});
    CHECK(red.y == doctest::Approx(76.245).epsilon(1e-9));
    CHECK(red.cb == doctest::Approx(84.97232).epsilon(1e-9));
    CHECK(red.cr == 255.0);  // 255.5 before clamping
}

TEST_CASE("achromatic input always gives neutral chroma") {
    for (int g = 0; g <= 255; ++g) {
        const Ycbcr c = rgb_to_ycbcr({double(g), double(g), double(g)});
        CHECK(c.cb == doctest::Approx(128).epsilon(1e-12));
        CHECK(c.cr == doctest::Approx(128).epsilon(1e-12));
    }
}

TEST_CASE("HSV hexcone") {
    const Hsv red = rgb_to_hsv({255, 0, 0});
    CHECK(red.h == 0.0);
    CHECK(red.s == 1.0);
    CHECK(red.v == 1.0);

    const Hsv gray = rgb_to_hsv({128, 128, 128});
    CHECK(gray.h == 0.0);
    CHECK(gray.s == 0.0);
    CHECK(gray.v == doctest::Approx(128.0 / 255.0));

    const Hsv cyan = rgb_to_hsv({0, 255, 255});
    CHECK(cyan.h == doctest::Approx(180.0));
    CHECK(cyan.s == 1.0);
    CHECK(cyan.v == 1.0);
}

TEST_CASE("HSV round trip within one step per channel") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 10000; ++i) {
        const Rgb in{double(rng() % 256), double(rng() % 256), double(rng() % 256)};
        const Rgb back = hsv_to_rgb(rgb_to_hsv(in));
        CHECK(std::fabs(back.r - in.r) <= 1.0);
        CHECK(std::fabs(back.g - in.g) <= 1.0);
        CHECK(std::fabs(back.b - in.b) <= 1.0);
    }
}

TEST_CASE("HMMD triples") {
    const Hmmd red = rgb_to_hmmd({255, 0, 0});
    CHECK(red.hue == 0.0);
    CHECK(red.diff == 255.0);
    CHECK(red.sum == 127.5);

    const Hmmd gray = rgb_to_hmmd({100, 100, 100});
    CHECK(gray.hue == 0.0);
    CHECK(gray.diff == 0.0);
    CHECK(gray.sum == 100.0);

    const Hmmd mixed = rgb_to_hmmd({200, 100, 50});
    CHECK(mixed.hue == doctest::Approx(20.0));
    CHECK(mixed.diff == 150.0);
    CHECK(mixed.sum == 125.0);
}

TEST_CASE("HMMD diff and sum are permutation invariant, hue is not") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double r = double(rng() % 256), g = double(rng() % 256), b = double(rng() % 256);
        const Hmmd base = rgb_to_hmmd({r, g, b});
        for (const Rgb& perm : {Rgb{g, r, b}, Rgb{b, g, r}, Rgb{g, b, r}}) {
            const Hmmd p = rgb_to_hmmd(perm);
            CHECK(p.diff == base.diff);
            CHECK(p.sum == base.sum);
        }
    }
    // A witness that hue does move under permutation.
    CHECK(rgb_to_hmmd({200, 100, 50}).hue != rgb_to_hmmd({50, 100, 200}).hue);
}

TEST_CASE("sRGB white maps to the D65 point") {
    const Xyz white = rgb_to_xyz({255, 255, 255});
    CHECK(white.x == doctest::Approx(0.9505).epsilon(1e-3));
    CHECK(white.y == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(white.z == doctest::Approx(1.0890).epsilon(1e-3));

    const Uv uv = xyz_to_uv(white);
    CHECK(uv.u == doctest::Approx(0.1978).epsilon(1e-3));
    CHECK(uv.v == doctest::Approx(0.3122).epsilon(1e-3));

    CHECK(rgb_to_xyz({0, 0, 0}).x == 0.0);
    CHECK(rgb_to_xyz({0, 0, 0}).y == 0.0);
}

TEST_CASE("UCS conversion handles the degenerate denominator") {
    const Uv uv = xyz_to_uv({1, 0, 0});
    CHECK(uv.u == 4.0);
    CHECK(uv.v == 0.0);
    CHECK_THROWS_AS(xyz_to_uv({0, 0, 0}), ColorError);
}

TEST_CASE("UCS coordinates of non-negative XYZ are non-negative") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const Xyz c{double(rng() % 1000) / 500.0, double(rng() % 1000) / 500.0,
                    double(rng() % 1000) / 500.0};
        if (c.x + 15 * c.y + 3 * c.z <= 0.0) continue;
        const Uv uv = xyz_to_uv(c);
        CHECK(uv.u >= 0.0);
        CHECK(uv.v >= 0.0);
    }
}
