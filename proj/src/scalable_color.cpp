#include <algorithm>
#include <vector>

#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"

namespace ffiredt {

namespace {

// 16 hue x 4 saturation x 4 value, uniform edges, index h*16 + s*4 + v.
int hsv_bin_index(const Hsv& c) {
    const int h = std::min(15, static_cast<int>(c.h / 22.5));
    const int s = std::min(3, static_cast<int>(c.s * 4.0));
    const int v = std::min(3, static_cast<int>(c.v * 4.0));
    return h * 16 + s * 4 + v;
}

}  // namespace

std::vector<double> scalable_color_histogram(const RasterImage& img) {
    std::vector<double> hist(256, 0.0);
    for (const Rgb8& p : img.pixels()) {
        hist[hsv_bin_index(rgb_to_hsv({static_cast<double>(p.r), static_cast<double>(p.g),
                                       static_cast<double>(p.b)}))] += 1.0;
    }
    const double n = static_cast<double>(img.pixel_count());
    for (double& b : hist) b /= n;
    return hist;
}

std::vector<double> haar_cascade(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw ExtractError("Haar cascade needs a power-of-two length, got " + std::to_string(n));
    }
    std::vector<double> out(n, 0.0);
    std::vector<double> work(values.begin(), values.end());
    std::size_t len = n;
    while (len > 1) {
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < half; ++i) {
            const double a = work[2 * i];
            const double b = work[2 * i + 1];
            out[half + i] = a - b;  // details land at their level's slot
            work[i] = a + b;        // sums carry to the next level
        }
        len = half;
    }
    out[0] = work[0];
    return out;
}

FeatureVector extract_scalable_color(const RasterImage& img, const DescriptorConfig& cfg) {
    cfg.validate();
    const std::vector<double> hist = scalable_color_histogram(img);
    const std::vector<double> coeffs = haar_cascade(hist);

    FeatureVector out;
    out.descriptor = Descriptor::ScalableColor;
    out.image_id = img.id();
    out.values.assign(coeffs.begin(), coeffs.begin() + cfg.sc_out);
    return out;
}

}  // namespace ffiredt
