#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"

namespace ffiredt {

int hmmd_cell_index(const Hmmd& c) {
    // Five diff ranges, each with its own hue x sum split:
    //   diff range      hue levels  sum levels  cells
    //   [0, 6)          1           8           8
    //   [6, 20)         4           4           16
    //   [20, 60)        4           4           16
    //   [60, 110)       8           2           16
    //   [110, 255]      8           1           8
    static constexpr double kDiffEdges[4] = {6.0, 20.0, 60.0, 110.0};
    static constexpr int kHueLevels[5] = {1, 4, 4, 8, 8};
    static constexpr int kSumLevels[5] = {8, 4, 4, 2, 1};
    static constexpr int kBase[5] = {0, 8, 24, 40, 56};

    int range = 4;
    for (int i = 0; i < 4; ++i) {
        if (c.diff < kDiffEdges[i]) {
            range = i;
            break;
        }
    }
    const int hue = std::min(kHueLevels[range] - 1,
                             static_cast<int>(c.hue * kHueLevels[range] / 360.0));
    const int sum = std::min(kSumLevels[range] - 1,
                             static_cast<int>(c.sum * kSumLevels[range] / 256.0));
    return kBase[range] + hue * kSumLevels[range] + sum;
}

FeatureVector extract_color_structure(const RasterImage& img, const DescriptorConfig& cfg) {
    cfg.validate();
    const int win = cfg.cs_window;

    // Scale-controlled subsampling: window density stays comparable across
    // image sizes.
    const double area = static_cast<double>(img.width()) * img.height();
    const long power = std::lround(0.5 * std::log2(area) - 8.0);
    const int step = 1 << std::max(0L, power);
    const int sub_w = (img.width() - 1) / step + 1;
    const int sub_h = (img.height() - 1) / step + 1;
    if (sub_w < win || sub_h < win) {
        throw ExtractError("color structure needs at least " + std::to_string(win) + "x" +
                           std::to_string(win) + " subsampled pixels, got " +
                           std::to_string(sub_w) + "x" + std::to_string(sub_h));
    }

    std::vector<int> cell(static_cast<std::size_t>(sub_w) * sub_h);
    for (int y = 0; y < sub_h; ++y) {
        for (int x = 0; x < sub_w; ++x) {
            cell[static_cast<std::size_t>(y) * sub_w + x] =
                hmmd_cell_index(rgb_to_hmmd(img.rgb_at(x * step, y * step)));
        }
    }

    const int bins = cfg.cs_bins;
    std::vector<double> presence(bins, 0.0);
    std::vector<int> counts(bins, 0);
    const int last_x = sub_w - win;
    const int last_y = sub_h - win;

    for (int wy = 0; wy <= last_y; ++wy) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int y = wy; y < wy + win; ++y) {
            for (int x = 0; x < win; ++x) {
                ++counts[cell[static_cast<std::size_t>(y) * sub_w + x]];
            }
        }
        for (int b = 0; b < bins; ++b) {
            if (counts[b] > 0) presence[b] += 1.0;
        }
        for (int wx = 1; wx <= last_x; ++wx) {
            // Slide one column right.
            for (int y = wy; y < wy + win; ++y) {
                --counts[cell[static_cast<std::size_t>(y) * sub_w + wx - 1]];
                ++counts[cell[static_cast<std::size_t>(y) * sub_w + wx + win - 1]];
            }
            for (int b = 0; b < bins; ++b) {
                if (counts[b] > 0) presence[b] += 1.0;
            }
        }
    }

    const double windows = static_cast<double>(last_x + 1) * (last_y + 1);
    FeatureVector out;
    out.descriptor = Descriptor::ColorStructure;
    out.image_id = img.id();
    out.values.resize(bins);
    for (int b = 0; b < bins; ++b) out.values[b] = presence[b] / windows;
    return out;
}

}  // namespace ffiredt
