#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"

namespace ffiredt {

namespace {

constexpr int kGridSide = 4;    // sub-images per axis
constexpr int kEdgeTypes = 5;   // vertical, horizontal, 45, 135, non-directional

// Largest even block side whose block count still reaches the target;
// falls back to the 2x2 minimum for tiny sub-images.
int pick_block_side(int sub_w, int sub_h, int target_blocks) {
    int best = 2;
    for (int b = std::min(sub_w, sub_h) & ~1; b >= 2; b -= 2) {
        if ((sub_w / b) * (sub_h / b) >= target_blocks) {
            best = b;
            break;
        }
    }
    return best;
}

// Five edge strengths of a block from its 2x2 cell means a0..a3
// (a0 top-left, a1 top-right, a2 bottom-left, a3 bottom-right).
std::array<double, kEdgeTypes> edge_strengths(double a0, double a1, double a2, double a3) {
    const double rt2 = std::numbers::sqrt2;
    return {
        std::fabs(a0 - a1 + a2 - a3),        // vertical
        std::fabs(a0 + a1 - a2 - a3),        // horizontal
        rt2 * std::fabs(a0 - a3),            // 45 degree
        rt2 * std::fabs(a1 - a2),            // 135 degree
        std::fabs(2 * a0 - 2 * a1 - 2 * a2 + 2 * a3) / 2.0,  // non-directional
    };
}

}  // namespace

FeatureVector extract_edge_histogram(const RasterImage& img, const DescriptorConfig& cfg) {
    cfg.validate();
    if (img.width() < 8 || img.height() < 8) {
        throw ExtractError("edge histogram needs at least 8x8 pixels, got " +
                           std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }

    std::vector<double> lum(img.pixel_count());
    for (std::size_t i = 0; i < lum.size(); ++i) {
        const Rgb8& p = img.pixels()[i];
        lum[i] = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
    }
    const auto cell_mean = [&](int x0, int y0, int w, int h) {
        double acc = 0.0;
        for (int y = y0; y < y0 + h; ++y) {
            for (int x = x0; x < x0 + w; ++x) {
                acc += lum[static_cast<std::size_t>(y) * img.width() + x];
            }
        }
        return acc / (static_cast<double>(w) * h);
    };

    double local[kGridSide * kGridSide][kEdgeTypes] = {};
    for (int si = 0; si < kGridSide; ++si) {
        const int y0 = si * img.height() / kGridSide;
        const int y1 = (si + 1) * img.height() / kGridSide;
        for (int sj = 0; sj < kGridSide; ++sj) {
            const int x0 = sj * img.width() / kGridSide;
            const int x1 = (sj + 1) * img.width() / kGridSide;
            const int sub_w = x1 - x0;
            const int sub_h = y1 - y0;

            const int side = pick_block_side(sub_w, sub_h, cfg.eh_blocks);
            const int half = side / 2;
            const int nbx = sub_w / side;
            const int nby = sub_h / side;
            const int blocks = nbx * nby;

            double* hist = local[si * kGridSide + sj];
            if (blocks == 0) continue;  // degenerate sliver; histogram stays zero

            for (int by = 0; by < nby; ++by) {
                for (int bx = 0; bx < nbx; ++bx) {
                    const int px = x0 + bx * side;
                    const int py = y0 + by * side;
                    const double a0 = cell_mean(px, py, half, half);
                    const double a1 = cell_mean(px + half, py, half, half);
                    const double a2 = cell_mean(px, py + half, half, half);
                    const double a3 = cell_mean(px + half, py + half, half, half);
                    const std::array<double, kEdgeTypes> s = edge_strengths(a0, a1, a2, a3);

                    int winner = 0;
                    for (int t = 1; t < kEdgeTypes; ++t) {
                        if (s[t] > s[winner]) winner = t;
                    }
                    if (s[winner] >= cfg.eh_threshold) hist[winner] += 1.0;
                }
            }
            for (int t = 0; t < kEdgeTypes; ++t) hist[t] /= blocks;
        }
    }

    // Semi-local groups: four rows of sub-images, four columns, then the four
    // corner 2x2 neighborhoods and the center one.
    static constexpr int kGroups[13][4] = {
        {0, 1, 2, 3},   {4, 5, 6, 7},   {8, 9, 10, 11}, {12, 13, 14, 15},  // rows
        {0, 4, 8, 12},  {1, 5, 9, 13},  {2, 6, 10, 14}, {3, 7, 11, 15},    // columns
        {0, 1, 4, 5},   {2, 3, 6, 7},   {8, 9, 12, 13}, {10, 11, 14, 15},  // corners
        {5, 6, 9, 10},                                                     // center
    };

    FeatureVector out;
    out.descriptor = Descriptor::EdgeHistogram;
    out.image_id = img.id();
    out.values.reserve(descriptor_dimension(Descriptor::EdgeHistogram));
    for (const double* hist : local) {
        out.values.insert(out.values.end(), hist, hist + kEdgeTypes);
    }
    for (const int* group : kGroups) {
        for (int t = 0; t < kEdgeTypes; ++t) {
            double acc = 0.0;
            for (int m = 0; m < 4; ++m) acc += local[group[m]][t];
            out.values.push_back(acc / 4.0);
        }
    }
    for (int t = 0; t < kEdgeTypes; ++t) {
        double acc = 0.0;
        for (int s = 0; s < kGridSide * kGridSide; ++s) acc += local[s][t];
        out.values.push_back(acc / (kGridSide * kGridSide));
    }
    return out;
}

}  // namespace ffiredt
