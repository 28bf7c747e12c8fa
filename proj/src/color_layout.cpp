#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"

namespace ffiredt {

std::vector<std::pair<int, int>> zigzag_order(int n) {
    std::vector<std::pair<int, int>> order;
    order.reserve(static_cast<std::size_t>(n) * n);
    for (int s = 0; s <= 2 * (n - 1); ++s) {
        if (s % 2 == 0) {
            for (int r = std::min(s, n - 1); r >= std::max(0, s - n + 1); --r) {
                order.emplace_back(r, s - r);
            }
        } else {
            for (int r = std::max(0, s - n + 1); r <= std::min(s, n - 1); ++r) {
                order.emplace_back(r, s - r);
            }
        }
    }
    return order;
}

std::vector<double> dct2(std::span<const double> plane, int n) {
    // Separable orthonormal type-II DCT; n is small (the region grid side),
    // so the direct O(n^3) row/column passes are plenty.
    const double pi = std::numbers::pi;
    std::vector<double> basis(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (int x = 0; x < n; ++x) {
            basis[static_cast<std::size_t>(k) * n + x] =
                scale * std::cos((2 * x + 1) * k * pi / (2.0 * n));
        }
    }

    std::vector<double> rows(static_cast<std::size_t>(n) * n, 0.0);
    for (int y = 0; y < n; ++y) {
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int x = 0; x < n; ++x) {
                acc += plane[static_cast<std::size_t>(y) * n + x] *
                       basis[static_cast<std::size_t>(k) * n + x];
            }
            rows[static_cast<std::size_t>(y) * n + k] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        for (int u = 0; u < n; ++u) {
            double acc = 0.0;
            for (int y = 0; y < n; ++y) {
                acc += rows[static_cast<std::size_t>(y) * n + k] *
                       basis[static_cast<std::size_t>(u) * n + y];
            }
            out[static_cast<std::size_t>(u) * n + k] = acc;
        }
    }
    return out;
}

FeatureVector extract_color_layout(const RasterImage& img, const DescriptorConfig& cfg) {
    cfg.validate();
    const int grid = cfg.cl_grid;
    if (img.width() < grid || img.height() < grid) {
        throw ExtractError("color layout needs at least " + std::to_string(grid) + "x" +
                           std::to_string(grid) + " pixels, got " + std::to_string(img.width()) +
                           "x" + std::to_string(img.height()));
    }

    // Mean color of each of the grid^2 near-equal regions, in YCbCr.
    std::vector<double> plane_y(static_cast<std::size_t>(grid) * grid);
    std::vector<double> plane_cb(plane_y.size());
    std::vector<double> plane_cr(plane_y.size());
    for (int gy = 0; gy < grid; ++gy) {
        const int y0 = gy * img.height() / grid;
        const int y1 = (gy + 1) * img.height() / grid;
        for (int gx = 0; gx < grid; ++gx) {
            const int x0 = gx * img.width() / grid;
            const int x1 = (gx + 1) * img.width() / grid;
            double r = 0.0, g = 0.0, b = 0.0;
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    const Rgb8& p = img.at(x, y);
                    r += p.r;
                    g += p.g;
                    b += p.b;
                }
            }
            const double n = static_cast<double>(y1 - y0) * (x1 - x0);
            const Ycbcr c = rgb_to_ycbcr({r / n, g / n, b / n});
            const std::size_t idx = static_cast<std::size_t>(gy) * grid + gx;
            plane_y[idx] = c.y;
            plane_cb[idx] = c.cb;
            plane_cr[idx] = c.cr;
        }
    }

    const std::vector<double> dct_y = dct2(plane_y, grid);
    const std::vector<double> dct_cb = dct2(plane_cb, grid);
    const std::vector<double> dct_cr = dct2(plane_cr, grid);
    const std::vector<std::pair<int, int>> order = zigzag_order(grid);

    FeatureVector out;
    out.descriptor = Descriptor::ColorLayout;
    out.image_id = img.id();
    out.values.reserve(descriptor_dimension(Descriptor::ColorLayout));
    const std::vector<double>* planes[3] = {&dct_y, &dct_cb, &dct_cr};
    for (int channel = 0; channel < 3; ++channel) {
        for (int i = 0; i < cfg.cl_coeffs[channel]; ++i) {
            const auto [r, c] = order[static_cast<std::size_t>(i)];
            out.values.push_back((*planes[channel])[static_cast<std::size_t>(r) * grid + c]);
        }
    }
    return out;
}

}  // namespace ffiredt
