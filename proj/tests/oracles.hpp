#pragma once

// Test-only reference implementations, written independently of the library
// code paths they check: direct-summation DCT, Robertson interpolation by
// absolute perpendicular distances, a direct-convolution Gabor bank, a
// quadratic AUC rank statistic and power-iteration PCA.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace oracles {

/// Orthonormal type-II DCT by direct double summation.
inline std::vector<double> direct_dct2(std::span<const double> plane, int n) {
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            double acc = 0.0;
            for (int y = 0; y < n; ++y) {
                for (int x = 0; x < n; ++x) {
                    acc += plane[static_cast<std::size_t>(y) * n + x] *
                           std::cos((2 * y + 1) * u * std::numbers::pi / (2.0 * n)) *
                           std::cos((2 * x + 1) * v * std::numbers::pi / (2.0 * n));
                }
            }
            const double au = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
            const double av = v == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
            out[static_cast<std::size_t>(u) * n + v] = au * av * acc;
        }
    }
    return out;
}

struct RobertsonRow {
    double mired, u, v, slope;
};

inline constexpr RobertsonRow kRobertsonTable[31] = {
    {0.0, 0.18006, 0.26352, -0.24341},   {10.0, 0.18066, 0.26589, -0.25479},
    {20.0, 0.18133, 0.26846, -0.26876},  {30.0, 0.18208, 0.27119, -0.28539},
    {40.0, 0.18293, 0.27407, -0.30470},  {50.0, 0.18388, 0.27709, -0.32675},
    {60.0, 0.18494, 0.28021, -0.35156},  {70.0, 0.18611, 0.28342, -0.37915},
    {80.0, 0.18740, 0.28668, -0.40955},  {90.0, 0.18880, 0.28997, -0.44278},
    {100.0, 0.19032, 0.29326, -0.47888}, {125.0, 0.19462, 0.30141, -0.58204},
    {150.0, 0.19962, 0.30921, -0.70471}, {175.0, 0.20525, 0.31647, -0.84901},
    {200.0, 0.21142, 0.32312, -1.0182},  {225.0, 0.21807, 0.32909, -1.2168},
    {250.0, 0.22511, 0.33439, -1.4512},  {275.0, 0.23247, 0.33904, -1.7298},
    {300.0, 0.24010, 0.34308, -2.0637},  {325.0, 0.24702, 0.34655, -2.4681},
    {350.0, 0.25591, 0.34951, -2.9641},  {375.0, 0.26400, 0.35200, -3.5814},
    {400.0, 0.27218, 0.35407, -4.3633},  {425.0, 0.28039, 0.35577, -5.3762},
    {450.0, 0.28863, 0.35714, -6.7262},  {475.0, 0.29685, 0.35823, -8.5955},
    {500.0, 0.30505, 0.35907, -11.324},  {525.0, 0.31320, 0.35968, -15.628},
    {550.0, 0.32129, 0.36011, -23.325},  {575.0, 0.32931, 0.36038, -40.770},
    {600.0, 0.33724, 0.36051, -116.45},
};

/// Robertson CCT recomputed with signed perpendicular distances everywhere
/// and an |d|-weighted interpolation; scans adjacent pairs explicitly.
inline double robertson_cct_oracle(double u, double v) {
    double d[31];
    for (int i = 0; i < 31; ++i) {
        const RobertsonRow& r = kRobertsonTable[i];
        d[i] = ((v - r.v) - r.slope * (u - r.u)) / std::sqrt(1.0 + r.slope * r.slope);
    }
    for (int i = 30; i >= 1; --i) {
        const bool straddles = (d[i - 1] >= 0.0 && d[i] < 0.0) || (d[i - 1] < 0.0 && d[i] >= 0.0);
        if (!straddles) continue;
        // Check no earlier pair straddles first (the library scans upward).
        bool earlier = false;
        for (int j = 1; j < i; ++j) {
            if ((d[j - 1] >= 0.0 && d[j] < 0.0) || (d[j - 1] < 0.0 && d[j] >= 0.0)) {
                earlier = true;
                break;
            }
        }
        if (earlier) continue;
        const double wa = std::fabs(d[i]);
        const double wb = std::fabs(d[i - 1]);
        const double mired =
            (kRobertsonTable[i - 1].mired * wa + kRobertsonTable[i].mired * wb) / (wa + wb);
        return 1e6 / mired;
    }
    return -1.0;  // outside the table
}

/// Direct circular convolution of a complex Gabor bank: frequency halves per
/// scale from base 0.25 cycles/pixel, orientations step 30 degrees, one-octave
/// bandwidth, kernels mean-subtracted. Returns mean response magnitudes
/// indexed [orientation][scale].
inline std::vector<std::vector<double>> gabor_energies_oracle(std::span<const double> gray,
                                                              int w, int h, int orientations,
                                                              int scales) {
    std::vector<std::vector<double>> energies(orientations, std::vector<double>(scales, 0.0));
    for (int s = 0; s < scales; ++s) {
        const double f = 0.25 / static_cast<double>(1 << s);
        const double sigma =
            3.0 * std::sqrt(std::numbers::ln2 / 2.0) / (std::numbers::pi * f);
        const int radius = static_cast<int>(std::ceil(3.0 * sigma));
        for (int o = 0; o < orientations; ++o) {
            const double theta = o * 30.0 * std::numbers::pi / 180.0;
            const double cs = std::cos(theta), sn = std::sin(theta);

            std::vector<std::complex<double>> taps;
            taps.reserve(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1));
            std::complex<double> mean = 0.0;
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    const double env = std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
                    const double phase = 2 * std::numbers::pi * f * (dx * cs + dy * sn);
                    taps.emplace_back(env * std::cos(phase), env * std::sin(phase));
                    mean += taps.back();
                }
            }
            mean /= static_cast<double>(taps.size());

            double acc = 0.0;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    std::complex<double> resp = 0.0;
                    std::size_t t = 0;
                    for (int dy = -radius; dy <= radius; ++dy) {
                        const int yy = ((y + dy) % h + h) % h;
                        for (int dx = -radius; dx <= radius; ++dx, ++t) {
                            const int xx = ((x + dx) % w + w) % w;
                            resp += (taps[t] - mean) * gray[static_cast<std::size_t>(yy) * w + xx];
                        }
                    }
                    acc += std::abs(resp);
                }
            }
            energies[o][s] = acc / (static_cast<double>(w) * h);
        }
    }
    return energies;
}

/// AUC as the pairwise rank statistic P(s+ > s-) + P(s+ = s-)/2.
inline double auc_rank_oracle(std::span<const std::pair<double, bool>> scored) {
    double wins = 0.0;
    std::size_t pos = 0, neg = 0;
    for (const auto& [sp, lp] : scored) {
        if (!lp) continue;
        ++pos;
        for (const auto& [sn, ln] : scored) {
            if (ln) continue;
            if (sp > sn) wins += 1.0;
            else if (sp == sn) wins += 0.5;
        }
    }
    for (const auto& [sn, ln] : scored) {
        if (!ln) ++neg;
    }
    return wins / (static_cast<double>(pos) * static_cast<double>(neg));
}

/// Top-2 principal axes by power iteration with deflation over the sample
/// covariance. Returns centered projections, up to per-axis sign.
struct PowerIterationPca {
    std::vector<std::array<double, 2>> coords;
    std::array<double, 2> variance{};
};

inline PowerIterationPca power_iteration_pca(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t dim = rows[0].size();
    std::vector<double> mean(dim, 0.0);
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < dim; ++j) mean[j] += r[j];
    }
    for (double& m : mean) m /= static_cast<double>(n);

    std::vector<std::vector<double>> centered = rows;
    for (auto& r : centered) {
        for (std::size_t j = 0; j < dim; ++j) r[j] -= mean[j];
    }

    std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
    for (const auto& r : centered) {
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) cov[a][b] += r[a] * r[b];
        }
    }
    for (auto& row : cov) {
        for (double& c : row) c /= static_cast<double>(n - 1);
    }

    PowerIterationPca out;
    out.coords.resize(n);
    std::vector<std::vector<double>> axes;
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<double> v(dim, 0.0);
        v[axis % dim] = 1.0;
        v[(axis + 1) % dim] = 0.5;  // avoid a start orthogonal to the target
        double lambda = 0.0;
        for (int iter = 0; iter < 3000; ++iter) {
            std::vector<double> next(dim, 0.0);
            for (std::size_t a = 0; a < dim; ++a) {
                for (std::size_t b = 0; b < dim; ++b) next[a] += cov[a][b] * v[b];
            }
            for (const auto& prev : axes) {  // deflate earlier axes
                double dot = 0.0;
                for (std::size_t j = 0; j < dim; ++j) dot += next[j] * prev[j];
                for (std::size_t j = 0; j < dim; ++j) next[j] -= dot * prev[j];
            }
            double norm = 0.0;
            for (double c : next) norm += c * c;
            norm = std::sqrt(norm);
            if (norm == 0.0) break;
            for (double& c : next) c /= norm;
            lambda = norm;
            v = next;
        }
        axes.push_back(v);
        out.variance[static_cast<std::size_t>(axis)] = lambda;
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < dim; ++j) dot += centered[i][j] * v[j];
            out.coords[i][static_cast<std::size_t>(axis)] = dot;
        }
    }
    return out;
}

}  // namespace oracles
