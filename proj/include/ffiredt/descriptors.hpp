#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ffiredt/color.hpp"
#include "ffiredt/feature.hpp"
#include "ffiredt/image.hpp"

namespace ffiredt {

// The six extractors. All are pure functions: identical input bytes produce
// bit-identical vectors, and they may run concurrently without restriction.

/// Spatial color distribution: per-region mean colors in YCbCr, a 2-D DCT per
/// channel plane, low-frequency coefficients read in zigzag order
/// (Y first, then Cb, then Cr).
FeatureVector extract_color_layout(const RasterImage& img, const DescriptorConfig& cfg);

/// 256-bin HSV histogram (16 hue x 4 saturation x 4 value) compacted by a
/// 1-D Haar cascade; keeps the `sc_out` lowest-frequency coefficients.
FeatureVector extract_scalable_color(const RasterImage& img, const DescriptorConfig& cfg);

/// Presence counts of HMMD-quantized colors inside a sliding structuring
/// window, normalized by the number of window positions.
FeatureVector extract_color_structure(const RasterImage& img, const DescriptorConfig& cfg);

/// 4x4 sub-image grid of five-type edge histograms plus 13 semi-local and one
/// global aggregate: 16*5 + 13*5 + 5 = 150 bins.
FeatureVector extract_edge_histogram(const RasterImage& img, const DescriptorConfig& cfg);

/// Correlated color temperature (Kelvin) of the average surviving pixel,
/// computed with Robertson's isotemperature-line interpolation.
FeatureVector extract_color_temperature(const RasterImage& img, const DescriptorConfig& cfg);

/// Regularity, directionality and coarseness marginals of a Gabor energy
/// matrix (6 orientations x 4 scales, one-octave bandwidth, center
/// frequencies halving from 0.25 cycles/pixel, finest scale first).
FeatureVector extract_texture_browsing(const RasterImage& img, const DescriptorConfig& cfg);

/// Dispatch over the six extractors.
FeatureVector extract(const RasterImage& img, Descriptor id, const DescriptorConfig& cfg);

// --- building blocks reused across extractors and exposed for testing ------

/// Diagonal low-to-high-frequency traversal of an n x n coefficient grid as
/// (row, col) pairs; begins (0,0),(0,1),(1,0),(2,0),(1,1),(0,2).
std::vector<std::pair<int, int>> zigzag_order(int n);

/// Orthonormal 2-D type-II DCT of a row-major n x n plane.
std::vector<double> dct2(std::span<const double> plane, int n);

/// Normalized 256-bin HSV histogram of an image (sums to 1).
std::vector<double> scalable_color_histogram(const RasterImage& img);

/// Full Haar cascade of a power-of-two-length sequence, pairwise sums and
/// differences recursing on sums. Output order: total mass first, then
/// details from coarsest to finest. The first coefficient equals the input
/// sum (sum-preserving convention).
std::vector<double> haar_cascade(std::span<const double> values);

/// Cell index in the 64-cell HMMD quantization (five diff ranges with
/// 8 + 16 + 16 + 16 + 8 hue x sum cells).
int hmmd_cell_index(const Hmmd& c);

/// Correlated color temperature by Robertson's method over the standard
/// 31-line table (reciprocal megakelvin 0..600). `clamped` is set when the
/// chromaticity falls outside the table and the nearest finite endpoint was
/// returned.
struct CctResult {
    double kelvin = 0.0;
    bool clamped = false;
};
CctResult robertson_cct(const Uv& c);

/// Mean Gabor response magnitudes, orientation-major: energies[o * scales + s]
/// with orientation o in steps of 30 degrees and scale s from finest (0.25
/// cycles/pixel) to coarsest.
std::vector<double> texture_browsing_energies(const RasterImage& img,
                                              const DescriptorConfig& cfg);

}  // namespace ffiredt
