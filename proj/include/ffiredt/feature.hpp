#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace ffiredt {

/// The six feature extraction methods. Numeric values are the on-disk ids of
/// the store format and must not be reordered.
enum class Descriptor : std::uint16_t {
    ColorLayout = 0,
    ScalableColor = 1,
    ColorStructure = 2,
    ColorTemperature = 3,
    EdgeHistogram = 4,
    TextureBrowsing = 5,
};

inline constexpr std::array<Descriptor, 6> kAllDescriptors = {
    Descriptor::ColorLayout,     Descriptor::ScalableColor,  Descriptor::ColorStructure,
    Descriptor::ColorTemperature, Descriptor::EdgeHistogram, Descriptor::TextureBrowsing,
};

/// Output dimension of each extractor under the default configuration.
constexpr std::size_t descriptor_dimension(Descriptor d) {
    switch (d) {
        case Descriptor::ColorLayout: return 12;
        case Descriptor::ScalableColor: return 64;
        case Descriptor::ColorStructure: return 64;
        case Descriptor::ColorTemperature: return 1;
        case Descriptor::EdgeHistogram: return 150;
        case Descriptor::TextureBrowsing: return 12;
    }
    return 0;
}

constexpr std::string_view descriptor_name(Descriptor d) {
    switch (d) {
        case Descriptor::ColorLayout: return "cl";
        case Descriptor::ScalableColor: return "sc";
        case Descriptor::ColorStructure: return "cs";
        case Descriptor::ColorTemperature: return "ct";
        case Descriptor::EdgeHistogram: return "eh";
        case Descriptor::TextureBrowsing: return "tb";
    }
    return "?";
}

std::optional<Descriptor> descriptor_from_name(std::string_view name);

/// One extracted feature vector together with its provenance.
struct FeatureVector {
    Descriptor descriptor = Descriptor::ColorLayout;
    std::uint64_t image_id = 0;
    std::vector<double> values;
};

/// All extractor parameters. Defaults reproduce the declared dimensions.
/// Loadable from a plain-text key=value file; '#' starts a comment.
struct DescriptorConfig {
    int cl_grid = 8;                     // blocks per side for Color Layout
    std::array<int, 3> cl_coeffs = {6, 3, 3};  // retained DCT coefficients (Y, Cb, Cr)
    int sc_out = 64;                     // retained Haar coefficients
    int cs_window = 8;                   // structuring window side
    int cs_bins = 64;                    // HMMD quantization cells
    int eh_blocks = 64;                  // desired image blocks per sub-image
    double eh_threshold = 11.0;          // edge-strength threshold
    double ct_low_percentile = 5.0;      // luminance band, lower bound
    double ct_high_percentile = 95.0;    // luminance band, upper bound

    // Fixed by the layouts of their descriptors; validate() rejects other values.
    int sc_bins = 256;                   // 16 hue x 4 saturation x 4 value
    int tb_orientations = 6;
    int tb_scales = 4;

    /// Throws ConfigError on out-of-range values.
    void validate() const;

    /// Unknown keys are rejected; unspecified keys keep their defaults.
    static DescriptorConfig from_file(const std::filesystem::path& path);
    static DescriptorConfig from_text(std::string_view text);
};

}  // namespace ffiredt
