#pragma once

#include <cstdint>
#include <vector>

#include "ffiredt/image.hpp"
#include "ffiredt/store.hpp"

namespace ffiredt {

enum class TextureMode { Flat, Gradient, Stripes };

/// Desk-scale stand-in for a labeled photo corpus. Fire images sample hues
/// from a warm band with radial brightness structure; not-fire images sample
/// a disjoint band across the texture modes. Everything is a pure function of
/// (seed, class, index).
struct SyntheticSpec {
    int per_class = 200;
    std::uint64_t seed = 42;
    int size = 256;
    double fire_hue_min = 0.0;
    double fire_hue_max = 60.0;
    double other_hue_min = 90.0;
    double other_hue_max = 270.0;
    std::vector<TextureMode> not_fire_modes = {TextureMode::Flat, TextureMode::Gradient,
                                               TextureMode::Stripes};

    /// Throws ConfigError on non-positive counts/sizes or overlapping bands.
    void validate() const;
};

struct SyntheticImage {
    RasterImage image;
    Label label = Label::Unlabeled;
};

/// Deterministic image for one (class, index) slot.
RasterImage generate_image(const SyntheticSpec& spec, Label cls, int index);

/// All fire images first, then all not-fire images; ids follow positions.
std::vector<SyntheticImage> generate_corpus(const SyntheticSpec& spec);

}  // namespace ffiredt
