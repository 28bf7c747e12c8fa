#include "ffiredt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ffiredt/error.hpp"

namespace ffiredt {

void SyntheticSpec::validate() const {
    if (per_class < 1) throw ConfigError("per-class count must be positive");
    if (size < 32) throw ConfigError("image size must be at least 32 (extractor preconditions)");
    if (!(fire_hue_min < fire_hue_max) || !(other_hue_min < other_hue_max)) {
        throw ConfigError("hue bands must be non-empty");
    }
    if (std::max(fire_hue_min, other_hue_min) < std::min(fire_hue_max, other_hue_max)) {
        throw ConfigError("fire and not-fire hue bands must be disjoint");
    }
    if (not_fire_modes.empty()) throw ConfigError("need at least one texture mode");
}

namespace {

struct Sampler {
    std::mt19937_64 rng;

    explicit Sampler(std::uint64_t seed, std::uint64_t cls, std::uint64_t index) {
        std::seed_seq seq{seed, cls, index};
        rng.seed(seq);
    }

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
};

Rgb8 to_rgb8(const Hsv& c) {
    const Rgb p = hsv_to_rgb(c);
    const auto q = [](double v) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    };
    return {q(p.r), q(p.g), q(p.b)};
}

RasterImage generate_fire(const SyntheticSpec& spec, int index) {
    Sampler s(spec.seed, 1, static_cast<std::uint64_t>(index));
    const double margin = std::min(5.0, (spec.fire_hue_max - spec.fire_hue_min) / 4.0);
    const double base_hue = s.uniform(spec.fire_hue_min + margin, spec.fire_hue_max - margin);
    const double cx = s.uniform(0.3, 0.7) * spec.size;
    const double cy = s.uniform(0.3, 0.7) * spec.size;
    const double radius = s.uniform(0.45, 0.9) * spec.size;

    std::vector<Rgb8> pixels(static_cast<std::size_t>(spec.size) * spec.size);
    for (int y = 0; y < spec.size; ++y) {
        for (int x = 0; x < spec.size; ++x) {
            const double d = std::hypot(x - cx, y - cy) / radius;
            const double v =
                std::clamp(1.05 - 0.75 * std::min(d, 1.4) + s.uniform(-0.03, 0.03), 0.12, 1.0);
            const double sat = std::clamp(0.92 + s.uniform(-0.12, 0.06), 0.7, 1.0);
            const double hue = base_hue + s.uniform(-margin, margin);
            pixels[static_cast<std::size_t>(y) * spec.size + x] = to_rgb8({hue, sat, v});
        }
    }
    return RasterImage(spec.size, spec.size, std::move(pixels));
}

RasterImage generate_not_fire(const SyntheticSpec& spec, int index) {
    Sampler s(spec.seed, 2, static_cast<std::uint64_t>(index));
    const TextureMode mode =
        spec.not_fire_modes[static_cast<std::size_t>(index) % spec.not_fire_modes.size()];
    const double margin = std::min(5.0, (spec.other_hue_max - spec.other_hue_min) / 4.0);
    const double base_hue = s.uniform(spec.other_hue_min + margin, spec.other_hue_max - margin);

    std::vector<Rgb8> pixels(static_cast<std::size_t>(spec.size) * spec.size);
    const auto fill = [&](auto&& value_at) {
        for (int y = 0; y < spec.size; ++y) {
            for (int x = 0; x < spec.size; ++x) {
                const double hue = base_hue + s.uniform(-margin, margin);
                const auto [sat, v] = value_at(x, y);
                pixels[static_cast<std::size_t>(y) * spec.size + x] = to_rgb8({hue, sat, v});
            }
        }
    };

    switch (mode) {
        case TextureMode::Flat: {
            const double sat = s.uniform(0.35, 0.85);
            const double v = s.uniform(0.35, 0.9);
            fill([&](int, int) { return std::pair{sat, v}; });
            break;
        }
        case TextureMode::Gradient: {
            const double sat = s.uniform(0.35, 0.85);
            double v0 = s.uniform(0.25, 0.95), v1 = s.uniform(0.25, 0.95);
            if (std::fabs(v1 - v0) < 0.3) v1 = v0 < 0.6 ? v0 + 0.3 : v0 - 0.3;
            const double angle = s.uniform(0.0, 2.0 * std::numbers::pi);
            const double ca = std::cos(angle), sa = std::sin(angle);
            const double span = spec.size * (std::fabs(ca) + std::fabs(sa));
            fill([&](int x, int y) {
                const double t = std::clamp((x * ca + y * sa) / span + 0.5, 0.0, 1.0);
                return std::pair{sat, v0 + (v1 - v0) * t};
            });
            break;
        }
        case TextureMode::Stripes: {
            const double sat = s.uniform(0.4, 0.8);
            const double va = s.uniform(0.15, 0.45);
            const double vb = s.uniform(0.6, 0.95);
            const int width = 2 << s.pick(3);  // 2, 4 or 8 pixels
            const double angle = s.pick(4) * std::numbers::pi / 4.0;
            const double ca = std::cos(angle), sa = std::sin(angle);
            fill([&](int x, int y) {
                const long band = std::lround(std::floor((x * ca + y * sa) / width));
                return std::pair{sat, band % 2 == 0 ? va : vb};
            });
            break;
        }
    }
    return RasterImage(spec.size, spec.size, std::move(pixels));
}

}  // namespace

RasterImage generate_image(const SyntheticSpec& spec, Label cls, int index) {
    spec.validate();
    if (cls == Label::Fire) return generate_fire(spec, index);
    if (cls == Label::NotFire) return generate_not_fire(spec, index);
    throw ConfigError("synthetic images are fire or not_fire");
}

std::vector<SyntheticImage> generate_corpus(const SyntheticSpec& spec) {
    spec.validate();
    std::vector<SyntheticImage> corpus;
    corpus.reserve(static_cast<std::size_t>(spec.per_class) * 2);
    for (Label cls : {Label::Fire, Label::NotFire}) {
        for (int i = 0; i < spec.per_class; ++i) {
            SyntheticImage item{generate_image(spec, cls, i), cls};
            item.image.set_id(corpus.size());
            corpus.push_back(std::move(item));
        }
    }
    return corpus;
}

}  // namespace ffiredt
