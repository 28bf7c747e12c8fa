#include "ffiredt/color.hpp"

#include <algorithm>
#include <cmath>

#include "ffiredt/error.hpp"

namespace ffiredt {

namespace {

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

// Shared by HSV and HMMD: hue of the hexcone model, 0 when max == min.
double hexcone_hue(double r, double g, double b, double mx, double mn) {
    const double delta = mx - mn;
    if (delta <= 0.0) return 0.0;
    double h;
    if (mx == r) {
        h = 60.0 * std::fmod((g - b) / delta, 6.0);
    } else if (mx == g) {
        h = 60.0 * ((b - r) / delta + 2.0);
    } else {
        h = 60.0 * ((r - g) / delta + 4.0);
    }
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    return h;
}

}  // namespace

Ycbcr rgb_to_ycbcr(const Rgb& p) {
    const double y = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
    const double cb = 128.0 - 0.168736 * p.r - 0.331264 * p.g + 0.5 * p.b;
    const double cr = 128.0 + 0.5 * p.r - 0.418688 * p.g - 0.081312 * p.b;
    return {clamp255(y), clamp255(cb), clamp255(cr)};
}

Hsv rgb_to_hsv(const Rgb& p) {
    const double mx = std::max({p.r, p.g, p.b});
    const double mn = std::min({p.r, p.g, p.b});
    const double v = mx / 255.0;
    const double s = mx > 0.0 ? (mx - mn) / mx : 0.0;
    return {hexcone_hue(p.r, p.g, p.b, mx, mn), s, v};
}

Hmmd rgb_to_hmmd(const Rgb& p) {
    const double mx = std::max({p.r, p.g, p.b});
    const double mn = std::min({p.r, p.g, p.b});
    return {hexcone_hue(p.r, p.g, p.b, mx, mn), mx - mn, (mx + mn) / 2.0};
}

double srgb_to_linear(double channel) {
    const double c = channel / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

Xyz rgb_to_xyz(const Rgb& p) {
    const double r = srgb_to_linear(p.r);
    const double g = srgb_to_linear(p.g);
    const double b = srgb_to_linear(p.b);
    // sRGB -> XYZ, D65 reference white.
    return {0.4124564 * r + 0.3575761 * g + 0.1804375 * b,
            0.2126729 * r + 0.7151522 * g + 0.0721750 * b,
            0.0193339 * r + 0.1191920 * g + 0.9503041 * b};
}

Uv xyz_to_uv(const Xyz& p) {
    const double denom = p.x + 15.0 * p.y + 3.0 * p.z;
    if (!(denom > 0.0)) {
        throw ColorError("degenerate chromaticity: X + 15Y + 3Z must be positive");
    }
    return {4.0 * p.x / denom, 6.0 * p.y / denom};
}

Rgb hsv_to_rgb(const Hsv& p) {
    const double c = p.v * p.s;
    const double hp = p.h / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(hp) % 6) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = p.v - c;
    return {(r + m) * 255.0, (g + m) * 255.0, (b + m) * 255.0};
}

double luma(const Rgb& p) { return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b; }

}  // namespace ffiredt
