#pragma once

namespace ffiredt {

// Color triples are tagged by type rather than by a runtime enum; each struct
// documents its own value ranges.

/// RGB with channels in [0,255]. Values are real so that region means keep
/// their fractional part.
struct Rgb {
    double r = 0.0, g = 0.0, b = 0.0;
};

/// Full-range BT.601 YCbCr, all components in [0,255], chroma offset +128.
struct Ycbcr {
    double y = 0.0, cb = 0.0, cr = 0.0;
};

/// Hexcone HSV: hue in [0,360) with 0 for achromatic input, s and v in [0,1].
struct Hsv {
    double h = 0.0, s = 0.0, v = 0.0;
};

/// Hue/diff/sum triple: hue as in HSV, diff = max-min in [0,255],
/// sum = (max+min)/2 in [0,255].
struct Hmmd {
    double hue = 0.0, diff = 0.0, sum = 0.0;
};

/// CIE XYZ, linear light, D65 white point, Y = 1 for sRGB white.
struct Xyz {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// CIE 1960 UCS chromaticity.
struct Uv {
    double u = 0.0, v = 0.0;
};

Ycbcr rgb_to_ycbcr(const Rgb& p);
Hsv rgb_to_hsv(const Rgb& p);
Hmmd rgb_to_hmmd(const Rgb& p);
Xyz rgb_to_xyz(const Rgb& p);

/// Throws ColorError when X + 15Y + 3Z is not positive.
Uv xyz_to_uv(const Xyz& p);

/// Inverse of rgb_to_hsv, used by the synthetic generator and sanity tests.
Rgb hsv_to_rgb(const Hsv& p);

/// BT.601 luma in [0,255].
double luma(const Rgb& p);

/// sRGB decoding of one channel value in [0,255] to linear light in [0,1].
double srgb_to_linear(double channel);

}  // namespace ffiredt
