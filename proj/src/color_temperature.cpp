#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"

namespace ffiredt {

namespace {

struct IsoLine {
    double mired;  // reciprocal megakelvin
    double u, v;   // locus point in CIE 1960 UCS
    double slope;  // isotemperature line slope at that point
};

// Robertson's isotemperature-line table (Wyszecki & Stiles, 2nd ed.,
// pp. 227-228), reciprocal megakelvin 0 to 600.
constexpr IsoLine kIsoLines[31] = {
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

double signed_distance(const IsoLine& line, const Uv& c) {
    return (c.v - line.v) - line.slope * (c.u - line.u);
}

}  // namespace

CctResult robertson_cct(const Uv& c) {
    double prev = 0.0;
    for (int i = 0; i < 31; ++i) {
        const double d = signed_distance(kIsoLines[i], c);
        if (i > 0 && ((d < 0.0 && prev >= 0.0) || (d >= 0.0 && prev < 0.0))) {
            // Lines i-1 and i straddle the chromaticity; interpolate the
            // reciprocal temperature between them by perpendicular distance.
            const double di = d / std::sqrt(1.0 + kIsoLines[i].slope * kIsoLines[i].slope);
            const double dm =
                prev / std::sqrt(1.0 + kIsoLines[i - 1].slope * kIsoLines[i - 1].slope);
            const double p = dm / (dm - di);
            const double mired =
                kIsoLines[i - 1].mired + p * (kIsoLines[i].mired - kIsoLines[i - 1].mired);
            if (mired <= kIsoLines[1].mired) {
                // The mired-0 end of the table has no finite temperature;
                // report the hottest tabulated line instead.
                return {1e6 / kIsoLines[1].mired, mired < kIsoLines[1].mired};
            }
            return {1e6 / mired, false};
        }
        prev = d;
    }

    // No sign change: the chromaticity lies beyond the table. Clamp to the
    // nearer finite endpoint.
    const auto perp = [&](const IsoLine& line) {
        return std::fabs(signed_distance(line, c)) / std::sqrt(1.0 + line.slope * line.slope);
    };
    if (perp(kIsoLines[0]) < perp(kIsoLines[30])) {
        return {1e6 / kIsoLines[1].mired, true};
    }
    return {1e6 / kIsoLines[30].mired, true};
}

FeatureVector extract_color_temperature(const RasterImage& img, const DescriptorConfig& cfg) {
    cfg.validate();

    // Zero-luminance pixels carry no chromaticity and never survive.
    std::vector<Xyz> candidates;
    candidates.reserve(img.pixel_count());
    for (const Rgb8& p : img.pixels()) {
        const Xyz c = rgb_to_xyz({static_cast<double>(p.r), static_cast<double>(p.g),
                                  static_cast<double>(p.b)});
        if (c.y > 0.0) candidates.push_back(c);
    }
    if (candidates.empty()) {
        throw ExtractError("color temperature: no pixels survive the luminance filter");
    }

    std::vector<double> lum(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) lum[i] = candidates[i].y;
    std::sort(lum.begin(), lum.end());
    const auto rank = [&](double percentile) {
        const double pos = percentile / 100.0 * static_cast<double>(lum.size() - 1);
        return lum[static_cast<std::size_t>(std::lround(pos))];
    };
    const double lo = rank(cfg.ct_low_percentile);
    const double hi = rank(cfg.ct_high_percentile);

    Xyz mean;
    std::size_t kept = 0;
    for (const Xyz& c : candidates) {
        if (c.y < lo || c.y > hi) continue;
        mean.x += c.x;
        mean.y += c.y;
        mean.z += c.z;
        ++kept;
    }
    if (kept == 0) {
        throw ExtractError("color temperature: luminance band rejected every pixel");
    }
    mean.x /= static_cast<double>(kept);
    mean.y /= static_cast<double>(kept);
    mean.z /= static_cast<double>(kept);

    const CctResult cct = robertson_cct(xyz_to_uv(mean));
    if (cct.clamped) {
        std::fprintf(stderr,
                     "warning: image %llu: chromaticity outside the isotemperature table, "
                     "temperature clamped to %.0f K\n",
                     static_cast<unsigned long long>(img.id()), cct.kelvin);
    }

    FeatureVector out;
    out.descriptor = Descriptor::ColorTemperature;
    out.image_id = img.id();
    out.values = {cct.kelvin};
    return out;
}

}  // namespace ffiredt
