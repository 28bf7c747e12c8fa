#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"

namespace ffiredt {

namespace {

constexpr double kBaseFrequency = 0.25;  // cycles/pixel at the finest scale
constexpr double kOrientationStepDeg = 30.0;

// One-octave bandwidth: sigma = sqrt(ln2/2) * (2^B + 1) / (2^B - 1) / (pi f).
double bandwidth_sigma(double frequency) {
    return 3.0 * std::sqrt(std::numbers::ln2 / 2.0) / (std::numbers::pi * frequency);
}

using Complexf = std::complex<float>;

fftwf_complex* as_fftw(Complexf* p) { return reinterpret_cast<fftwf_complex*>(p); }

// Per image-size FFT plans plus the spectra of the orientation kernels.
// Shared between extractions; plan creation and destruction are serialized
// through the planner mutex, execution is thread-safe.
struct FftResources {
    int w = 0, h = 0;
    fftwf_plan forward = nullptr;
    fftwf_plan inverse = nullptr;
    std::vector<std::vector<Complexf>> kernel_spectra;

    ~FftResources();
};

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

FftResources::~FftResources() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftwf_destroy_plan(forward);
    if (inverse) fftwf_destroy_plan(inverse);
}

// Complex Gabor kernel taps, mean-subtracted so a constant image produces a
// zero response, wrapped onto a w x h grid for circular convolution.
std::vector<Complexf> wrapped_gabor_kernel(int w, int h, double theta, double frequency) {
    const double sigma = bandwidth_sigma(frequency);
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const int side = 2 * radius + 1;
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);

    std::vector<std::complex<double>> taps(static_cast<std::size_t>(side) * side);
    std::complex<double> mean = 0.0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const double envelope = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            const double phase = 2.0 * std::numbers::pi * frequency * (dx * cs + dy * sn);
            const std::complex<double> tap =
                envelope * std::complex<double>(std::cos(phase), std::sin(phase));
            taps[static_cast<std::size_t>(dy + radius) * side + (dx + radius)] = tap;
            mean += tap;
        }
    }
    mean /= static_cast<double>(taps.size());

    std::vector<Complexf> grid(static_cast<std::size_t>(w) * h, Complexf(0.0f, 0.0f));
    for (int dy = -radius; dy <= radius; ++dy) {
        const int gy = ((dy % h) + h) % h;
        for (int dx = -radius; dx <= radius; ++dx) {
            const int gx = ((dx % w) + w) % w;
            const std::complex<double> tap =
                taps[static_cast<std::size_t>(dy + radius) * side + (dx + radius)] - mean;
            grid[static_cast<std::size_t>(gy) * w + gx] +=
                Complexf(static_cast<float>(tap.real()), static_cast<float>(tap.imag()));
        }
    }
    return grid;
}

std::shared_ptr<FftResources> resources_for(int w, int h, int orientations) {
    static std::map<std::pair<int, int>, std::shared_ptr<FftResources>>& cache =
        *new std::map<std::pair<int, int>, std::shared_ptr<FftResources>>();
    constexpr std::size_t kMaxCachedSizes = 16;

    std::shared_ptr<FftResources> evicted;  // released after the lock
    std::lock_guard<std::mutex> lock(planner_mutex());
    const std::pair<int, int> key{w, h};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    auto res = std::make_shared<FftResources>();
    res->w = w;
    res->h = h;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<Complexf> a(n), b(n);
    // FFTW_UNALIGNED keeps the plans reusable on any caller-owned buffers.
    res->forward = fftwf_plan_dft_2d(h, w, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    res->inverse = fftwf_plan_dft_2d(h, w, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!res->forward || !res->inverse) throw ExtractError("FFT planning failed");

    res->kernel_spectra.reserve(orientations);
    for (int o = 0; o < orientations; ++o) {
        const double theta = o * kOrientationStepDeg * std::numbers::pi / 180.0;
        std::vector<Complexf> kernel = wrapped_gabor_kernel(w, h, theta, kBaseFrequency);
        std::vector<Complexf> spectrum(n);
        fftwf_execute_dft(res->forward, as_fftw(kernel.data()), as_fftw(spectrum.data()));
        res->kernel_spectra.push_back(std::move(spectrum));
    }

    if (cache.size() >= kMaxCachedSizes) {
        evicted = cache.begin()->second;
        cache.erase(cache.begin());
    }
    cache.emplace(key, res);
    return res;
}

// Mean response magnitude per orientation for one pyramid level.
void level_energies(const std::vector<float>& gray, int w, int h, int orientations,
                    double* energies) {
    const std::shared_ptr<FftResources> res = resources_for(w, h, orientations);
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<Complexf> image(n), freq(n), prod(n), resp(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = Complexf(gray[i], 0.0f);
    fftwf_execute_dft(res->forward, as_fftw(image.data()), as_fftw(freq.data()));

    for (int o = 0; o < orientations; ++o) {
        const std::vector<Complexf>& spectrum = res->kernel_spectra[o];
        for (std::size_t i = 0; i < n; ++i) prod[i] = freq[i] * spectrum[i];
        fftwf_execute_dft(res->inverse, as_fftw(prod.data()), as_fftw(resp.data()));
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += std::hypot(resp[i].real(), resp[i].imag());
        // One 1/n for the unnormalized inverse transform, one for the mean.
        energies[o] = acc / (static_cast<double>(n) * static_cast<double>(n));
    }
}

std::vector<float> downsample_2x(const std::vector<float>& gray, int w, int h, int& nw, int& nh) {
    nw = w / 2;
    nh = h / 2;
    std::vector<float> out(static_cast<std::size_t>(nw) * nh);
    for (int y = 0; y < nh; ++y) {
        for (int x = 0; x < nw; ++x) {
            const std::size_t base = static_cast<std::size_t>(2 * y) * w + 2 * x;
            out[static_cast<std::size_t>(y) * nw + x] =
                (gray[base] + gray[base + 1] + gray[base + w] + gray[base + w + 1]) * 0.25f;
        }
    }
    return out;
}

}  // namespace

std::vector<double> texture_browsing_energies(const RasterImage& img,
                                              const DescriptorConfig& cfg) {
    const int orientations = cfg.tb_orientations;
    const int scales = cfg.tb_scales;

    std::vector<float> gray(img.pixel_count());
    for (std::size_t i = 0; i < gray.size(); ++i) {
        const Rgb8& p = img.pixels()[i];
        gray[i] = static_cast<float>((0.299 * p.r + 0.587 * p.g + 0.114 * p.b) / 255.0);
    }
    // The kernels are zero-mean, so a constant shift changes nothing
    // mathematically; anchoring at the first sample makes a uniform image an
    // all-zero plane and its response exactly zero.
    const float anchor = gray[0];
    for (float& g : gray) g -= anchor;

    // Center frequencies halve per scale; each halving is realized by running
    // the base-frequency bank on the next pyramid level.
    std::vector<double> energies(static_cast<std::size_t>(orientations) * scales, 0.0);
    std::vector<double> level(orientations);
    int w = img.width(), h = img.height();
    for (int s = 0; s < scales; ++s) {
        if (s > 0) gray = downsample_2x(gray, w, h, w, h);
        level_energies(gray, w, h, orientations, level.data());
        for (int o = 0; o < orientations; ++o) {
            energies[static_cast<std::size_t>(o) * scales + s] = level[o];
        }
    }
    return energies;
}

FeatureVector extract_texture_browsing(const RasterImage& img, const DescriptorConfig& cfg) {
    cfg.validate();
    if (img.width() < 32 || img.height() < 32) {
        throw ExtractError("texture browsing needs at least 32x32 pixels, got " +
                           std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }

    const int orientations = cfg.tb_orientations;
    const int scales = cfg.tb_scales;
    const std::vector<double> energies = texture_browsing_energies(img, cfg);

    std::vector<double> by_orientation(orientations, 0.0);
    std::vector<double> by_scale(scales, 0.0);
    double total = 0.0;
    for (int o = 0; o < orientations; ++o) {
        for (int s = 0; s < scales; ++s) {
            const double e = energies[static_cast<std::size_t>(o) * scales + s];
            by_orientation[o] += e;
            by_scale[s] += e;
            total += e;
        }
    }

    FeatureVector out;
    out.descriptor = Descriptor::TextureBrowsing;
    out.image_id = img.id();
    out.values.reserve(2 + orientations + scales);

    constexpr double kZeroEnergy = 1e-12;
    if (total <= kZeroEnergy) {
        // Textureless image: uniform marginals, no regularity.
        out.values.push_back(0.0);
        out.values.push_back(0.0);
        for (int o = 0; o < orientations; ++o) out.values.push_back(1.0 / orientations);
        for (int s = 0; s < scales; ++s) out.values.push_back(1.0 / scales);
        return out;
    }

    // Peak sharpness (max over mean) of each marginal, clamped to [0, 4].
    const double peak_o = *std::max_element(by_orientation.begin(), by_orientation.end());
    const double peak_s = *std::max_element(by_scale.begin(), by_scale.end());
    out.values.push_back(std::clamp(peak_o / (total / orientations), 0.0, 4.0));
    out.values.push_back(std::clamp(peak_s / (total / scales), 0.0, 4.0));
    for (int o = 0; o < orientations; ++o) out.values.push_back(by_orientation[o] / total);
    for (int s = 0; s < scales; ++s) out.values.push_back(by_scale[s] / total);
    return out;
}

}  // namespace ffiredt
