#include "ffiredt/descriptors.hpp"

#include "ffiredt/error.hpp"

namespace ffiredt {

FeatureVector extract(const RasterImage& img, Descriptor id, const DescriptorConfig& cfg) {
    switch (id) {
        case Descriptor::ColorLayout: return extract_color_layout(img, cfg);
        case Descriptor::ScalableColor: return extract_scalable_color(img, cfg);
        case Descriptor::ColorStructure: return extract_color_structure(img, cfg);
        case Descriptor::ColorTemperature: return extract_color_temperature(img, cfg);
        case Descriptor::EdgeHistogram: return extract_edge_histogram(img, cfg);
        case Descriptor::TextureBrowsing: return extract_texture_browsing(img, cfg);
    }
    throw ExtractError("unknown descriptor id");
}

}  // namespace ffiredt
