// Python bindings for the core operations: decoding, the six extractors, the
// six evaluation functions, the feature store with kNN, IB1 classification,
// the evaluation harness and the synthetic corpus generator.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "ffiredt/classifier.hpp"
#include "ffiredt/corpus.hpp"
#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"
#include "ffiredt/harness.hpp"
#include "ffiredt/store.hpp"
#include "ffiredt/synth.hpp"

namespace py = pybind11;
using namespace ffiredt;

namespace {

RasterImage image_from_array(const py::array_t<std::uint8_t>& array, std::uint64_t id) {
    const py::buffer_info info = array.request();
    if (info.ndim != 3 || info.shape[2] != 3) {
        throw DecodeError("expected an array of shape (height, width, 3)");
    }
    const auto h = static_cast<int>(info.shape[0]);
    const auto w = static_cast<int>(info.shape[1]);
    const auto* data = static_cast<const std::uint8_t*>(info.ptr);
    const auto stride_y = static_cast<std::size_t>(info.strides[0]);
    const auto stride_x = static_cast<std::size_t>(info.strides[1]);
    const auto stride_c = static_cast<std::size_t>(info.strides[2]);

    std::vector<Rgb8> pixels(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint8_t* p = data + y * stride_y + x * stride_x;
            pixels[static_cast<std::size_t>(y) * w + x] = {p[0], p[stride_c], p[2 * stride_c]};
        }
    }
    return RasterImage(w, h, std::move(pixels), id);
}

py::array_t<std::uint8_t> image_to_array(const RasterImage& img) {
    py::array_t<std::uint8_t> out({img.height(), img.width(), 3});
    auto view = out.mutable_unchecked<3>();
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Rgb8& p = img.at(x, y);
            view(y, x, 0) = p.r;
            view(y, x, 1) = p.g;
            view(y, x, 2) = p.b;
        }
    }
    return out;
}

py::array_t<double> values_to_array(const std::vector<double>& values) {
    py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(values.size())});
    auto view = out.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        view(i) = values[static_cast<std::size_t>(i)];
    }
    return out;
}

std::vector<double> array_to_values(const py::array_t<double, py::array::c_style |
                                                                  py::array::forcecast>& array) {
    if (array.ndim() != 1) throw CompareError("expected a 1-d array of doubles");
    return {array.data(), array.data() + array.size()};
}

}  // namespace

PYBIND11_MODULE(ffiredt, m) {
    m.doc() = "Image descriptors, similarity search and instance-based fire detection";

    py::register_exception<Error>(m, "FfiredtError", PyExc_RuntimeError);

    py::enum_<Descriptor>(m, "Descriptor")
        .value("COLOR_LAYOUT", Descriptor::ColorLayout)
        .value("SCALABLE_COLOR", Descriptor::ScalableColor)
        .value("COLOR_STRUCTURE", Descriptor::ColorStructure)
        .value("COLOR_TEMPERATURE", Descriptor::ColorTemperature)
        .value("EDGE_HISTOGRAM", Descriptor::EdgeHistogram)
        .value("TEXTURE_BROWSING", Descriptor::TextureBrowsing);

    py::enum_<EvalFunction>(m, "EvalFunction")
        .value("CITY_BLOCK", EvalFunction::CityBlock)
        .value("EUCLIDEAN", EvalFunction::Euclidean)
        .value("CHEBYSHEV", EvalFunction::Chebyshev)
        .value("CANBERRA", EvalFunction::Canberra)
        .value("KULLBACK_LEIBLER", EvalFunction::KullbackLeibler)
        .value("JEFFREY", EvalFunction::Jeffrey);

    py::enum_<Label>(m, "Label")
        .value("NOT_FIRE", Label::NotFire)
        .value("FIRE", Label::Fire)
        .value("UNLABELED", Label::Unlabeled);

    m.def("descriptor_dimension", &descriptor_dimension);
    m.def("is_metric", &is_metric);

    py::class_<RasterImage>(m, "RasterImage")
        .def(py::init(&image_from_array), py::arg("pixels"), py::arg("id") = 0)
        .def_property_readonly("width", &RasterImage::width)
        .def_property_readonly("height", &RasterImage::height)
        .def_property("id", &RasterImage::id, &RasterImage::set_id)
        .def("to_numpy", &image_to_array);

    m.def(
        "decode_image",
        [](const py::bytes& payload, std::uint64_t id) {
            const std::string_view view = payload;
            return decode_image(
                {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()}, id);
        },
        py::arg("payload"), py::arg("id") = 0);
    m.def("load_image", &load_image, py::arg("path"), py::arg("id") = 0);
    m.def("save_png", &save_png, py::arg("image"), py::arg("path"));

    py::class_<DescriptorConfig>(m, "DescriptorConfig")
        .def(py::init<>())
        .def_readwrite("cl_grid", &DescriptorConfig::cl_grid)
        .def_readwrite("sc_out", &DescriptorConfig::sc_out)
        .def_readwrite("cs_window", &DescriptorConfig::cs_window)
        .def_readwrite("eh_blocks", &DescriptorConfig::eh_blocks)
        .def_readwrite("eh_threshold", &DescriptorConfig::eh_threshold)
        .def_readwrite("ct_low_percentile", &DescriptorConfig::ct_low_percentile)
        .def_readwrite("ct_high_percentile", &DescriptorConfig::ct_high_percentile)
        .def("validate", &DescriptorConfig::validate)
        .def_static("from_file", &DescriptorConfig::from_file)
        .def_static("from_text", &DescriptorConfig::from_text);

    py::class_<FeatureVector>(m, "FeatureVector")
        .def(py::init([](Descriptor d, const py::array_t<double, py::array::c_style |
                                                                     py::array::forcecast>& v,
                         std::uint64_t id) {
                 FeatureVector fv;
                 fv.descriptor = d;
                 fv.image_id = id;
                 fv.values = array_to_values(v);
                 return fv;
             }),
             py::arg("descriptor"), py::arg("values"), py::arg("image_id") = 0)
        .def_readonly("descriptor", &FeatureVector::descriptor)
        .def_readonly("image_id", &FeatureVector::image_id)
        .def_property_readonly(
            "values", [](const FeatureVector& fv) { return values_to_array(fv.values); });

    m.def("extract", &extract, py::arg("image"), py::arg("descriptor"),
          py::arg("config") = DescriptorConfig{});
    m.def("evaluate", &evaluate, py::arg("ef"), py::arg("x"), py::arg("y"));
    m.def(
        "evaluate_values",
        [](EvalFunction ef,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y) {
            const std::vector<double> xv = array_to_values(x);
            const std::vector<double> yv = array_to_values(y);
            if (xv.size() != yv.size()) throw CompareError("dimension mismatch");
            return evaluate_values(ef, xv, yv);
        },
        py::arg("ef"), py::arg("x"), py::arg("y"));

    py::class_<StoredInstance>(m, "StoredInstance")
        .def(py::init([](std::uint64_t id, Label label, const FeatureVector& v) {
                 return StoredInstance{id, label, v};
             }),
             py::arg("image_id"), py::arg("label"), py::arg("vector"))
        .def_readonly("image_id", &StoredInstance::image_id)
        .def_readonly("label", &StoredInstance::label)
        .def_readonly("vector", &StoredInstance::vector);

    py::class_<Neighbor>(m, "Neighbor")
        .def_readonly("image_id", &Neighbor::image_id)
        .def_readonly("distance", &Neighbor::distance);

    py::class_<FeatureStore>(m, "FeatureStore")
        .def_static("open", &FeatureStore::open, py::arg("path"), py::arg("descriptor"))
        .def("insert", &FeatureStore::insert)
        .def("scan",
             [](const FeatureStore& s) {
                 return std::vector<StoredInstance>(s.scan().begin(), s.scan().end());
             })
        .def("knn", &FeatureStore::knn, py::arg("query"), py::arg("k"), py::arg("ef"),
             py::arg("label_filter") = std::nullopt)
        .def("knn_labeled", &FeatureStore::knn_labeled, py::arg("query"), py::arg("k"),
             py::arg("ef"))
        .def("close", &FeatureStore::close)
        .def("__len__", &FeatureStore::size)
        .def_property_readonly("descriptor", &FeatureStore::descriptor)
        .def_property_readonly("dimension", &FeatureStore::dimension);

    py::class_<Classification>(m, "Classification")
        .def_readonly("image_id", &Classification::image_id)
        .def_readonly("predicted", &Classification::predicted)
        .def_readonly("score", &Classification::score)
        .def_readonly("k_used", &Classification::k_used);

    m.def("classify", &classify, py::arg("store"), py::arg("query"), py::arg("k"), py::arg("ef"));
    m.def(
        "classify_batch",
        [](const FeatureStore& store, const std::vector<FeatureVector>& queries, std::size_t k,
           EvalFunction ef) {
            py::list out;
            for (const ClassifyOutcome& o : classify_batch(store, queries, k, ef)) {
                if (o.result) out.append(py::cast(*o.result));
                else out.append(py::cast(o.error));
            }
            return out;
        },
        py::arg("store"), py::arg("queries"), py::arg("k"), py::arg("ef"));

    py::class_<ConfusionCounts>(m, "ConfusionCounts")
        .def(py::init([](std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, std::uint64_t tn) {
                 return ConfusionCounts{tp, fp, fn, tn};
             }),
             py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"))
        .def_readwrite("tp", &ConfusionCounts::tp)
        .def_readwrite("fp", &ConfusionCounts::fp)
        .def_readwrite("fn", &ConfusionCounts::fn)
        .def_readwrite("tn", &ConfusionCounts::tn);

    m.def("f_measure", &f_measure);

    py::class_<CrossValidationResult>(m, "CrossValidationResult")
        .def_readonly("mean_f", &CrossValidationResult::mean_f)
        .def_readonly("fold_f", &CrossValidationResult::fold_f);

    m.def(
        "cross_validate",
        [](const std::vector<StoredInstance>& corpus, EvalFunction ef, std::size_t k, int folds,
           std::uint64_t seed) { return cross_validate(corpus, ef, k, folds, seed); },
        py::arg("corpus"), py::arg("ef"), py::arg("k") = 1, py::arg("folds") = 10,
        py::arg("seed") = 42);

    py::class_<RocCurve>(m, "RocCurve")
        .def_readonly("auc", &RocCurve::auc)
        .def_property_readonly("points", [](const RocCurve& c) {
            py::list out;
            for (const RocPoint& p : c.points) out.append(py::make_tuple(p.fpr, p.tpr));
            return out;
        });

    m.def(
        "roc_curve",
        [](const std::vector<std::pair<double, Label>>& scored) { return roc_curve(scored); },
        py::arg("scored"));

    m.def(
        "precision_recall_curve",
        [](const std::vector<StoredInstance>& store, const std::vector<StoredInstance>& queries,
           EvalFunction ef) {
            const PrCurve curve = precision_recall_curve(store, queries, ef);
            py::list out;
            for (std::size_t i = 0; i < PrCurve::kLevels; ++i) {
                out.append(py::make_tuple(PrCurve::recall_level(i), curve.precision[i]));
            }
            return out;
        },
        py::arg("store"), py::arg("queries"), py::arg("ef"));

    m.def(
        "pca_project",
        [](const std::vector<FeatureVector>& vectors) {
            const PcaProjection p = pca_project(vectors);
            py::array_t<double> coords({static_cast<py::ssize_t>(p.coords.size()),
                                        static_cast<py::ssize_t>(2)});
            auto view = coords.mutable_unchecked<2>();
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                view(static_cast<py::ssize_t>(i), 0) = p.coords[i][0];
                view(static_cast<py::ssize_t>(i), 1) = p.coords[i][1];
            }
            return py::make_tuple(coords,
                                  py::make_tuple(p.explained_variance[0], p.explained_variance[1]));
        },
        py::arg("vectors"));

    py::class_<SyntheticSpec>(m, "SyntheticSpec")
        .def(py::init<>())
        .def_readwrite("per_class", &SyntheticSpec::per_class)
        .def_readwrite("seed", &SyntheticSpec::seed)
        .def_readwrite("size", &SyntheticSpec::size);

    m.def("generate_image", &generate_image, py::arg("spec"), py::arg("label"), py::arg("index"));
    m.def(
        "generate_corpus",
        [](const SyntheticSpec& spec) {
            py::list out;
            for (SyntheticImage& item : generate_corpus(spec)) {
                out.append(py::make_tuple(py::cast(std::move(item.image)), item.label));
            }
            return out;
        },
        py::arg("spec"));
}
