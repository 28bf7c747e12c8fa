#include "ffiredt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ffiredt/error.hpp"

namespace ffiredt::report {

namespace {

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

constexpr const char* kPalette[] = {"#d4482b", "#2b6bd4", "#2ba05a", "#a04fc2",
                                    "#d49b2b", "#4b4f58"};

const char* palette(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

}  // namespace

std::string grid_csv(const EvaluationGrid& grid) {
    std::string out = "fem,ef,mean_f,folds,row_best,error\n";
    for (const GridCell& c : grid.cells) {
        out += std::string(descriptor_name(c.fem)) + ',' + std::string(eval_function_name(c.ef)) +
               ',';
        if (c.result) {
            out += fmt(c.result->mean_f) + ',' + std::to_string(c.result->fold_f.size());
        } else {
            out += "NA,0";
        }
        out += c.row_best ? ",1," : ",0,";
        std::string err = c.error;
        std::replace(err.begin(), err.end(), ',', ';');
        out += err + '\n';
    }
    return out;
}

std::string grid_folds_csv(const EvaluationGrid& grid) {
    std::string out = "fem,ef,fold,f_measure\n";
    for (const GridCell& c : grid.cells) {
        if (!c.result) continue;
        for (std::size_t f = 0; f < c.result->fold_f.size(); ++f) {
            out += std::string(descriptor_name(c.fem)) + ',' +
                   std::string(eval_function_name(c.ef)) + ',' + std::to_string(f) + ',' +
                   fmt(c.result->fold_f[f]) + '\n';
        }
    }
    return out;
}

std::string grid_table(const EvaluationGrid& grid) {
    std::string out = "fem ";
    for (EvalFunction ef : grid.efs) {
        out += "| " + std::string(eval_function_name(ef)) + "      ";
    }
    out += '\n';
    out += std::string(out.size() - 1, '-') + '\n';
    for (Descriptor fem : grid.fems) {
        out += std::string(descriptor_name(fem)) + "  ";
        for (EvalFunction ef : grid.efs) {
            const GridCell& c = grid.cell(fem, ef);
            if (c.result) {
                out += "| " + fmt(c.result->mean_f, "%.4f") + (c.row_best ? "*" : " ") + ' ';
            } else {
                out += "| NA      ";
            }
        }
        out += '\n';
    }
    return out;
}

std::string pr_csv(std::span<const LabeledPrCurve> curves) {
    std::string out = "descriptor,recall,precision\n";
    for (const LabeledPrCurve& c : curves) {
        for (std::size_t i = 0; i < PrCurve::kLevels; ++i) {
            out += c.name + ',' + fmt(PrCurve::recall_level(i), "%.1f") + ',' +
                   fmt(c.curve.precision[i]) + '\n';
        }
    }
    return out;
}

std::string roc_csv(std::span<const LabeledRocCurve> curves) {
    std::string out = "descriptor,fpr,tpr\n";
    for (const LabeledRocCurve& c : curves) {
        for (const RocPoint& p : c.curve.points) {
            out += c.name + ',' + fmt(p.fpr) + ',' + fmt(p.tpr) + '\n';
        }
    }
    return out;
}

std::string roc_auc_csv(std::span<const LabeledRocCurve> curves) {
    std::string out = "descriptor,auc\n";
    for (const LabeledRocCurve& c : curves) out += c.name + ',' + fmt(c.curve.auc) + '\n';
    return out;
}

std::string pca_csv(std::string_view fem, std::span<const Label> labels,
                    const PcaProjection& projection) {
    std::string out = "fem,index,label,pc1,pc2\n";
    for (std::size_t i = 0; i < projection.coords.size(); ++i) {
        out += std::string(fem) + ',' + std::to_string(i) + ',' +
               std::string(label_name(labels[i])) + ',' + fmt(projection.coords[i][0]) + ',' +
               fmt(projection.coords[i][1]) + '\n';
    }
    return out;
}

std::string timing_extract_csv(std::span<const ExtractorTiming> rows) {
    std::string out = "fem,mean_ms,stddev_ms,images\n";
    for (const ExtractorTiming& r : rows) {
        out += std::string(descriptor_name(r.fem)) + ',' + fmt(r.mean_ms, "%.3f") + ',' +
               fmt(r.stddev_ms, "%.3f") + ',' + std::to_string(r.images) + '\n';
    }
    return out;
}

std::string timing_distance_csv(std::span<const DistanceTiming> rows) {
    std::string out = "ef,evals_per_sec,evals,checksum\n";
    for (const DistanceTiming& r : rows) {
        out += std::string(eval_function_name(r.ef)) + ',' + fmt(r.evals_per_sec, "%.1f") + ',' +
               std::to_string(r.evals) + ',' + fmt(r.checksum, "%.6g") + '\n';
    }
    return out;
}

namespace {

constexpr int kWidth = 640, kHeight = 480;
constexpr int kMargin = 64;
constexpr int kPlotW = kWidth - 2 * kMargin;
constexpr int kPlotH = kHeight - 2 * kMargin;

std::string svg_open(std::string_view title) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
                      "\" viewBox=\"0 0 " + std::to_string(kWidth) + ' ' +
                      std::to_string(kHeight) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(kWidth / 2) +
           "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" + std::string(title) +
           "</text>\n";
    return out;
}

std::string axis_labels(std::string_view x_label, std::string_view y_label) {
    std::string out;
    out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight - 16) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + std::string(x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + std::to_string(kHeight / 2) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 " +
           std::to_string(kHeight / 2) + ")\">" + std::string(y_label) + "</text>\n";
    return out;
}

}  // namespace

std::string svg_unit_chart(std::string_view title, std::string_view x_label,
                           std::string_view y_label, std::span<const Series> series) {
    const auto px = [](double x) { return kMargin + x * kPlotW; };
    const auto py = [](double y) { return kHeight - kMargin - y * kPlotH; };

    std::string out = svg_open(title);
    for (int i = 0; i <= 5; ++i) {
        const double v = i / 5.0;
        out += "<line x1=\"" + fmt(px(v), "%.1f") + "\" y1=\"" + fmt(py(0), "%.1f") +
               "\" x2=\"" + fmt(px(v), "%.1f") + "\" y2=\"" + fmt(py(1), "%.1f") +
               "\" stroke=\"#dddddd\"/>\n";
        out += "<line x1=\"" + fmt(px(0), "%.1f") + "\" y1=\"" + fmt(py(v), "%.1f") +
               "\" x2=\"" + fmt(px(1), "%.1f") + "\" y2=\"" + fmt(py(v), "%.1f") +
               "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(px(v), "%.1f") + "\" y=\"" + fmt(py(0) + 16, "%.1f") +
               "\" text-anchor=\"middle\" font-size=\"10\">" + fmt(v, "%.1f") + "</text>\n";
        out += "<text x=\"" + fmt(px(0) - 8, "%.1f") + "\" y=\"" + fmt(py(v) + 4, "%.1f") +
               "\" text-anchor=\"end\" font-size=\"10\">" + fmt(v, "%.1f") + "</text>\n";
    }
    out += "<rect x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(kMargin) +
           "\" width=\"" + std::to_string(kPlotW) + "\" height=\"" + std::to_string(kPlotH) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        std::string points;
        for (const auto& [x, y] : series[s].points) {
            points += fmt(px(x), "%.2f") + ',' + fmt(py(y), "%.2f") + ' ';
        }
        out += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" +
               palette(s) + "\" stroke-width=\"1.5\"/>\n";
        const double ly = kMargin + 14.0 + 14.0 * static_cast<double>(s);
        out += "<line x1=\"" + std::to_string(kMargin + 8) + "\" y1=\"" + fmt(ly - 4, "%.1f") +
               "\" x2=\"" + std::to_string(kMargin + 28) + "\" y2=\"" + fmt(ly - 4, "%.1f") +
               "\" stroke=\"" + palette(s) + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + std::to_string(kMargin + 32) + "\" y=\"" + fmt(ly, "%.1f") +
               "\" font-size=\"11\">" + series[s].name + "</text>\n";
    }
    out += axis_labels(x_label, y_label);
    out += "</svg>\n";
    return out;
}

std::string svg_scatter(std::string_view title, std::span<const Label> labels,
                        const PcaProjection& projection) {
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    if (!projection.coords.empty()) {
        min_x = max_x = projection.coords[0][0];
        min_y = max_y = projection.coords[0][1];
        for (const auto& c : projection.coords) {
            min_x = std::min(min_x, c[0]);
            max_x = std::max(max_x, c[0]);
            min_y = std::min(min_y, c[1]);
            max_y = std::max(max_y, c[1]);
        }
    }
    const double span_x = std::max(max_x - min_x, 1e-12);
    const double span_y = std::max(max_y - min_y, 1e-12);
    const auto px = [&](double x) { return kMargin + (x - min_x) / span_x * kPlotW; };
    const auto py = [&](double y) { return kHeight - kMargin - (y - min_y) / span_y * kPlotH; };

    std::string out = svg_open(title);
    out += "<rect x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(kMargin) +
           "\" width=\"" + std::to_string(kPlotW) + "\" height=\"" + std::to_string(kPlotH) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < projection.coords.size(); ++i) {
        const char* color = labels[i] == Label::Fire ? kPalette[0] : kPalette[1];
        out += "<circle cx=\"" + fmt(px(projection.coords[i][0]), "%.2f") + "\" cy=\"" +
               fmt(py(projection.coords[i][1]), "%.2f") + "\" r=\"2.2\" fill=\"" + color +
               "\" fill-opacity=\"0.7\"/>\n";
    }
    out += "<circle cx=\"" + std::to_string(kMargin + 12) + "\" cy=\"" +
           std::to_string(kMargin + 12) + "\" r=\"4\" fill=\"" + kPalette[0] + "\"/>\n";
    out += "<text x=\"" + std::to_string(kMargin + 22) + "\" y=\"" +
           std::to_string(kMargin + 16) + "\" font-size=\"11\">fire</text>\n";
    out += "<circle cx=\"" + std::to_string(kMargin + 12) + "\" cy=\"" +
           std::to_string(kMargin + 30) + "\" r=\"4\" fill=\"" + kPalette[1] + "\"/>\n";
    out += "<text x=\"" + std::to_string(kMargin + 22) + "\" y=\"" +
           std::to_string(kMargin + 34) + "\" font-size=\"11\">not_fire</text>\n";
    out += axis_labels("first principal component", "second principal component");
    out += "</svg>\n";
    return out;
}

std::string svg_bars(std::string_view title, std::string_view unit, std::span<const Bar> bars) {
    double max_v = 1e-12;
    for (const Bar& b : bars) max_v = std::max(max_v, b.value);

    std::string out = svg_open(title);
    const double row_h = bars.empty() ? 1.0 : static_cast<double>(kPlotH) / bars.size();
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double y = kMargin + row_h * i + row_h * 0.2;
        const double h = row_h * 0.6;
        const double w = bars[i].value / max_v * (kPlotW - 90);
        out += "<text x=\"" + std::to_string(kMargin - 6) + "\" y=\"" +
               fmt(y + h / 2 + 4, "%.1f") + "\" text-anchor=\"end\" font-size=\"11\">" +
               bars[i].label + "</text>\n";
        out += "<rect x=\"" + std::to_string(kMargin) + "\" y=\"" + fmt(y, "%.1f") +
               "\" width=\"" + fmt(std::max(w, 0.5), "%.1f") + "\" height=\"" + fmt(h, "%.1f") +
               "\" fill=\"" + palette(i) + "\"/>\n";
        out += "<text x=\"" + fmt(kMargin + std::max(w, 0.5) + 6, "%.1f") + "\" y=\"" +
               fmt(y + h / 2 + 4, "%.1f") + "\" font-size=\"11\">" + fmt(bars[i].value, "%.3g") +
               ' ' + std::string(unit) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing " + path.string());
}

}  // namespace ffiredt::report
