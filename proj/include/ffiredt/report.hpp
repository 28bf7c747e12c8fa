#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffiredt/harness.hpp"

namespace ffiredt::report {

// All emitters return complete file contents; every CSV carries a header row
// and every SVG is standalone. Numeric formatting is fixed so identical
// inputs give byte-identical files.

std::string grid_csv(const EvaluationGrid& grid);
std::string grid_folds_csv(const EvaluationGrid& grid);

/// Console rendering of the grid with the per-row maxima marked by '*'.
std::string grid_table(const EvaluationGrid& grid);

struct LabeledPrCurve {
    std::string name;
    PrCurve curve;
};
std::string pr_csv(std::span<const LabeledPrCurve> curves);

struct LabeledRocCurve {
    std::string name;
    RocCurve curve;
};
std::string roc_csv(std::span<const LabeledRocCurve> curves);
std::string roc_auc_csv(std::span<const LabeledRocCurve> curves);

std::string pca_csv(std::string_view fem, std::span<const Label> labels,
                    const PcaProjection& projection);

std::string timing_extract_csv(std::span<const ExtractorTiming> rows);
std::string timing_distance_csv(std::span<const DistanceTiming> rows);

/// Multi-series line chart over the unit square (P-R and ROC plots).
struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};
std::string svg_unit_chart(std::string_view title, std::string_view x_label,
                           std::string_view y_label, std::span<const Series> series);

/// Two-class scatter plot, axes fitted to the data (PCA projections).
std::string svg_scatter(std::string_view title, std::span<const Label> labels,
                        const PcaProjection& projection);

/// Horizontal bar chart (timing summaries).
struct Bar {
    std::string label;
    double value = 0.0;
};
std::string svg_bars(std::string_view title, std::string_view unit, std::span<const Bar> bars);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ffiredt::report
