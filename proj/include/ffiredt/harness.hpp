#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffiredt/classifier.hpp"
#include "ffiredt/feature.hpp"
#include "ffiredt/image.hpp"
#include "ffiredt/store.hpp"

namespace ffiredt {

/// Binary confusion counts with 'fire' as the positive class.
struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

/// 2*TP / (2*TP + FP + FN). Throws HarnessError when the denominator is zero.
double f_measure(const ConfusionCounts& c);

enum class SplitMode {
    /// One fold trains, the remaining folds test (the default here).
    TrainOnFold,
    /// Conventional direction: the remaining folds train, one fold tests.
    TestOnFold,
};

struct CrossValidationResult {
    double mean_f = 0.0;
    std::vector<double> fold_f;
    ConfusionCounts total;
};

/// Stratified fold assignment: a seeded per-class shuffle dealt round-robin,
/// so per-fold class counts deviate from the ideal by at most one instance.
/// Unlabeled instances get fold -1. Throws HarnessError when a class has
/// fewer instances than folds.
std::vector<int> stratified_folds(std::span<const StoredInstance> corpus, int folds,
                                  std::uint64_t seed);

/// Stratified k-fold cross-validation of the IB1 classifier over a labeled
/// corpus of feature vectors that share one descriptor. The partition is a
/// seeded shuffle dealt round-robin per class; identical seeds give identical
/// partitions. Throws HarnessError when a class is missing from some
/// training fold.
CrossValidationResult cross_validate(std::span<const StoredInstance> corpus, EvalFunction ef,
                                     std::size_t k, int folds, std::uint64_t seed,
                                     SplitMode split = SplitMode::TrainOnFold);

struct GridCell {
    Descriptor fem = Descriptor::ColorLayout;
    EvalFunction ef = EvalFunction::CityBlock;
    std::optional<CrossValidationResult> result;
    std::string error;      // set when this cell failed
    bool row_best = false;  // highest mean F in its FEM row
};

struct EvaluationGrid {
    std::vector<Descriptor> fems;
    std::vector<EvalFunction> efs;
    std::vector<GridCell> cells;  // fems-major order

    const GridCell& cell(Descriptor fem, EvalFunction ef) const;
};

/// Fills the FEM x EF F-measure grid. Per-cell failures are recorded, not
/// fatal. Cells are independent and run on `jobs` worker threads (0 = one
/// per logical CPU); identical seeds give identical grids either way.
EvaluationGrid run_grid(const std::map<Descriptor, std::vector<StoredInstance>>& corpora,
                        std::span<const Descriptor> fems, std::span<const EvalFunction> efs,
                        std::size_t k, int folds, std::uint64_t seed,
                        SplitMode split = SplitMode::TrainOnFold, unsigned jobs = 1);

/// Interpolated precision at recall levels 0.0, 0.1, ..., 1.0, averaged over
/// the queries. Queries whose label is absent from the store are skipped.
struct PrCurve {
    static constexpr std::size_t kLevels = 11;
    std::array<double, kLevels> precision{};
    std::size_t queries_used = 0;
    std::size_t queries_skipped = 0;

    static constexpr double recall_level(std::size_t i) { return 0.1 * static_cast<double>(i); }
};

PrCurve precision_recall_curve(std::span<const StoredInstance> store,
                               std::span<const StoredInstance> queries, EvalFunction ef);

struct RocPoint {
    double fpr = 0.0, tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// Threshold sweep over distinct scores (higher score = more fire-like) with
/// trapezoidal area. Throws HarnessError when only one class is present.
RocCurve roc_curve(std::span<const std::pair<double, Label>> scored);

struct PcaProjection {
    std::vector<std::array<double, 2>> coords;       // one (pc1, pc2) per input
    std::array<double, 2> explained_variance{};      // top-2 covariance eigenvalues
};

/// Projection onto the top-2 principal axes of the sample covariance.
/// Sign convention: each axis' largest-magnitude component is positive.
/// Throws HarnessError on fewer than 3 vectors, dimension < 2 or
/// zero-variance data.
PcaProjection pca_project(std::span<const FeatureVector> vectors);

struct ExtractorTiming {
    Descriptor fem = Descriptor::ColorLayout;
    double mean_ms = 0.0;
    double stddev_ms = 0.0;
    std::size_t images = 0;
};

/// Wall-clock extraction cost per image and extractor, single-threaded, after
/// one untimed warm-up pass.
std::vector<ExtractorTiming> bench_extractors(std::span<const RasterImage> images,
                                              const DescriptorConfig& cfg);

struct DistanceTiming {
    EvalFunction ef = EvalFunction::CityBlock;
    double evals_per_sec = 0.0;
    std::uint64_t evals = 0;
    double checksum = 0.0;  // accumulated results, keeps the loop alive
};

/// Evaluation throughput over pre-generated random non-negative vectors,
/// single-threaded.
std::vector<DistanceTiming> bench_distances(std::uint64_t n_evals, std::size_t dim,
                                            std::uint64_t seed = 1);

}  // namespace ffiredt
