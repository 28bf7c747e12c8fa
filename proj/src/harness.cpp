#include "ffiredt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"

namespace ffiredt {

double f_measure(const ConfusionCounts& c) {
    const std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) {
        throw HarnessError("F-measure undefined: no positives anywhere in the counts");
    }
    return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

namespace {

// Explicit Fisher-Yates so a seed pins the partition regardless of the
// standard library's shuffle internals.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start, Clock::time_point end) {
    return std::chrono::duration<double, std::milli>(end - start).count();
}

}  // namespace

std::vector<int> stratified_folds(std::span<const StoredInstance> corpus, int folds,
                                  std::uint64_t seed) {
    if (folds < 2) throw HarnessError("cross-validation needs at least 2 folds");

    std::vector<std::size_t> fire, not_fire;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (corpus[i].label == Label::Fire) fire.push_back(i);
        else if (corpus[i].label == Label::NotFire) not_fire.push_back(i);
    }
    const std::size_t nfolds = static_cast<std::size_t>(folds);
    if (fire.size() < nfolds || not_fire.size() < nfolds) {
        throw HarnessError("stratification error: every class needs at least one instance per "
                           "fold (fire=" +
                           std::to_string(fire.size()) + ", not_fire=" +
                           std::to_string(not_fire.size()) + ", folds=" + std::to_string(folds) +
                           ")");
    }

    std::mt19937_64 rng(seed);
    seeded_shuffle(fire, rng);
    seeded_shuffle(not_fire, rng);
    std::vector<int> fold_of(corpus.size(), -1);
    for (std::size_t j = 0; j < fire.size(); ++j) fold_of[fire[j]] = static_cast<int>(j % nfolds);
    for (std::size_t j = 0; j < not_fire.size(); ++j) {
        fold_of[not_fire[j]] = static_cast<int>(j % nfolds);
    }
    return fold_of;
}

CrossValidationResult cross_validate(std::span<const StoredInstance> corpus, EvalFunction ef,
                                     std::size_t k, int folds, std::uint64_t seed,
                                     SplitMode split) {
    const std::vector<int> fold_of = stratified_folds(corpus, folds, seed);

    CrossValidationResult out;
    out.fold_f.reserve(static_cast<std::size_t>(folds));
    for (int round = 0; round < folds; ++round) {
        std::vector<StoredInstance> train;
        std::vector<const StoredInstance*> test;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (fold_of[i] < 0) continue;  // unlabeled instances take no part
            const bool in_round_fold = fold_of[i] == round;
            const bool trains = split == SplitMode::TrainOnFold ? in_round_fold : !in_round_fold;
            if (trains) train.push_back(corpus[i]);
            else test.push_back(&corpus[i]);
        }

        bool train_has_fire = false, train_has_not_fire = false;
        for (const StoredInstance& t : train) {
            train_has_fire |= t.label == Label::Fire;
            train_has_not_fire |= t.label == Label::NotFire;
        }
        if (!train_has_fire || !train_has_not_fire) {
            throw HarnessError("stratification error: a class is absent from the training fold");
        }

        ConfusionCounts counts;
        for (const StoredInstance* q : test) {
            const Classification c = classify_scan(train, q->vector, k, ef);
            if (c.predicted == Label::Fire) {
                (q->label == Label::Fire ? counts.tp : counts.fp)++;
            } else {
                (q->label == Label::Fire ? counts.fn : counts.tn)++;
            }
        }
        out.fold_f.push_back(f_measure(counts));
        out.total.tp += counts.tp;
        out.total.fp += counts.fp;
        out.total.fn += counts.fn;
        out.total.tn += counts.tn;
    }

    double sum = 0.0;
    for (double f : out.fold_f) sum += f;
    out.mean_f = sum / static_cast<double>(out.fold_f.size());
    return out;
}

const GridCell& EvaluationGrid::cell(Descriptor fem, EvalFunction ef) const {
    for (const GridCell& c : cells) {
        if (c.fem == fem && c.ef == ef) return c;
    }
    throw HarnessError("no such grid cell");
}

EvaluationGrid run_grid(const std::map<Descriptor, std::vector<StoredInstance>>& corpora,
                        std::span<const Descriptor> fems, std::span<const EvalFunction> efs,
                        std::size_t k, int folds, std::uint64_t seed, SplitMode split,
                        unsigned jobs) {
    EvaluationGrid grid;
    grid.fems.assign(fems.begin(), fems.end());
    grid.efs.assign(efs.begin(), efs.end());
    grid.cells.resize(fems.size() * efs.size());

    // Cells are independent; each worker owns the slots it fills, so the
    // result is the same for any worker count.
    const auto fill_cell = [&](std::size_t index) {
        GridCell& cell = grid.cells[index];
        cell.fem = fems[index / efs.size()];
        cell.ef = efs[index % efs.size()];
        const auto corpus = corpora.find(cell.fem);
        if (corpus == corpora.end()) {
            cell.error = "no features extracted for this descriptor";
            return;
        }
        try {
            cell.result = cross_validate(corpus->second, cell.ef, k, folds, seed, split);
        } catch (const Error& e) {
            cell.error = e.what();
        }
    };

    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs <= 1 || grid.cells.size() <= 1) {
        for (std::size_t i = 0; i < grid.cells.size(); ++i) fill_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        const std::size_t count = std::min<std::size_t>(jobs, grid.cells.size());
        for (std::size_t w = 0; w < count; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= grid.cells.size()) return;
                    fill_cell(i);
                }
            });
        }
        for (std::thread& t : workers) t.join();
    }

    for (std::size_t row = 0; row < fems.size(); ++row) {
        const std::size_t row_start = row * efs.size();
        std::size_t best = row_start;
        bool any = false;
        for (std::size_t i = row_start; i < row_start + efs.size(); ++i) {
            if (!grid.cells[i].result) continue;
            if (!any || grid.cells[i].result->mean_f > grid.cells[best].result->mean_f) {
                best = i;
                any = true;
            }
        }
        if (any) grid.cells[best].row_best = true;
    }
    return grid;
}

PrCurve precision_recall_curve(std::span<const StoredInstance> store,
                               std::span<const StoredInstance> queries, EvalFunction ef) {
    PrCurve out;
    std::array<double, PrCurve::kLevels> sums{};

    std::vector<std::pair<double, bool>> ranked;  // (distance, relevant), sorted ascending
    for (const StoredInstance& q : queries) {
        std::size_t total_relevant = 0;
        for (const StoredInstance& s : store) {
            if (s.label == q.label) ++total_relevant;
        }
        if (total_relevant == 0 || q.label == Label::Unlabeled) {
            ++out.queries_skipped;
            continue;
        }

        ranked.clear();
        ranked.reserve(store.size());
        for (const StoredInstance& s : store) {
            ranked.emplace_back(evaluate_values(ef, q.vector.values, s.vector.values),
                                s.label == q.label);
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });

        // Precision at each relevant hit; interpolated precision at level L is
        // the best precision at recall >= L.
        std::array<double, PrCurve::kLevels> best{};
        std::size_t seen = 0;
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            if (!ranked[i].second) continue;
            ++seen;
            const double recall = static_cast<double>(seen) / static_cast<double>(total_relevant);
            const double precision = static_cast<double>(seen) / static_cast<double>(i + 1);
            for (std::size_t level = 0; level < PrCurve::kLevels; ++level) {
                if (recall + 1e-12 >= PrCurve::recall_level(level)) {
                    best[level] = std::max(best[level], precision);
                }
            }
        }
        for (std::size_t level = 0; level < PrCurve::kLevels; ++level) sums[level] += best[level];
        ++out.queries_used;
    }

    if (out.queries_used == 0) {
        throw HarnessError("precision-recall: every query was skipped");
    }
    for (std::size_t level = 0; level < PrCurve::kLevels; ++level) {
        out.precision[level] = sums[level] / static_cast<double>(out.queries_used);
    }
    return out;
}

RocCurve roc_curve(std::span<const std::pair<double, Label>> scored) {
    std::uint64_t positives = 0, negatives = 0;
    for (const auto& [score, label] : scored) {
        if (label == Label::Fire) ++positives;
        else if (label == Label::NotFire) ++negatives;
        else throw HarnessError("ROC input must be labeled fire or not_fire");
    }
    if (positives == 0 || negatives == 0) {
        throw HarnessError("ROC undefined: both classes must be present");
    }

    std::vector<std::pair<double, Label>> sorted(scored.begin(), scored.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    RocCurve out;
    out.points.push_back({0.0, 0.0});
    std::uint64_t tp = 0, fp = 0;
    double auc = 0.0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        // Consume the whole tie group so equal scores form one diagonal step.
        const double score = sorted[i].first;
        while (i < sorted.size() && sorted[i].first == score) {
            (sorted[i].second == Label::Fire ? tp : fp)++;
            ++i;
        }
        const double fpr = static_cast<double>(fp) / static_cast<double>(negatives);
        const double tpr = static_cast<double>(tp) / static_cast<double>(positives);
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        out.points.push_back({fpr, tpr});
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    out.auc = auc;
    return out;
}

PcaProjection pca_project(std::span<const FeatureVector> vectors) {
    const std::size_t n = vectors.size();
    if (n < 3) throw HarnessError("PCA needs at least 3 vectors");
    const std::size_t dim = vectors[0].values.size();
    if (dim < 2) throw HarnessError("PCA needs dimension >= 2");
    for (const FeatureVector& v : vectors) {
        if (v.values.size() != dim) throw HarnessError("PCA input dimensions differ");
    }

    Eigen::MatrixXd data(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                vectors[i].values[j];
        }
    }
    const Eigen::RowVectorXd mean = data.colwise().mean();
    data.rowwise() -= mean;

    const Eigen::MatrixXd covariance =
        data.transpose() * data / static_cast<double>(n - 1);
    if (covariance.trace() <= 1e-30) {
        throw HarnessError("degenerate projection: data has zero variance");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
    if (solver.info() != Eigen::Success) {
        throw HarnessError("PCA eigendecomposition failed");
    }

    PcaProjection out;
    Eigen::MatrixXd axes(static_cast<Eigen::Index>(dim), 2);
    for (int a = 0; a < 2; ++a) {
        // Eigenvalues come back ascending; take the top two.
        const Eigen::Index src = static_cast<Eigen::Index>(dim) - 1 - a;
        Eigen::VectorXd axis = solver.eigenvectors().col(src);
        Eigen::Index largest = 0;
        axis.cwiseAbs().maxCoeff(&largest);
        if (axis(largest) < 0.0) axis = -axis;
        axes.col(a) = axis;
        out.explained_variance[static_cast<std::size_t>(a)] =
            std::max(0.0, solver.eigenvalues()(src));
    }

    const Eigen::MatrixXd projected = data * axes;
    out.coords.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.coords[i] = {projected(static_cast<Eigen::Index>(i), 0),
                         projected(static_cast<Eigen::Index>(i), 1)};
    }
    return out;
}

std::vector<ExtractorTiming> bench_extractors(std::span<const RasterImage> images,
                                              const DescriptorConfig& cfg) {
    if (images.empty()) throw HarnessError("extraction benchmark needs a non-empty corpus");

    std::vector<ExtractorTiming> report;
    report.reserve(kAllDescriptors.size());
    for (Descriptor fem : kAllDescriptors) {
        for (const RasterImage& img : images) (void)extract(img, fem, cfg);  // warm-up

        std::vector<double> times;
        times.reserve(images.size());
        for (const RasterImage& img : images) {
            const auto start = Clock::now();
            (void)extract(img, fem, cfg);
            times.push_back(elapsed_ms(start, Clock::now()));
        }

        ExtractorTiming t;
        t.fem = fem;
        t.images = images.size();
        for (double ms : times) t.mean_ms += ms;
        t.mean_ms /= static_cast<double>(times.size());
        for (double ms : times) t.stddev_ms += (ms - t.mean_ms) * (ms - t.mean_ms);
        t.stddev_ms = std::sqrt(t.stddev_ms / static_cast<double>(times.size()));
        report.push_back(t);
    }
    return report;
}

std::vector<DistanceTiming> bench_distances(std::uint64_t n_evals, std::size_t dim,
                                            std::uint64_t seed) {
    constexpr std::size_t kPoolSize = 256;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> pool(kPoolSize);
    for (auto& v : pool) {
        v.resize(dim);
        for (double& c : v) {
            c = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // uniform in [0, 1)
        }
    }

    std::vector<DistanceTiming> report;
    report.reserve(kAllEvalFunctions.size());
    for (EvalFunction ef : kAllEvalFunctions) {
        double checksum = 0.0;
        const auto start = Clock::now();
        for (std::uint64_t i = 0; i < n_evals; ++i) {
            const std::vector<double>& x = pool[i % kPoolSize];
            const std::vector<double>& y = pool[(i + 17) % kPoolSize];
            checksum += evaluate_values(ef, x, y);
        }
        const double seconds =
            std::chrono::duration<double>(Clock::now() - start).count();

        DistanceTiming t;
        t.ef = ef;
        t.evals = n_evals;
        t.evals_per_sec = static_cast<double>(n_evals) / seconds;
        t.checksum = checksum;
        report.push_back(t);
    }
    return report;
}

}  // namespace ffiredt
