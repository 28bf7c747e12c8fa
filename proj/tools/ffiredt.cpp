// Command-line front end: corpus ingestion, feature extraction, similarity
// queries, IB1 classification, the evaluation harness and the synthetic
// corpus generator.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ffiredt/classifier.hpp"
#include "ffiredt/corpus.hpp"
#include "ffiredt/descriptors.hpp"
#include "ffiredt/error.hpp"
#include "ffiredt/harness.hpp"
#include "ffiredt/report.hpp"
#include "ffiredt/store.hpp"
#include "ffiredt/synth.hpp"

namespace fs = std::filesystem;
using namespace ffiredt;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::uint64_t seed = 42;
    unsigned jobs = 0;  // 0 = logical CPU count
    std::string out = ".";
    bool overwrite = false;

    DescriptorConfig config() const {
        if (!config_path.empty()) return DescriptorConfig::from_file(config_path);
        return DescriptorConfig{};
    }
};

std::vector<Descriptor> parse_fems(const std::string& list) {
    if (list.empty() || list == "all") {
        return {kAllDescriptors.begin(), kAllDescriptors.end()};
    }
    std::vector<Descriptor> fems;
    std::set<std::string> seen;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string name = list.substr(start, comma - start);
        const auto d = descriptor_from_name(name);
        if (!d) {
            throw CLI::ValidationError("--fems",
                                       "unknown descriptor '" + name +
                                           "' (expected any of cl,sc,cs,ct,eh,tb)");
        }
        if (seen.insert(name).second) fems.push_back(*d);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fems;
}

std::vector<EvalFunction> parse_efs(const std::string& list) {
    if (list.empty() || list == "all") {
        return {kAllEvalFunctions.begin(), kAllEvalFunctions.end()};
    }
    std::vector<EvalFunction> efs;
    std::set<std::string> seen;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string name = list.substr(start, comma - start);
        const auto ef = eval_function_from_name(name);
        if (!ef) {
            throw CLI::ValidationError(
                "--efs", "unknown evaluation function '" + name +
                             "' (expected any of cb,eu,ch,ca,ku,jf)");
        }
        if (seen.insert(name).second) efs.push_back(*ef);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return efs;
}

// Run fn(0..n-1) on a small worker pool; rethrows the first failure.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    const std::size_t count = std::min<std::size_t>(jobs, n);
    workers.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
}

fs::path store_path(const fs::path& dir, Descriptor fem) {
    return dir / (std::string(descriptor_name(fem)) + ".ffdt");
}

std::string fmt_double(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthArgs {
    int count = 200;
    int size = 256;
};

int cmd_synth(const GlobalOptions& global, const SynthArgs& args) {
    SyntheticSpec spec;
    spec.per_class = args.count;
    spec.size = args.size;
    spec.seed = global.seed;
    spec.validate();

    const fs::path out_dir = global.out;
    const fs::path image_dir = out_dir / "images";
    const fs::path manifest_path = out_dir / "manifest.csv";
    if (fs::exists(manifest_path) && !global.overwrite) {
        throw Error("refusing to overwrite " + manifest_path.string() + " (use --overwrite)");
    }
    fs::create_directories(image_dir);

    std::vector<SyntheticImage> corpus = generate_corpus(spec);
    std::vector<ManifestEntry> entries(corpus.size());
    std::vector<int> class_index(corpus.size());
    std::map<Label, int> counters;
    for (std::size_t i = 0; i < corpus.size(); ++i) class_index[i] = counters[corpus[i].label]++;

    parallel_for(corpus.size(), global.jobs, [&](std::size_t i) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%04d.png",
                      std::string(label_name(corpus[i].label)).c_str(), class_index[i]);
        save_png(corpus[i].image, image_dir / name);
        entries[i] = {fs::path("images") / name, corpus[i].label};
    });
    write_manifest(manifest_path, entries);

    std::cout << "wrote " << corpus.size() << " images and " << manifest_path.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

struct ExtractArgs {
    std::string manifest;
    std::string fems = "all";
};

int cmd_extract(const GlobalOptions& global, const ExtractArgs& args) {
    const DescriptorConfig cfg = global.config();
    const std::vector<Descriptor> fems = parse_fems(args.fems);
    const std::vector<ManifestEntry> entries = read_manifest(args.manifest);

    const fs::path out_dir = global.out;
    fs::create_directories(out_dir);
    for (Descriptor fem : fems) {
        const fs::path path = store_path(out_dir, fem);
        if (fs::exists(path)) {
            if (!global.overwrite) {
                throw Error("refusing to overwrite " + path.string() + " (use --overwrite)");
            }
            fs::remove(path);
        }
    }

    struct PerImage {
        bool ok = false;
        std::string error;
        std::vector<FeatureVector> features;  // one per fem, in fems order
    };
    std::vector<PerImage> results(entries.size());
    std::mutex log_mutex;

    parallel_for(entries.size(), global.jobs, [&](std::size_t i) {
        PerImage& slot = results[i];
        try {
            const RasterImage img = load_image(entries[i].path, i);
            slot.features.reserve(fems.size());
            for (Descriptor fem : fems) slot.features.push_back(extract(img, fem, cfg));
            slot.ok = true;
        } catch (const Error& e) {
            slot.error = e.what();
            std::lock_guard<std::mutex> lock(log_mutex);
            std::cerr << "warning: skipping " << entries[i].path.string() << ": " << e.what()
                      << "\n";
        }
    });

    std::size_t failures = 0;
    std::vector<FeatureStore> stores;
    stores.reserve(fems.size());
    for (Descriptor fem : fems) stores.push_back(FeatureStore::open(store_path(out_dir, fem), fem));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!results[i].ok) {
            ++failures;
            continue;
        }
        for (std::size_t f = 0; f < fems.size(); ++f) {
            stores[f].insert({i, entries[i].label, results[i].features[f]});
        }
    }
    for (FeatureStore& store : stores) {
        std::cout << store.path().string() << ": " << store.size() << " vectors\n";
        store.close();
    }
    std::cout << "images: " << entries.size() << ", extracted: " << entries.size() - failures
              << ", failed: " << failures << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// classify / query
// ---------------------------------------------------------------------------

struct ClassifyArgs {
    std::string store_dir;
    std::string fem = "cs";
    std::string ef = "eu";
    std::size_t k = 1;
    std::vector<std::string> images;
};

FeatureStore open_store_or_hint(const fs::path& dir, Descriptor fem) {
    const fs::path path = store_path(dir, fem);
    if (!fs::exists(path)) {
        throw Error("no feature store at " + path.string() + "; run 'ffiredt extract' first");
    }
    return FeatureStore::open(path, fem);
}

int cmd_classify(const GlobalOptions& global, const ClassifyArgs& args) {
    const DescriptorConfig cfg = global.config();
    const Descriptor fem = *descriptor_from_name(args.fem);
    const EvalFunction ef = *eval_function_from_name(args.ef);
    const fs::path dir = args.store_dir.empty() ? fs::path(global.out) : fs::path(args.store_dir);
    const FeatureStore store = open_store_or_hint(dir, fem);

    std::cout << "path,label,score\n";
    for (const std::string& path : args.images) {
        try {
            const RasterImage img = load_image(path);
            const Classification c = classify(store, extract(img, fem, cfg), args.k, ef);
            std::cout << path << ',' << label_name(c.predicted) << ','
                      << fmt_double(c.score, "%.6f") << "\n";
        } catch (const Error& e) {
            std::cerr << "warning: " << path << ": " << e.what() << "\n";
        }
    }
    return 0;
}

struct QueryArgs {
    std::string store_dir;
    std::string fem = "cs";
    std::string ef = "eu";
    std::size_t k = 5;
    std::string manifest;
    std::string image;
};

int cmd_query(const GlobalOptions& global, const QueryArgs& args) {
    const DescriptorConfig cfg = global.config();
    const Descriptor fem = *descriptor_from_name(args.fem);
    const EvalFunction ef = *eval_function_from_name(args.ef);
    const fs::path dir = args.store_dir.empty() ? fs::path(global.out) : fs::path(args.store_dir);
    const FeatureStore store = open_store_or_hint(dir, fem);

    std::vector<ManifestEntry> entries;
    if (!args.manifest.empty()) entries = read_manifest(args.manifest);

    const RasterImage img = load_image(args.image);
    const KnnResult neighbors = store.knn(extract(img, fem, cfg), args.k, ef);

    std::cout << "rank,image_id,path,label,distance\n";
    for (std::size_t rank = 0; rank < neighbors.size(); ++rank) {
        const Neighbor& n = neighbors[rank];
        std::string path;
        if (n.image_id < entries.size()) path = entries[n.image_id].path.generic_string();
        Label label = Label::Unlabeled;
        for (const StoredInstance& inst : store.scan()) {
            if (inst.image_id == n.image_id) {
                label = inst.label;
                break;
            }
        }
        std::cout << rank + 1 << ',' << n.image_id << ',' << path << ',' << label_name(label)
                  << ',' << fmt_double(n.distance, "%.9g") << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateArgs {
    std::string manifest;
    std::string store_dir;
    std::string fems = "all";
    std::string efs = "all";
    std::size_t k = 1;
    int folds = 10;
    std::size_t roc_k = 15;
    bool flip_split = false;
    std::uint64_t bench_evals = 1000000;
    bool skip_bench = false;
};

std::map<Descriptor, std::vector<StoredInstance>> gather_corpora(
    const GlobalOptions& global, const EvaluateArgs& args, const std::vector<Descriptor>& fems,
    std::vector<RasterImage>* images_out) {
    std::map<Descriptor, std::vector<StoredInstance>> corpora;
    if (!args.manifest.empty()) {
        const DescriptorConfig cfg = global.config();
        const std::vector<ManifestEntry> entries = read_manifest(args.manifest);
        std::vector<std::optional<RasterImage>> images(entries.size());
        std::vector<std::vector<FeatureVector>> features(entries.size());
        std::mutex log_mutex;
        parallel_for(entries.size(), global.jobs, [&](std::size_t i) {
            try {
                RasterImage img = load_image(entries[i].path, i);
                for (Descriptor fem : fems) features[i].push_back(extract(img, fem, cfg));
                images[i] = std::move(img);
            } catch (const Error& e) {
                std::lock_guard<std::mutex> lock(log_mutex);
                std::cerr << "warning: skipping " << entries[i].path.string() << ": " << e.what()
                          << "\n";
            }
        });
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (!images[i]) continue;
            for (std::size_t f = 0; f < fems.size(); ++f) {
                corpora[fems[f]].push_back({i, entries[i].label, features[i][f]});
            }
            if (images_out) images_out->push_back(std::move(*images[i]));
        }
        return corpora;
    }

    const fs::path dir =
        args.store_dir.empty() ? fs::path(global.out) : fs::path(args.store_dir);
    for (Descriptor fem : fems) {
        FeatureStore store = open_store_or_hint(dir, fem);
        corpora[fem].assign(store.scan().begin(), store.scan().end());
    }
    return corpora;
}

int cmd_evaluate(const GlobalOptions& global, const EvaluateArgs& args) {
    const std::vector<Descriptor> fems = parse_fems(args.fems);
    const std::vector<EvalFunction> efs = parse_efs(args.efs);
    const fs::path out_dir = global.out;
    fs::create_directories(out_dir);

    std::vector<RasterImage> images;
    const auto corpora = gather_corpora(global, args, fems, &images);

    const SplitMode split = args.flip_split ? SplitMode::TestOnFold : SplitMode::TrainOnFold;
    const EvaluationGrid grid =
        run_grid(corpora, fems, efs, args.k, args.folds, global.seed, split, global.jobs);

    report::write_text_file(out_dir / "grid.csv", report::grid_csv(grid));
    report::write_text_file(out_dir / "grid_folds.csv", report::grid_folds_csv(grid));
    std::cout << report::grid_table(grid);

    // Precision-recall for the best evaluation function of each row, as the
    // per-row highlights of the grid suggest.
    std::vector<report::LabeledPrCurve> pr_curves;
    std::vector<report::Series> pr_series;
    for (Descriptor fem : fems) {
        const GridCell* best = nullptr;
        for (EvalFunction ef : efs) {
            const GridCell& cell = grid.cell(fem, ef);
            if (cell.row_best && cell.result) best = &cell;
        }
        if (!best) continue;
        const auto& corpus = corpora.at(fem);
        const PrCurve curve = precision_recall_curve(corpus, corpus, best->ef);
        const std::string name =
            std::string(descriptor_name(fem)) + "x" + std::string(eval_function_name(best->ef));
        pr_curves.push_back({name, curve});
        report::Series series;
        series.name = name;
        for (std::size_t i = 0; i < PrCurve::kLevels; ++i) {
            series.points.emplace_back(PrCurve::recall_level(i), curve.precision[i]);
        }
        pr_series.push_back(std::move(series));
    }
    report::write_text_file(out_dir / "pr.csv", report::pr_csv(pr_curves));
    report::write_text_file(out_dir / "pr.svg",
                            report::svg_unit_chart("Precision vs. recall", "recall", "precision",
                                                   pr_series));

    // ROC for the three best cells overall, scored by the fire fraction among
    // the classifier's neighbors over held-out folds.
    std::vector<const GridCell*> ranked;
    for (const GridCell& cell : grid.cells) {
        if (cell.result) ranked.push_back(&cell);
    }
    std::sort(ranked.begin(), ranked.end(), [](const GridCell* a, const GridCell* b) {
        return a->result->mean_f > b->result->mean_f;
    });
    if (ranked.size() > 3) ranked.resize(3);

    std::vector<report::LabeledRocCurve> roc_curves;
    std::vector<report::Series> roc_series;
    for (const GridCell* cell : ranked) {
        const auto& corpus = corpora.at(cell->fem);
        const std::vector<int> fold_of = stratified_folds(corpus, args.folds, global.seed);
        std::vector<std::pair<double, Label>> scored;
        for (int round = 0; round < args.folds; ++round) {
            std::vector<StoredInstance> train;
            std::vector<const StoredInstance*> test;
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                if (fold_of[i] < 0) continue;
                const bool in_fold = fold_of[i] == round;
                const bool trains = split == SplitMode::TrainOnFold ? in_fold : !in_fold;
                if (trains) train.push_back(corpus[i]);
                else test.push_back(&corpus[i]);
            }
            const std::size_t k_eff = std::min(args.roc_k, train.size());
            for (const StoredInstance* q : test) {
                const Classification c = classify_scan(train, q->vector, k_eff, cell->ef);
                scored.emplace_back(c.score, q->label);
            }
        }
        const RocCurve curve = roc_curve(scored);
        const std::string name = std::string(descriptor_name(cell->fem)) + "x" +
                                 std::string(eval_function_name(cell->ef));
        roc_curves.push_back({name, curve});
        report::Series series;
        series.name = name + " (auc " + fmt_double(curve.auc, "%.3f") + ")";
        for (const RocPoint& p : curve.points) series.points.emplace_back(p.fpr, p.tpr);
        roc_series.push_back(std::move(series));
    }
    report::write_text_file(out_dir / "roc.csv", report::roc_csv(roc_curves));
    report::write_text_file(out_dir / "roc_auc.csv", report::roc_auc_csv(roc_curves));
    report::write_text_file(
        out_dir / "roc.svg",
        report::svg_unit_chart("ROC", "false positive rate", "true positive rate", roc_series));

    // PCA scatter per descriptor.
    for (Descriptor fem : fems) {
        const auto& corpus = corpora.at(fem);
        std::vector<FeatureVector> vectors;
        std::vector<Label> labels;
        for (const StoredInstance& inst : corpus) {
            vectors.push_back(inst.vector);
            labels.push_back(inst.label);
        }
        try {
            const PcaProjection projection = pca_project(vectors);
            const std::string name(descriptor_name(fem));
            report::write_text_file(out_dir / ("pca_" + name + ".csv"),
                                    report::pca_csv(name, labels, projection));
            report::write_text_file(
                out_dir / ("pca_" + name + ".svg"),
                report::svg_scatter("PCA projection (" + name + ")", labels, projection));
        } catch (const Error& e) {
            std::cerr << "warning: pca for " << descriptor_name(fem) << ": " << e.what() << "\n";
        }
    }

    if (!args.skip_bench) {
        if (!images.empty()) {
            const auto rows = bench_extractors(images, global.config());
            report::write_text_file(out_dir / "timing_extract.csv",
                                    report::timing_extract_csv(rows));
            std::vector<report::Bar> bars;
            for (const ExtractorTiming& t : rows) {
                bars.push_back({std::string(descriptor_name(t.fem)), t.mean_ms});
            }
            report::write_text_file(out_dir / "timing_extract.svg",
                                    report::svg_bars("Extraction time per image", "ms", bars));
        }
        const auto rows = bench_distances(args.bench_evals, 256, global.seed);
        report::write_text_file(out_dir / "timing_distance.csv",
                                report::timing_distance_csv(rows));
        std::vector<report::Bar> bars;
        for (const DistanceTiming& t : rows) {
            bars.push_back({std::string(eval_function_name(t.ef)), t.evals_per_sec});
        }
        report::write_text_file(out_dir / "timing_distance.svg",
                                report::svg_bars("Evaluation throughput", "evals/s", bars));
    }

    std::cout << "report written to " << out_dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string mode;
    std::string manifest;
    std::uint64_t evals = 10000000;
    std::size_t dim = 256;
};

int cmd_bench(const GlobalOptions& global, const BenchArgs& args) {
    const fs::path out_dir = global.out;
    fs::create_directories(out_dir);
    if (args.mode == "extract") {
        if (args.manifest.empty()) throw Error("--mode extract needs --manifest");
        const std::vector<ManifestEntry> entries = read_manifest(args.manifest);
        std::vector<RasterImage> images;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            images.push_back(load_image(entries[i].path, i));
        }
        const auto rows = bench_extractors(images, global.config());
        const std::string csv = report::timing_extract_csv(rows);
        report::write_text_file(out_dir / "timing_extract.csv", csv);
        std::cout << csv;
    } else {
        const auto rows = bench_distances(args.evals, args.dim, global.seed);
        const std::string csv = report::timing_distance_csv(rows);
        report::write_text_file(out_dir / "timing_distance.csv", csv);
        std::cout << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FFireDt: image descriptors, similarity search and IB1 classification "
                 "for fire detection"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions global;
    app.add_option("--config", global.config_path, "extractor config file (key=value)")
        ->envname("FFIREDT_CONFIG");
    app.add_option("--seed", global.seed, "random seed for every seeded step");
    app.add_option("--jobs", global.jobs, "worker threads (0 = logical CPUs)");
    app.add_option("--out", global.out, "output directory");
    app.add_flag("--overwrite", global.overwrite, "replace existing outputs");

    const std::vector<std::string> fem_names = {"cl", "sc", "cs", "ct", "eh", "tb"};
    const std::vector<std::string> ef_names = {"cb", "eu", "ch", "ca", "ku", "jf"};

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    synth->add_option("--count", synth_args.count, "images per class")->check(CLI::PositiveNumber);
    synth->add_option("--size", synth_args.size, "image side in pixels")
        ->check(CLI::Range(32, 4096));

    ExtractArgs extract_args;
    CLI::App* extract = app.add_subcommand("extract", "extract features into store files");
    extract->add_option("--manifest", extract_args.manifest, "corpus manifest (path,label CSV)")
        ->required();
    extract->add_option("--fems", extract_args.fems, "descriptors, comma separated or 'all'");

    ClassifyArgs classify_args;
    CLI::App* classify = app.add_subcommand("classify", "label images with IB1");
    classify->add_option("--store-dir", classify_args.store_dir,
                         "directory holding the store files (default --out)");
    classify->add_option("--fem", classify_args.fem, "descriptor")->check(CLI::IsMember(fem_names));
    classify->add_option("--ef", classify_args.ef, "evaluation function")
        ->check(CLI::IsMember(ef_names));
    classify->add_option("--k", classify_args.k, "neighbors")->check(CLI::PositiveNumber);
    classify->add_option("images", classify_args.images, "image files to classify");

    QueryArgs query_args;
    CLI::App* query = app.add_subcommand("query", "rank the nearest stored images");
    query->add_option("--store-dir", query_args.store_dir,
                      "directory holding the store files (default --out)");
    query->add_option("--fem", query_args.fem, "descriptor")->check(CLI::IsMember(fem_names));
    query->add_option("--ef", query_args.ef, "evaluation function")
        ->check(CLI::IsMember(ef_names));
    query->add_option("--k", query_args.k, "neighbors")->check(CLI::PositiveNumber);
    query->add_option("--manifest", query_args.manifest, "manifest for resolving result paths");
    query->add_option("image", query_args.image, "query image")->required();

    EvaluateArgs evaluate_args;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "cross-validated descriptor grid, curves, PCA and timings");
    evaluate->add_option("--manifest", evaluate_args.manifest,
                         "extract features from this corpus in memory");
    evaluate->add_option("--store-dir", evaluate_args.store_dir,
                         "use existing store files instead of a manifest");
    evaluate->add_option("--fems", evaluate_args.fems, "descriptors, comma separated or 'all'");
    evaluate->add_option("--efs", evaluate_args.efs,
                         "evaluation functions, comma separated or 'all'");
    evaluate->add_option("--k", evaluate_args.k, "classifier neighbors")
        ->check(CLI::PositiveNumber);
    evaluate->add_option("--folds", evaluate_args.folds, "cross-validation folds")
        ->check(CLI::Range(2, 1000));
    evaluate->add_option("--roc-k", evaluate_args.roc_k, "neighbors behind the ROC score")
        ->check(CLI::PositiveNumber);
    evaluate->add_flag("--flip-split", evaluate_args.flip_split,
                       "train on all folds but one instead of on a single fold");
    evaluate->add_option("--bench-evals", evaluate_args.bench_evals,
                         "evaluations for the distance timing pass");
    evaluate->add_flag("--skip-bench", evaluate_args.skip_bench, "skip the timing passes");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "wall-clock benchmarks");
    bench->add_option("--mode", bench_args.mode, "what to time")
        ->required()
        ->check(CLI::IsMember({"extract", "distance"}));
    bench->add_option("--manifest", bench_args.manifest, "corpus for extract mode");
    bench->add_option("--evals", bench_args.evals, "evaluations per function (distance mode)")
        ->check(CLI::PositiveNumber);
    bench->add_option("--dim", bench_args.dim, "vector dimension (distance mode)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) return cmd_synth(global, synth_args);
        if (extract->parsed()) return cmd_extract(global, extract_args);
        if (classify->parsed()) return cmd_classify(global, classify_args);
        if (query->parsed()) return cmd_query(global, query_args);
        if (evaluate->parsed()) return cmd_evaluate(global, evaluate_args);
        if (bench->parsed()) return cmd_bench(global, bench_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
