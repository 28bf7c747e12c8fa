#include "ffiredt/classifier.hpp"

#include <string>

#include "ffiredt/error.hpp"

namespace ffiredt {

Classification classify_scan(std::span<const StoredInstance> instances,
                             const FeatureVector& query, std::size_t k, EvalFunction ef) {
    if (k < 1) throw ClassifyError("k must be at least 1");
    std::size_t labeled = 0;
    for (const StoredInstance& i : instances) {
        if (i.label != Label::Unlabeled) ++labeled;
    }
    if (labeled < k) {
        throw ClassifyError("insufficient labeled instances: have " + std::to_string(labeled) +
                            ", need " + std::to_string(k));
    }

    const std::vector<ScanHit> hits =
        knn_scan_hits(instances, query, k, ef,
                      [](const StoredInstance& i) { return i.label != Label::Unlabeled; });

    std::size_t fire = 0;
    for (const ScanHit& h : hits) {
        if (instances[h.index].label == Label::Fire) ++fire;
    }

    Classification out;
    out.image_id = query.image_id;
    out.score = static_cast<double>(fire) / static_cast<double>(k);
    out.k_used = k;
    if (2 * fire == k) {
        out.predicted = instances[hits.front().index].label;  // nearest neighbor breaks the tie
    } else {
        out.predicted = 2 * fire > k ? Label::Fire : Label::NotFire;
    }
    return out;
}

Classification classify(const FeatureStore& store, const FeatureVector& query, std::size_t k,
                        EvalFunction ef) {
    if (query.descriptor != store.descriptor()) {
        throw ClassifyError("query descriptor " + std::string(descriptor_name(query.descriptor)) +
                            " does not match store descriptor " +
                            std::string(descriptor_name(store.descriptor())));
    }
    return classify_scan(store.scan(), query, k, ef);
}

std::vector<ClassifyOutcome> classify_batch(const FeatureStore& store,
                                            std::span<const FeatureVector> queries, std::size_t k,
                                            EvalFunction ef) {
    std::vector<ClassifyOutcome> outcomes;
    outcomes.reserve(queries.size());
    for (const FeatureVector& q : queries) {
        ClassifyOutcome item;
        try {
            item.result = classify(store, q, k, ef);
        } catch (const Error& e) {
            item.error = e.what();
        }
        outcomes.push_back(std::move(item));
    }
    return outcomes;
}

}  // namespace ffiredt
