#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffiredt/store.hpp"

namespace ffiredt {

/// IB1 decision for one query. `score` is the fraction of 'fire' neighbors
/// among the k retrieved; predicted is the majority label, with a tie at
/// exactly k/2 going to the single nearest neighbor.
struct Classification {
    std::uint64_t image_id = 0;
    Label predicted = Label::NotFire;
    double score = 0.0;
    std::size_t k_used = 0;
};

/// Instance-based (IB1) classification over the labeled subset of a store.
/// Throws ClassifyError when fewer than k labeled instances exist.
Classification classify(const FeatureStore& store, const FeatureVector& query, std::size_t k,
                        EvalFunction ef);

/// Same rule over an in-memory instance sequence; unlabeled entries are
/// ignored. This is the code path cross-validation uses.
Classification classify_scan(std::span<const StoredInstance> instances,
                             const FeatureVector& query, std::size_t k, EvalFunction ef);

struct ClassifyOutcome {
    std::optional<Classification> result;
    std::string error;  // non-empty when this item failed
};

/// Element-wise classify; per-item failures are reported without aborting
/// the batch.
std::vector<ClassifyOutcome> classify_batch(const FeatureStore& store,
                                            std::span<const FeatureVector> queries, std::size_t k,
                                            EvalFunction ef);

}  // namespace ffiredt
