#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ffiredt/evalfuncs.hpp"
#include "ffiredt/feature.hpp"

namespace ffiredt {

enum class Label : std::uint8_t {
    NotFire = 0,
    Fire = 1,
    Unlabeled = 2,
};

constexpr std::string_view label_name(Label l) {
    switch (l) {
        case Label::NotFire: return "not_fire";
        case Label::Fire: return "fire";
        case Label::Unlabeled: return "unlabeled";
    }
    return "?";
}

std::optional<Label> label_from_name(std::string_view name);

struct StoredInstance {
    std::uint64_t image_id = 0;
    Label label = Label::Unlabeled;
    FeatureVector vector;
};

struct Neighbor {
    std::uint64_t image_id = 0;
    double distance = 0.0;
};

/// Ascending by distance, ties broken by ascending image_id.
using KnnResult = std::vector<Neighbor>;

using InstanceFilter = std::function<bool(const StoredInstance&)>;

/// Exact linear-scan kNN over an instance sequence. Returns at most k hits;
/// fewer when the accepted candidate set is smaller. Throws StoreError when
/// no candidate is accepted and CompareError on dimension mismatch.
KnnResult knn_scan(std::span<const StoredInstance> instances, const FeatureVector& query,
                   std::size_t k, EvalFunction ef, const InstanceFilter& accept = {});

/// Index-based variant for callers that need the matched instances, not just
/// their ids. Same ordering contract as knn_scan.
struct ScanHit {
    std::size_t index = 0;
    double distance = 0.0;
};
std::vector<ScanHit> knn_scan_hits(std::span<const StoredInstance> instances,
                                   const FeatureVector& query, std::size_t k, EvalFunction ef,
                                   const InstanceFilter& accept = {});

/// Persistent labeled feature-vector collection answering exact kNN queries.
///
/// File layout, little-endian: magic "FFDT", u16 version (1), u16 descriptor
/// id, u32 dimension, u64 record count; then per record u64 image_id,
/// u8 label, dimension x f32. The header count is kept in sync on every
/// insert and rewritten on clean close; open() validates the file length
/// against it.
///
/// Concurrency: single writer, multiple readers. Queries may run in parallel
/// with each other but not with an in-flight insert.
class FeatureStore {
public:
    /// Opens an existing store (validating the header against `descriptor`)
    /// or creates an empty one.
    static FeatureStore open(const std::filesystem::path& path, Descriptor descriptor);

    FeatureStore(FeatureStore&&) = default;
    FeatureStore& operator=(FeatureStore&&) = default;
    FeatureStore(const FeatureStore&) = delete;
    FeatureStore& operator=(const FeatureStore&) = delete;
    ~FeatureStore();

    /// Appends one record durably. Vector components are narrowed to f32, the
    /// store's unit of persistence; the in-memory copy matches the file
    /// bit for bit. Throws StoreError on duplicate image_id or dimension
    /// mismatch.
    void insert(const StoredInstance& instance);

    /// Every record in insertion order.
    std::span<const StoredInstance> scan() const { return records_; }

    KnnResult knn(const FeatureVector& query, std::size_t k, EvalFunction ef,
                  std::optional<Label> label_filter = std::nullopt) const;

    /// kNN restricted to fire/not_fire records.
    KnnResult knn_labeled(const FeatureVector& query, std::size_t k, EvalFunction ef) const;

    std::size_t size() const { return records_.size(); }
    std::size_t labeled_count() const;
    Descriptor descriptor() const { return descriptor_; }
    std::size_t dimension() const { return dimension_; }
    const std::filesystem::path& path() const { return path_; }

    void close();

private:
    FeatureStore() = default;

    void load(std::uint64_t file_size);
    void check_query(const FeatureVector& query) const;

    std::filesystem::path path_;
    Descriptor descriptor_ = Descriptor::ColorLayout;
    std::size_t dimension_ = 0;
    std::vector<StoredInstance> records_;
    std::unordered_map<std::uint64_t, std::size_t> index_by_id_;
    mutable std::fstream file_;
};

}  // namespace ffiredt
