#include "ffiredt/store.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "ffiredt/error.hpp"

namespace ffiredt {

std::optional<Label> label_from_name(std::string_view name) {
    for (Label l : {Label::NotFire, Label::Fire, Label::Unlabeled}) {
        if (label_name(l) == name) return l;
    }
    return std::nullopt;
}

std::vector<ScanHit> knn_scan_hits(std::span<const StoredInstance> instances,
                                   const FeatureVector& query, std::size_t k, EvalFunction ef,
                                   const InstanceFilter& accept) {
    if (k < 1) throw StoreError("k must be at least 1");
    std::vector<ScanHit> hits;
    hits.reserve(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const StoredInstance& inst = instances[i];
        if (accept && !accept(inst)) continue;
        if (inst.vector.values.size() != query.values.size()) {
            throw CompareError("kNN dimension mismatch: query " +
                               std::to_string(query.values.size()) + ", instance " +
                               std::to_string(inst.vector.values.size()));
        }
        hits.push_back({i, evaluate_values(ef, query.values, inst.vector.values)});
    }
    if (hits.empty()) throw StoreError("kNN over an empty candidate set");

    const auto better = [&](const ScanHit& a, const ScanHit& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return instances[a.index].image_id < instances[b.index].image_id;
    };
    if (k < hits.size()) {
        std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(),
                          better);
        hits.resize(k);
    } else {
        std::sort(hits.begin(), hits.end(), better);
    }
    return hits;
}

KnnResult knn_scan(std::span<const StoredInstance> instances, const FeatureVector& query,
                   std::size_t k, EvalFunction ef, const InstanceFilter& accept) {
    const std::vector<ScanHit> hits = knn_scan_hits(instances, query, k, ef, accept);
    KnnResult result;
    result.reserve(hits.size());
    for (const ScanHit& h : hits) result.push_back({instances[h.index].image_id, h.distance});
    return result;
}

namespace {

constexpr char kMagic[4] = {'F', 'F', 'D', 'T'};
constexpr std::uint16_t kFormatVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 2 + 2 + 4 + 8;
constexpr std::size_t kCountOffset = 12;

// Explicit little-endian encoding keeps the file format host-independent.
void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

float get_f32(const unsigned char* p) {
    const std::uint32_t bits = get_u32(p);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

std::size_t record_size(std::size_t dimension) { return 8 + 1 + 4 * dimension; }

}  // namespace

FeatureStore FeatureStore::open(const std::filesystem::path& path, Descriptor descriptor) {
    FeatureStore store;
    store.path_ = path;
    store.descriptor_ = descriptor;
    store.dimension_ = descriptor_dimension(descriptor);

    std::error_code ec;
    const bool exists = std::filesystem::exists(path, ec);
    if (exists) {
        const std::uint64_t file_size = std::filesystem::file_size(path, ec);
        if (ec) throw StoreError("cannot stat store file: " + path.string());
        store.file_.open(path, std::ios::in | std::ios::out | std::ios::binary);
        if (!store.file_) throw StoreError("cannot open store file: " + path.string());
        store.load(file_size);
    } else {
        store.file_.open(path, std::ios::in | std::ios::out | std::ios::binary | std::ios::trunc);
        if (!store.file_) throw StoreError("cannot create store file: " + path.string());
        std::string header;
        header.append(kMagic, 4);
        put_u16(header, kFormatVersion);
        put_u16(header, static_cast<std::uint16_t>(descriptor));
        put_u32(header, static_cast<std::uint32_t>(store.dimension_));
        put_u64(header, 0);
        store.file_.write(header.data(), static_cast<std::streamsize>(header.size()));
        store.file_.flush();
        if (!store.file_) throw StoreError("failed writing store header: " + path.string());
    }
    return store;
}

void FeatureStore::load(std::uint64_t file_size) {
    if (file_size < kHeaderSize) {
        throw StoreError("store file shorter than its header (" + std::to_string(file_size) +
                             " bytes)",
                         file_size);
    }
    unsigned char header[kHeaderSize];
    file_.read(reinterpret_cast<char*>(header), kHeaderSize);
    if (!file_) throw StoreError("failed reading store header", 0);

    if (std::memcmp(header, kMagic, 4) != 0) {
        throw StoreError("bad store magic (not an FFDT file)", 0);
    }
    const std::uint16_t version = get_u16(header + 4);
    if (version != kFormatVersion) {
        throw StoreError("unsupported store format version " + std::to_string(version), 4);
    }
    const std::uint16_t file_descriptor = get_u16(header + 6);
    if (file_descriptor != static_cast<std::uint16_t>(descriptor_)) {
        throw StoreError("store holds descriptor id " + std::to_string(file_descriptor) +
                             ", requested " +
                             std::string(descriptor_name(descriptor_)),
                         6);
    }
    const std::uint32_t dimension = get_u32(header + 8);
    if (dimension != dimension_) {
        throw StoreError("store dimension " + std::to_string(dimension) + " does not match " +
                             std::to_string(dimension_),
                         8);
    }
    const std::uint64_t count = get_u64(header + 12);

    const std::size_t rec = record_size(dimension_);
    const std::uint64_t expected = kHeaderSize + count * rec;
    if (file_size != expected) {
        // Offset of the first byte that stops making sense: the start of the
        // incomplete record on truncation, the end of the declared records
        // when trailing bytes follow.
        const std::uint64_t payload = file_size - kHeaderSize;
        const std::uint64_t whole = payload / rec;
        const std::uint64_t offset =
            file_size < expected ? kHeaderSize + whole * rec : expected;
        throw StoreError("store length mismatch: header declares " + std::to_string(count) +
                             " records (" + std::to_string(expected) + " bytes), file has " +
                             std::to_string(file_size) + " bytes; first bad byte at offset " +
                             std::to_string(offset),
                         offset);
    }

    std::vector<unsigned char> buf(rec);
    records_.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) {
        const std::uint64_t offset = kHeaderSize + r * rec;
        file_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(rec));
        if (!file_) throw StoreError("failed reading record " + std::to_string(r), offset);

        StoredInstance inst;
        inst.image_id = get_u64(buf.data());
        const unsigned char label = buf[8];
        if (label > 2) {
            throw StoreError("record " + std::to_string(r) + " has invalid label byte " +
                                 std::to_string(label),
                             offset + 8);
        }
        inst.label = static_cast<Label>(label);
        inst.vector.descriptor = descriptor_;
        inst.vector.image_id = inst.image_id;
        inst.vector.values.resize(dimension_);
        for (std::size_t i = 0; i < dimension_; ++i) {
            inst.vector.values[i] = static_cast<double>(get_f32(buf.data() + 9 + 4 * i));
        }
        if (!index_by_id_.emplace(inst.image_id, records_.size()).second) {
            throw StoreError("duplicate image_id " + std::to_string(inst.image_id) +
                                 " in store file",
                             offset);
        }
        records_.push_back(std::move(inst));
    }
}

void FeatureStore::insert(const StoredInstance& instance) {
    if (!file_.is_open()) throw StoreError("store is closed");
    if (instance.vector.descriptor != descriptor_) {
        throw StoreError("cannot insert " +
                         std::string(descriptor_name(instance.vector.descriptor)) +
                         " vector into a " + std::string(descriptor_name(descriptor_)) + " store");
    }
    if (instance.vector.values.size() != dimension_) {
        throw StoreError("dimension mismatch: vector has " +
                         std::to_string(instance.vector.values.size()) + ", store needs " +
                         std::to_string(dimension_));
    }
    if (index_by_id_.contains(instance.image_id)) {
        throw StoreError("duplicate image_id " + std::to_string(instance.image_id));
    }
    for (double v : instance.vector.values) {
        if (!std::isfinite(v)) throw StoreError("non-finite feature component");
    }

    std::string record;
    record.reserve(record_size(dimension_));
    put_u64(record, instance.image_id);
    record.push_back(static_cast<char>(instance.label));

    StoredInstance kept = instance;
    kept.vector.image_id = instance.image_id;
    for (std::size_t i = 0; i < dimension_; ++i) {
        const float f = static_cast<float>(instance.vector.values[i]);
        put_f32(record, f);
        kept.vector.values[i] = static_cast<double>(f);
    }

    file_.seekp(0, std::ios::end);
    file_.write(record.data(), static_cast<std::streamsize>(record.size()));

    std::string count_bytes;
    put_u64(count_bytes, records_.size() + 1);
    file_.seekp(kCountOffset, std::ios::beg);
    file_.write(count_bytes.data(), 8);
    file_.flush();
    if (!file_) throw StoreError("failed appending record to " + path_.string());

    index_by_id_.emplace(kept.image_id, records_.size());
    records_.push_back(std::move(kept));
}

void FeatureStore::check_query(const FeatureVector& query) const {
    if (query.descriptor != descriptor_) {
        throw CompareError("query descriptor " + std::string(descriptor_name(query.descriptor)) +
                           " does not match store descriptor " +
                           std::string(descriptor_name(descriptor_)));
    }
    if (query.values.size() != dimension_) {
        throw CompareError("query dimension " + std::to_string(query.values.size()) +
                           " does not match store dimension " + std::to_string(dimension_));
    }
}

KnnResult FeatureStore::knn(const FeatureVector& query, std::size_t k, EvalFunction ef,
                            std::optional<Label> label_filter) const {
    check_query(query);
    InstanceFilter accept;
    if (label_filter) {
        const Label wanted = *label_filter;
        accept = [wanted](const StoredInstance& i) { return i.label == wanted; };
    }
    return knn_scan(records_, query, k, ef, accept);
}

KnnResult FeatureStore::knn_labeled(const FeatureVector& query, std::size_t k,
                                    EvalFunction ef) const {
    check_query(query);
    return knn_scan(records_, query, k, ef,
                    [](const StoredInstance& i) { return i.label != Label::Unlabeled; });
}

std::size_t FeatureStore::labeled_count() const {
    std::size_t n = 0;
    for (const StoredInstance& i : records_) {
        if (i.label != Label::Unlabeled) ++n;
    }
    return n;
}

void FeatureStore::close() {
    if (!file_.is_open()) return;
    std::string count_bytes;
    put_u64(count_bytes, records_.size());
    file_.seekp(kCountOffset, std::ios::beg);
    file_.write(count_bytes.data(), 8);
    file_.flush();
    file_.close();
}

FeatureStore::~FeatureStore() {
    try {
        close();
    } catch (...) {
        // Destructors must not throw; the count was already synced per insert.
    }
}

}  // namespace ffiredt
