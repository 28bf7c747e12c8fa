#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ffiredt/error.hpp"
#include "ffiredt/store.hpp"

using namespace ffiredt;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static int counter = 0;
    const fs::path dir =
        fs::temp_directory_path() / ("ffiredt_store_test_" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

StoredInstance make_instance(std::uint64_t id, Label label, std::vector<double> values,
                             Descriptor d = Descriptor::ScalableColor) {
    StoredInstance inst;
    inst.image_id = id;
    inst.label = label;
    inst.vector.descriptor = d;
    inst.vector.image_id = id;
    inst.vector.values = std::move(values);
    return inst;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t dim) {
    std::vector<double> v(dim);
    for (double& c : v) c = static_cast<double>(rng() % 100000) / 100000.0;
    return v;
}

// Independent quadratic oracle: recompute every distance from scratch with
// local formulas and fully sort. Deliberately does not share code with the
// store's scan.
std::vector<std::pair<std::uint64_t, double>> brute_force_knn(
    const std::vector<StoredInstance>& instances, const std::vector<double>& query, std::size_t k,
    EvalFunction ef) {
    const auto dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double cb = 0, eu = 0, ch = 0, ca = 0, ku = 0, jf = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = std::fabs(a[i] - b[i]);
            cb += d;
            eu += (a[i] - b[i]) * (a[i] - b[i]);
            ch = std::max(ch, d);
            if (std::fabs(a[i]) + std::fabs(b[i]) > 0) ca += d / (std::fabs(a[i]) + std::fabs(b[i]));
            const double sa = std::max(a[i], 1e-10), sb = std::max(b[i], 1e-10);
            ku += sa * std::log(sa / sb);
            jf += (sa - sb) * std::log(sa / sb);
        }
        switch (ef) {
            case EvalFunction::CityBlock: return cb;
            case EvalFunction::Euclidean: return std::sqrt(eu);
            case EvalFunction::Chebyshev: return ch;
            case EvalFunction::Canberra: return ca;
            case EvalFunction::KullbackLeibler: return ku;
            case EvalFunction::Jeffrey: return jf;
        }
        return 0.0;
    };
    std::vector<std::pair<std::uint64_t, double>> all;
    for (const StoredInstance& inst : instances) {
        all.emplace_back(inst.image_id, dist(query, inst.vector.values));
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    if (all.size() > k) all.resize(k);
    return all;
}

}  // namespace

TEST_CASE("fresh store and persistence round trip") {
    const fs::path dir = temp_dir();
    const fs::path path = dir / "sc.ffdt";
    std::mt19937_64 rng(3);

    std::vector<StoredInstance> originals;
    {
        FeatureStore store = FeatureStore::open(path, Descriptor::ScalableColor);
        CHECK(store.size() == 0);
        for (std::uint64_t id = 0; id < 10; ++id) {
            StoredInstance inst =
                make_instance(id, id % 2 ? Label::Fire : Label::NotFire, random_values(rng, 64));
            store.insert(inst);
            originals.push_back(store.scan().back());
        }
        CHECK(store.size() == 10);
    }

    FeatureStore reopened = FeatureStore::open(path, Descriptor::ScalableColor);
    REQUIRE(reopened.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        const StoredInstance& a = originals[i];
        const StoredInstance& b = reopened.scan()[i];
        CHECK(a.image_id == b.image_id);
        CHECK(a.label == b.label);
        REQUIRE(a.vector.values.size() == b.vector.values.size());
        for (std::size_t j = 0; j < a.vector.values.size(); ++j) {
            CHECK(a.vector.values[j] == b.vector.values[j]);  // bit-exact
        }
    }
}

TEST_CASE("descriptor mismatch on open") {
    const fs::path dir = temp_dir();
    const fs::path path = dir / "cs.ffdt";
    { FeatureStore::open(path, Descriptor::ColorStructure); }
    CHECK_THROWS_AS(FeatureStore::open(path, Descriptor::ColorLayout), StoreError);
}

TEST_CASE("insert contract") {
    const fs::path dir = temp_dir();
    FeatureStore store = FeatureStore::open(dir / "ct.ffdt", Descriptor::ColorTemperature);
    store.insert(make_instance(1, Label::Fire, {5000.0}, Descriptor::ColorTemperature));
    CHECK(store.size() == 1);
    CHECK_THROWS_AS(store.insert(make_instance(1, Label::Fire, {6000.0},
                                               Descriptor::ColorTemperature)),
                    StoreError);
    CHECK_THROWS_AS(store.insert(make_instance(2, Label::Fire, {1.0, 2.0},
                                               Descriptor::ColorTemperature)),
                    StoreError);
    CHECK_THROWS_AS(store.insert(make_instance(3, Label::Fire, {1.0})), StoreError);

    const FeatureVector query = store.scan().front().vector;
    const KnnResult self = store.knn(query, 1, EvalFunction::CityBlock);
    REQUIRE(self.size() == 1);
    CHECK(self[0].image_id == 1);
    CHECK(self[0].distance == 0.0);
}

TEST_CASE("kNN ordering, ties and prefix property") {
    const fs::path dir = temp_dir();
    FeatureStore store = FeatureStore::open(dir / "ct.ffdt", Descriptor::ColorTemperature);
    store.insert(make_instance(0, Label::Fire, {0.0}, Descriptor::ColorTemperature));
    store.insert(make_instance(1, Label::Fire, {10.0}, Descriptor::ColorTemperature));
    store.insert(make_instance(2, Label::NotFire, {3.0}, Descriptor::ColorTemperature));

    FeatureVector query;
    query.descriptor = Descriptor::ColorTemperature;
    query.values = {2.0};
    const KnnResult top2 = store.knn(query, 2, EvalFunction::CityBlock);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].image_id == 2);
    CHECK(top2[0].distance == doctest::Approx(1.0));
    CHECK(top2[1].image_id == 0);
    CHECK(top2[1].distance == doctest::Approx(2.0));

    const KnnResult all = store.knn(query, 10, EvalFunction::CityBlock);
    CHECK(all.size() == 3);  // k larger than the store returns everything
    for (std::size_t i = 0; i < top2.size(); ++i) {
        CHECK(all[i].image_id == top2[i].image_id);  // prefix property
    }

    // Equal distances break ties by ascending image_id.
    store.insert(make_instance(7, Label::Fire, {4.0}, Descriptor::ColorTemperature));
    store.insert(make_instance(5, Label::Fire, {0.0}, Descriptor::ColorTemperature));
    query.values = {2.0};
    const KnnResult tied = store.knn(query, 4, EvalFunction::CityBlock);
    REQUIRE(tied.size() == 4);
    CHECK(tied[0].image_id == 2);
    CHECK(tied[1].image_id == 0);  // distance 2 tie: id 0 before id 5 and 7
    CHECK(tied[2].image_id == 5);
    CHECK(tied[3].image_id == 7);
}

TEST_CASE("kNN matches the quadratic oracle for every function") {
    std::mt19937_64 rng(17);
    std::vector<StoredInstance> instances;
    for (std::uint64_t id = 0; id < 300; ++id) {
        instances.push_back(
            make_instance(id, id % 2 ? Label::Fire : Label::NotFire, random_values(rng, 16)));
    }
    for (int q = 0; q < 20; ++q) {
        FeatureVector query;
        query.descriptor = Descriptor::ScalableColor;
        query.values = random_values(rng, 16);
        for (EvalFunction ef : kAllEvalFunctions) {
            const KnnResult got = knn_scan(instances, query, 10, ef);
            const auto expected = brute_force_knn(instances, query.values, 10, ef);
            REQUIRE(got.size() == expected.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].image_id == expected[i].first);
                CHECK(got[i].distance ==
                      doctest::Approx(expected[i].second).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("kNN is insertion-order independent") {
    std::mt19937_64 rng(23);
    std::vector<StoredInstance> instances;
    for (std::uint64_t id = 0; id < 50; ++id) {
        instances.push_back(make_instance(id, Label::Fire, random_values(rng, 8)));
    }
    FeatureVector query;
    query.descriptor = Descriptor::ScalableColor;
    query.values = random_values(rng, 8);
    const KnnResult base = knn_scan(instances, query, 7, EvalFunction::Euclidean);

    for (int round = 0; round < 10; ++round) {
        std::shuffle(instances.begin(), instances.end(), rng);
        const KnnResult shuffled = knn_scan(instances, query, 7, EvalFunction::Euclidean);
        REQUIRE(shuffled.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(shuffled[i].image_id == base[i].image_id);
        }
    }
}

TEST_CASE("metric kNN distances are non-decreasing") {
    std::mt19937_64 rng(29);
    std::vector<StoredInstance> instances;
    for (std::uint64_t id = 0; id < 100; ++id) {
        instances.push_back(make_instance(id, Label::Fire, random_values(rng, 12)));
    }
    FeatureVector query;
    query.descriptor = Descriptor::ScalableColor;
    query.values = random_values(rng, 12);
    for (EvalFunction ef : kAllEvalFunctions) {
        if (!is_metric(ef)) continue;
        const KnnResult result = knn_scan(instances, query, 100, ef);
        for (std::size_t i = 1; i < result.size(); ++i) {
            CHECK(result[i - 1].distance <= result[i].distance);
        }
    }
}

TEST_CASE("label filter and empty candidate sets") {
    const fs::path dir = temp_dir();
    FeatureStore store = FeatureStore::open(dir / "ct.ffdt", Descriptor::ColorTemperature);
    store.insert(make_instance(0, Label::Unlabeled, {1.0}, Descriptor::ColorTemperature));
    FeatureVector query;
    query.descriptor = Descriptor::ColorTemperature;
    query.values = {1.0};
    CHECK(store.knn(query, 1, EvalFunction::CityBlock).size() == 1);
    CHECK_THROWS_AS(store.knn(query, 1, EvalFunction::CityBlock, Label::Fire), StoreError);
    CHECK_THROWS_AS(store.knn_labeled(query, 1, EvalFunction::CityBlock), StoreError);

    store.insert(make_instance(1, Label::Fire, {2.0}, Descriptor::ColorTemperature));
    const KnnResult only_fire = store.knn(query, 5, EvalFunction::CityBlock, Label::Fire);
    REQUIRE(only_fire.size() == 1);
    CHECK(only_fire[0].image_id == 1);
}

TEST_CASE("scan yields insertion order and empty store scans empty") {
    const fs::path dir = temp_dir();
    FeatureStore store = FeatureStore::open(dir / "ct.ffdt", Descriptor::ColorTemperature);
    CHECK(store.scan().empty());
    for (std::uint64_t id : {9, 4, 7}) {
        store.insert(make_instance(id, Label::Fire, {double(id)}, Descriptor::ColorTemperature));
    }
    REQUIRE(store.size() == 3);
    CHECK(store.scan()[0].image_id == 9);
    CHECK(store.scan()[1].image_id == 4);
    CHECK(store.scan()[2].image_id == 7);
}

TEST_CASE("truncation is detected with a byte offset") {
    const fs::path dir = temp_dir();
    const fs::path path = dir / "ct.ffdt";
    {
        FeatureStore store = FeatureStore::open(path, Descriptor::ColorTemperature);
        for (std::uint64_t id = 0; id < 4; ++id) {
            store.insert(make_instance(id, Label::Fire, {1.5}, Descriptor::ColorTemperature));
        }
    }
    const auto full_size = fs::file_size(path);
    fs::resize_file(path, full_size - 5);  // cut into the last record

    try {
        FeatureStore::open(path, Descriptor::ColorTemperature);
        FAIL("expected StoreError");
    } catch (const StoreError& e) {
        // Records are 13 bytes here (8 id + 1 label + 4 floats); the fourth
        // record starts at 20 + 3*13 = 59.
        CHECK(e.offset() == 59);
        CHECK(std::string(e.what()).find("59") != std::string::npos);
    }
}

TEST_CASE("trailing bytes are detected") {
    const fs::path dir = temp_dir();
    const fs::path path = dir / "ct.ffdt";
    {
        FeatureStore store = FeatureStore::open(path, Descriptor::ColorTemperature);
        store.insert(make_instance(0, Label::Fire, {1.5}, Descriptor::ColorTemperature));
    }
    {
        std::ofstream f(path, std::ios::binary | std::ios::app);
        f << "junk";
    }
    CHECK_THROWS_AS(FeatureStore::open(path, Descriptor::ColorTemperature), StoreError);
}

TEST_CASE("bad magic is rejected") {
    const fs::path dir = temp_dir();
    const fs::path path = dir / "bogus.ffdt";
    {
        std::ofstream f(path, std::ios::binary);
        f << "NOPEnopeNOPEnopeNOPEnope";
    }
    CHECK_THROWS_AS(FeatureStore::open(path, Descriptor::ColorTemperature), StoreError);
}
