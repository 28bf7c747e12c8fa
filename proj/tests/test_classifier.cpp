#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "ffiredt/classifier.hpp"
#include "ffiredt/error.hpp"

using namespace ffiredt;
namespace fs = std::filesystem;

namespace {

StoredInstance inst(std::uint64_t id, Label label, std::vector<double> values) {
    StoredInstance i;
    i.image_id = id;
    i.label = label;
    i.vector.descriptor = Descriptor::ColorTemperature;
    i.vector.image_id = id;
    i.vector.values = std::move(values);
    return i;
}

FeatureVector query(double v) {
    FeatureVector q;
    q.descriptor = Descriptor::ColorTemperature;
    q.values = {v};
    return q;
}

}  // namespace

TEST_CASE("IB1 base case: nearest labeled neighbor wins with k=1") {
    const std::vector<StoredInstance> data = {
        inst(0, Label::Fire, {1.0}),
        inst(1, Label::NotFire, {10.0}),
        inst(2, Label::Unlabeled, {1.9}),  // nearer, but takes no part
    };
    const Classification c = classify_scan(data, query(2.0), 1, EvalFunction::CityBlock);
    CHECK(c.predicted == Label::Fire);
    CHECK(c.score == 1.0);
    CHECK(c.k_used == 1);
}

TEST_CASE("majority vote and score") {
    const std::vector<StoredInstance> data = {
        inst(0, Label::Fire, {1.0}),
        inst(1, Label::Fire, {2.0}),
        inst(2, Label::NotFire, {3.0}),
        inst(3, Label::NotFire, {50.0}),
    };
    const Classification c = classify_scan(data, query(0.0), 3, EvalFunction::CityBlock);
    CHECK(c.predicted == Label::Fire);
    CHECK(c.score == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("even-k tie goes to the single nearest neighbor") {
    const std::vector<StoredInstance> data = {
        inst(0, Label::Fire, {0.1}),
        inst(1, Label::NotFire, {0.5}),
    };
    const Classification c = classify_scan(data, query(0.0), 2, EvalFunction::CityBlock);
    CHECK(c.score == 0.5);
    CHECK(c.predicted == Label::Fire);

    const std::vector<StoredInstance> flipped = {
        inst(0, Label::NotFire, {0.1}),
        inst(1, Label::Fire, {0.5}),
    };
    const Classification d = classify_scan(flipped, query(0.0), 2, EvalFunction::CityBlock);
    CHECK(d.score == 0.5);
    CHECK(d.predicted == Label::NotFire);
}

TEST_CASE("insufficient labeled instances") {
    const std::vector<StoredInstance> data = {
        inst(0, Label::Fire, {1.0}),
        inst(1, Label::Unlabeled, {2.0}),
    };
    CHECK_THROWS_AS(classify_scan(data, query(0.0), 2, EvalFunction::CityBlock), ClassifyError);
}

TEST_CASE("score times k is an integer in [0, k]") {
    std::mt19937_64 rng(77);
    std::vector<StoredInstance> data;
    for (std::uint64_t id = 0; id < 40; ++id) {
        data.push_back(inst(id, id % 3 ? Label::Fire : Label::NotFire,
                            {static_cast<double>(rng() % 1000)}));
    }
    for (std::size_t k : {1, 2, 5, 15}) {
        for (int i = 0; i < 50; ++i) {
            const Classification c =
                classify_scan(data, query(static_cast<double>(rng() % 1000)), k, EvalFunction::Euclidean);
            const double scaled = c.score * static_cast<double>(k);
            CHECK(scaled == doctest::Approx(std::round(scaled)));
            CHECK(c.score >= 0.0);
            CHECK(c.score <= 1.0);
        }
    }
}

TEST_CASE("prediction is invariant under store permutation and positive scaling") {
    std::mt19937_64 rng(99);
    std::vector<StoredInstance> data;
    for (std::uint64_t id = 0; id < 30; ++id) {
        data.push_back(inst(id, id % 2 ? Label::Fire : Label::NotFire,
                            {static_cast<double>(rng() % 1000) / 7.0}));
    }
    const FeatureVector q = query(31.0);
    const Classification base = classify_scan(data, q, 5, EvalFunction::Euclidean);

    for (int round = 0; round < 5; ++round) {
        std::shuffle(data.begin(), data.end(), rng);
        const Classification shuffled = classify_scan(data, q, 5, EvalFunction::Euclidean);
        CHECK(shuffled.predicted == base.predicted);
        CHECK(shuffled.score == base.score);
    }

    for (EvalFunction ef :
         {EvalFunction::CityBlock, EvalFunction::Euclidean, EvalFunction::Chebyshev}) {
        const Classification before = classify_scan(data, q, 5, ef);
        std::vector<StoredInstance> scaled = data;
        for (StoredInstance& s : scaled) {
            for (double& v : s.vector.values) v *= 3.5;
        }
        FeatureVector sq = q;
        for (double& v : sq.values) v *= 3.5;
        const Classification after = classify_scan(scaled, sq, 5, ef);
        CHECK(after.predicted == before.predicted);
        CHECK(after.score == before.score);
    }
}

TEST_CASE("batch equals the per-item loop and reports per-item failures") {
    const fs::path dir = fs::temp_directory_path() / "ffiredt_classifier_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    FeatureStore store = FeatureStore::open(dir / "ct.ffdt", Descriptor::ColorTemperature);
    std::mt19937_64 rng(111);
    for (std::uint64_t id = 0; id < 25; ++id) {
        store.insert(inst(id, id % 2 ? Label::Fire : Label::NotFire,
                          {static_cast<double>(rng() % 500)}));
    }

    std::vector<FeatureVector> queries;
    for (int i = 0; i < 200; ++i) queries.push_back(query(static_cast<double>(rng() % 500)));

    const std::vector<ClassifyOutcome> batch =
        classify_batch(store, queries, 3, EvalFunction::CityBlock);
    REQUIRE(batch.size() == queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const Classification loop = classify(store, queries[i], 3, EvalFunction::CityBlock);
        REQUIRE(batch[i].result.has_value());
        CHECK(batch[i].result->predicted == loop.predicted);
        CHECK(batch[i].result->score == loop.score);
    }

    // Concatenation of two half-batches equals the full batch.
    const std::size_t half = queries.size() / 2;
    const auto first = classify_batch(store, std::span(queries).subspan(0, half), 3,
                                      EvalFunction::CityBlock);
    const auto second =
        classify_batch(store, std::span(queries).subspan(half), 3, EvalFunction::CityBlock);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const ClassifyOutcome& got = i < half ? first[i] : second[i - half];
        CHECK(got.result->predicted == batch[i].result->predicted);
    }

    // A bad query is reported in place without aborting the rest.
    std::vector<FeatureVector> mixed = {queries[0], FeatureVector{}, queries[1]};
    const auto outcomes = classify_batch(store, mixed, 3, EvalFunction::CityBlock);
    CHECK(outcomes[0].result.has_value());
    CHECK(!outcomes[1].result.has_value());
    CHECK(!outcomes[1].error.empty());
    CHECK(outcomes[2].result.has_value());
}
