#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>

#include "alignkit/merge.hpp"
#include "doctest.h"

using namespace align;

namespace {

WeightMap scalar_map(std::initializer_list<std::pair<const char*, float>> tensors) {
    WeightMap m;
    for (const auto& [name, v] : tensors) {
        Tensor t;
        t.shape = {1};
        t.data = {v};
        m.tensors.emplace(name, std::move(t));
    }
    return m;
}

WeightMap random_map(std::mt19937_64& rng, int n_tensors = 3, int max_elems = 16) {
    std::normal_distribution<float> nd(0.0f, 1.0f);
    WeightMap m;
    for (int i = 0; i < n_tensors; ++i) {
        Tensor t;
        const int rows = 1 + static_cast<int>(rng() % 4);
        const int cols = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_elems));
        t.shape = {rows, cols};
        t.data.resize(static_cast<std::size_t>(rows) * cols);
        for (auto& x : t.data) x = nd(rng);
        m.tensors.emplace("t" + std::to_string(i), std::move(t));
    }
    return m;
}

WeightMap same_shape_randomized(const WeightMap& like, std::mt19937_64& rng) {
    std::normal_distribution<float> nd(0.0f, 1.0f);
    WeightMap m;
    for (const auto& [name, t] : like.tensors) {
        Tensor u;
        u.shape = t.shape;
        u.data.resize(t.data.size());
        for (auto& x : u.data) x = nd(rng);
        m.tensors.emplace(name, std::move(u));
    }
    return m;
}

}  // namespace

TEST_CASE("linear merge basics") {
    auto a = scalar_map({{"w", 2.0f}});
    auto b = scalar_map({{"w", 4.0f}});
    SUBCASE("identical maps are a fixed point, bit for bit") {
        auto out = linear_merge({a, a}, {0.3, 0.7});
        CHECK(out.tensors.at("w").data == a.tensors.at("w").data);
    }
    SUBCASE("degenerate weight picks one map") {
        auto out = linear_merge({a, b}, {1.0, 0.0});
        CHECK(out.tensors.at("w").data[0] == 2.0f);
    }
    SUBCASE("equal weights average") {
        auto out = linear_merge({a, b}, {1.0, 1.0});
        CHECK(out.tensors.at("w").data[0] == doctest::Approx(3.0f));
    }
    SUBCASE("zero weight sum rejected") {
        CHECK_THROWS_AS(linear_merge({a, b}, {0.0, 0.0}), std::invalid_argument);
    }
    SUBCASE("misaligned maps rejected, naming the tensor") {
        auto c = scalar_map({{"other", 1.0f}});
        CHECK_THROWS_WITH_AS(linear_merge({a, c}, {1.0, 1.0}),
                             doctest::Contains("'"), std::invalid_argument);
    }
    SUBCASE("permutation invariance") {
        auto o1 = linear_merge({a, b}, {0.25, 0.75});
        auto o2 = linear_merge({b, a}, {0.75, 0.25});
        CHECK(o1.tensors.at("w").data == o2.tensors.at("w").data);
    }
}

TEST_CASE("task arithmetic") {
    auto base = scalar_map({{"w", 1.0f}});
    auto m2 = scalar_map({{"w", 2.0f}});
    auto m3 = scalar_map({{"w", 3.0f}});
    CHECK(task_arithmetic(base, {m2}, 1.0).tensors.at("w").data[0] == 2.0f);
    CHECK(task_arithmetic(base, {m2, m3}, 0.0).tensors.at("w").data[0] == 1.0f);
    CHECK(task_arithmetic(base, {m2, m3}, 0.5).tensors.at("w").data[0] ==
          doctest::Approx(2.5f));
}

TEST_CASE("task arithmetic is affine in lambda") {
    std::mt19937_64 rng(55);
    auto base = random_map(rng);
    auto f1 = same_shape_randomized(base, rng);
    auto f2 = same_shape_randomized(base, rng);
    const double l1 = 0.3, l2 = 0.45;
    auto r1 = task_arithmetic(base, {f1, f2}, l1);
    auto r2 = task_arithmetic(base, {f1, f2}, l2);
    auto r12 = task_arithmetic(base, {f1, f2}, l1 + l2);
    for (const auto& [name, t] : r12.tensors) {
        for (std::size_t i = 0; i < t.data.size(); ++i) {
            const double lhs = static_cast<double>(r1.tensors.at(name).data[i]) +
                               r2.tensors.at(name).data[i] -
                               base.tensors.at(name).data[i];
            CHECK(lhs == doctest::Approx(t.data[i]).epsilon(1e-5));
        }
    }
}

TEST_CASE("model stock endpoints") {
    auto base = scalar_map({{"w", 1.0f}});
    SUBCASE("identical fine-tunes return the fine-tune (cos = 1, t = 1)") {
        auto ft = scalar_map({{"w", 3.0f}});
        auto out = model_stock(base, {ft, ft});
        CHECK(out.tensors.at("w").data[0] == doctest::Approx(3.0f).epsilon(1e-9));
    }
    SUBCASE("orthogonal task vectors return the base (cos = 0, t = 0)") {
        WeightMap b, f1, f2;
        Tensor t;
        t.shape = {2};
        t.data = {0.0f, 0.0f};
        b.tensors.emplace("w", t);
        t.data = {1.0f, 0.0f};
        f1.tensors.emplace("w", t);
        t.data = {0.0f, 1.0f};
        f2.tensors.emplace("w", t);
        auto out = model_stock(b, {f1, f2});
        CHECK(out.tensors.at("w").data[0] == doctest::Approx(0.0f));
        CHECK(out.tensors.at("w").data[1] == doctest::Approx(0.0f));
    }
    SUBCASE("fine-tunes equal to base return the base") {
        auto out = model_stock(base, {base, base});
        CHECK(out.tensors.at("w").data[0] == 1.0f);
    }
    SUBCASE("fewer than two fine-tunes rejected") {
        CHECK_THROWS_AS(model_stock(base, {base}), std::invalid_argument);
    }
}

TEST_CASE("model stock output lies between base and fine-tune average") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto base = random_map(rng);
        auto f1 = same_shape_randomized(base, rng);
        auto f2 = same_shape_randomized(base, rng);
        auto f3 = same_shape_randomized(base, rng);
        auto out = model_stock(base, {f1, f2, f3});
        for (const auto& [name, t] : out.tensors) {
            for (std::size_t i = 0; i < t.data.size(); ++i) {
                const double b = base.tensors.at(name).data[i];
                const double avg = (static_cast<double>(f1.tensors.at(name).data[i]) +
                                    f2.tensors.at(name).data[i] +
                                    f3.tensors.at(name).data[i]) / 3.0;
                const double lo = std::min(b, avg) - 1e-6;
                const double hi = std::max(b, avg) + 1e-6;
                CHECK(t.data[i] >= lo);
                CHECK(t.data[i] <= hi);
            }
        }
    }
}

TEST_CASE("diff report") {
    auto a = scalar_map({{"w", 1.0f}});
    auto b = scalar_map({{"w", 2.0f}});
    auto d = diff_report(a, b);
    CHECK(d.at("w").max_abs == doctest::Approx(1.0));
    CHECK(d.at("w").mean_abs == doctest::Approx(1.0));
    auto z = diff_report(a, a);
    CHECK(z.at("w").max_abs == 0.0);

    std::mt19937_64 rng(12);
    auto x = random_map(rng);
    auto y = same_shape_randomized(x, rng);
    auto rep = diff_report(x, y);
    for (const auto& [name, t] : x.tensors) {
        double mx = 0, sum = 0;
        const auto& u = y.tensors.at(name);
        for (std::size_t i = 0; i < t.data.size(); ++i) {
            const double ad = std::abs(static_cast<double>(t.data[i]) - u.data[i]);
            mx = std::max(mx, ad);
            sum += ad;
        }
        CHECK(rep.at(name).max_abs == doctest::Approx(mx));
        CHECK(rep.at(name).mean_abs == doctest::Approx(sum / t.data.size()));
    }
}

TEST_CASE("container round trip is bit exact") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "alignkit_merge_test";
    fs::create_directories(dir);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_map(rng, 1 + static_cast<int>(rng() % 4));
        m.metadata["trial"] = std::to_string(trial);
        const std::string path = (dir / ("map" + std::to_string(trial) + ".wm")).string();
        save_weight_map(m, path);
        auto loaded = load_weight_map(path);
        REQUIRE(loaded.tensors.size() == m.tensors.size());
        for (const auto& [name, t] : m.tensors) {
            const auto& lt = loaded.tensors.at(name);
            CHECK(lt.shape == t.shape);
            CHECK(std::memcmp(lt.data.data(), t.data.data(),
                              t.data.size() * sizeof(float)) == 0);
        }
        CHECK(loaded.metadata == m.metadata);
    }
    fs::remove_all(dir);
}
