#include <map>
#include <random>
#include <set>

#include "alignkit/packing.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace align;

namespace {

std::vector<SeqLen> make_lengths(const std::vector<std::int64_t>& tokens) {
    std::vector<SeqLen> out;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        out.push_back({"s" + std::to_string(i), tokens[i]});
    return out;
}

}  // namespace

TEST_CASE("FFD matches the exhaustive optimum on the worked example") {
    const std::vector<std::int64_t> lens{60, 50, 40, 30, 20};
    auto plan = plan_packs(make_lengths(lens), 100);
    REQUIRE(plan.packs.size() == 2);
    CHECK(oracle::bin_packing_optimum(lens, 100) == 2);
    // {60,40} and {50,30,20}
    CHECK(plan.packs[0].seqs.size() == 2);
    CHECK(plan.packs[0].seqs[0].tokens == 60);
    CHECK(plan.packs[0].seqs[1].tokens == 40);
    CHECK(plan.packs[1].seqs.size() == 3);
    CHECK(plan.packs[1].offsets == std::vector<std::int64_t>{0, 50, 80, 100});
    CHECK(utilization(plan).packed == doctest::Approx(1.0));
}

TEST_CASE("single sequence at capacity fills one pack") {
    auto plan = plan_packs({{"a", 128}}, 128);
    REQUIRE(plan.packs.size() == 1);
    auto u = utilization(plan);
    CHECK(u.packed == doctest::Approx(1.0));
    CHECK(u.padded_baseline == doctest::Approx(1.0));
}

TEST_CASE("over-capacity sequence is rejected, never truncated") {
    CHECK_THROWS_WITH_AS(plan_packs({{"big", 101}}, 100), doctest::Contains("big"),
                         std::invalid_argument);
}

TEST_CASE("padded baseline for {100,1} at capacity 100") {
    auto plan = plan_packs(make_lengths({100, 1}), 100);
    CHECK(utilization(plan).padded_baseline == doctest::Approx(101.0 / 200.0));
}

TEST_CASE("isolation mask examples") {
    SUBCASE("two segments of 2") {
        auto m = isolation_mask({0, 2, 4}, 4);
        const std::vector<bool> expect{
            true,  false, false, false,  //
            true,  true,  false, false,  //
            false, false, true,  false,  //
            false, false, true,  true,
        };
        CHECK(m == expect);
    }
    SUBCASE("single token") { CHECK(isolation_mask({0, 1}, 1) == std::vector<bool>{true}); }
    SUBCASE("single segment equals plain causal") {
        auto m = isolation_mask({0, 3}, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(m[i * 3 + j] == (j <= i));
    }
    SUBCASE("inconsistent total") {
        CHECK_THROWS_AS(isolation_mask({0, 2, 4}, 5), std::invalid_argument);
    }
}

TEST_CASE("randomized conservation, capacity and mask-equivalence properties") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t capacity = 32 + static_cast<std::int64_t>(rng() % 96);
        const std::size_t n = 1 + rng() % 40;
        std::vector<SeqLen> lens;
        std::multiset<std::pair<std::string, std::int64_t>> input_multiset;
        for (std::size_t i = 0; i < n; ++i) {
            SeqLen s{"r" + std::to_string(i),
                     1 + static_cast<std::int64_t>(rng() % capacity)};
            input_multiset.insert({s.id, s.tokens});
            lens.push_back(s);
        }
        auto plan = plan_packs(lens, capacity);

        std::multiset<std::pair<std::string, std::int64_t>> packed_multiset;
        std::int64_t total = 0;
        for (const auto& p : plan.packs) {
            std::int64_t sum = 0;
            for (const auto& s : p.seqs) {
                packed_multiset.insert({s.id, s.tokens});
                sum += s.tokens;
            }
            CHECK(sum <= capacity);
            CHECK(p.offsets.front() == 0);
            CHECK(p.offsets.back() == sum);
            total += sum;
        }
        CHECK(packed_multiset == input_multiset);

        // FFD sanity bound
        const std::int64_t lower = (total + capacity - 1) / capacity;
        CHECK(static_cast<std::int64_t>(plan.packs.size()) <= 2 * lower);

        // mask equals block-diagonal assembly of per-sequence causal masks
        const auto& pack = plan.packs[rng() % plan.packs.size()];
        auto mask = isolation_mask(pack.offsets, pack.offsets.back());
        const std::int64_t tot = pack.offsets.back();
        std::vector<bool> assembled(static_cast<std::size_t>(tot) * tot, false);
        for (std::size_t seg = 0; seg + 1 < pack.offsets.size(); ++seg)
            for (std::int64_t i = pack.offsets[seg]; i < pack.offsets[seg + 1]; ++i)
                for (std::int64_t j = pack.offsets[seg]; j <= i; ++j)
                    assembled[static_cast<std::size_t>(i) * tot + j] = true;
        CHECK(mask == assembled);
    }
}

TEST_CASE("utilization of an empty plan is an error") {
    PackPlan plan;
    plan.capacity = 10;
    CHECK_THROWS_AS(utilization(plan), std::invalid_argument);
}
