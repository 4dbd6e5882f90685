#include <cmath>
#include <stdexcept>

#include "alignkit/ckpt.hpp"
#include "doctest.h"

using namespace align;

TEST_CASE("memory formula worked cases") {
    CheckpointConfig cfg{80, 5.0, 1};
    CHECK(checkpoint_memory(1, cfg) == doctest::Approx(85.0));
    CHECK(checkpoint_memory(4, cfg) == doctest::Approx(40.0));
    CHECK(checkpoint_memory(1, {1, 1.0, 1}) == doctest::Approx(2.0));
}

TEST_CASE("k out of range") {
    CheckpointConfig cfg{8, 1.0, 1};
    CHECK_THROWS_AS(checkpoint_memory(0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(checkpoint_memory(9, cfg), std::invalid_argument);
}

TEST_CASE("optimal_k worked cases") {
    auto p = optimal_k({80, 5.0, 1});
    CHECK(p.k == 4);
    CHECK(p.memory_units == doctest::Approx(40.0));

    CHECK(optimal_k({1, 1.0, 1}).k == 1);

    auto q = optimal_k({64, 1.0, 1});
    CHECK(q.k == 8);  // sqrt(64)
    CHECK(q.memory_units == doctest::Approx(16.0));
}

TEST_CASE("hidden size scales memory linearly") {
    auto a = optimal_k({80, 5.0, 1});
    auto b = optimal_k({80, 5.0, 4096});
    CHECK(b.k == a.k);
    CHECK(b.memory_units == doctest::Approx(4096.0 * a.memory_units));
}

TEST_CASE("exhaustive agreement over the full (L, n) grid") {
    for (int L = 1; L <= 128; ++L) {
        for (double n : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
            CheckpointConfig cfg{L, n, 1};
            auto plan = optimal_k(cfg);
            int best_k = 1;
            double best_m = checkpoint_memory(1, cfg);
            for (int k = 2; k <= L; ++k) {
                const double m = checkpoint_memory(k, cfg);
                if (m < best_m) {
                    best_m = m;
                    best_k = k;
                }
            }
            CHECK(plan.k == best_k);
            CHECK(plan.memory_units == doctest::Approx(best_m));
            // integer optimum stays within 1..L around the continuous seed
            if (n <= L) {
                const double cont = std::sqrt(L / n);
                CHECK(plan.memory_units <=
                      checkpoint_memory(std::clamp<int>(static_cast<int>(cont), 1, L), cfg));
            }
        }
    }
}

TEST_CASE("component monotonicity") {
    CheckpointConfig cfg{100, 3.0, 1};
    for (int k = 2; k <= 100; ++k) {
        CHECK(k * cfg.activations_per_layer >
              (k - 1) * cfg.activations_per_layer);
        CHECK((cfg.num_layers + k - 1) / k <= (cfg.num_layers + k - 2) / (k - 1));
    }
}

TEST_CASE("curve covers the whole range when requested") {
    auto p = optimal_k({16, 2.0, 1}, true);
    CHECK(p.curve.size() == 16);
    CHECK(p.curve.front().first == 1);
    CHECK(p.curve.back().first == 16);
}
