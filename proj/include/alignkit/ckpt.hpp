#pragma once
// Memory model for multi-layer gradient checkpointing. Merging k decoder
// layers per checkpoint costs h*(k*n + ceil(L/k)) activation units; the
// integer optimum sits near sqrt(L/n).

#include <vector>

namespace align {

struct CheckpointConfig {
    int num_layers = 1;               // L
    double activations_per_layer = 1; // n, measured average, may be fractional
    int hidden_size = 1;              // h
};

struct CheckpointPlan {
    int k = 1;
    double memory_units = 0.0;  // in h-sized activation vectors times h
    std::vector<std::pair<int, double>> curve;  // optional (k, memory) sweep
};

// h*(k*n + ceil(L/k)); ceil handles non-divisor k (layers grouped into
// ceil(L/k) blocks).
double checkpoint_memory(int k, const CheckpointConfig& cfg);

// Exhaustive argmin over k in 1..L, ties toward smaller k. The continuous
// optimum sqrt(L/n) is only a sanity anchor; the search is always full.
CheckpointPlan optimal_k(const CheckpointConfig& cfg, bool with_curve = false);

}  // namespace align
