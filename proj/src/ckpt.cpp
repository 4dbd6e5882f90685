#include "alignkit/ckpt.hpp"

#include <stdexcept>

namespace align {

static void check_config(const CheckpointConfig& cfg) {
    if (cfg.num_layers < 1) throw std::invalid_argument("num_layers must be >= 1");
    if (!(cfg.activations_per_layer > 0))
        throw std::invalid_argument("activations_per_layer must be > 0");
    if (cfg.hidden_size < 1) throw std::invalid_argument("hidden_size must be >= 1");
}

double checkpoint_memory(int k, const CheckpointConfig& cfg) {
    check_config(cfg);
    if (k < 1 || k > cfg.num_layers) throw std::invalid_argument("k out of range 1..L");
    const long long segments = (cfg.num_layers + k - 1) / k;  // ceil(L/k)
    return static_cast<double>(cfg.hidden_size) *
           (k * cfg.activations_per_layer + static_cast<double>(segments));
}

CheckpointPlan optimal_k(const CheckpointConfig& cfg, bool with_curve) {
    check_config(cfg);
    CheckpointPlan plan;
    plan.k = 1;
    plan.memory_units = checkpoint_memory(1, cfg);
    if (with_curve) plan.curve.push_back({1, plan.memory_units});
    for (int k = 2; k <= cfg.num_layers; ++k) {
        const double m = checkpoint_memory(k, cfg);
        if (with_curve) plan.curve.push_back({k, m});
        if (m < plan.memory_units) {
            plan.memory_units = m;
            plan.k = k;
        }
    }
    return plan;
}

}  // namespace align
