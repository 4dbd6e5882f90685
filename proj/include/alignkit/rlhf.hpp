#pragma once
// Numeric kernels for reward-model training and critic-free RL:
// pairwise loss with pointwise MSE anchor, top-K restricted KL,
// group-normalized advantages, token-level reward shaping and the
// combined RL objective.

#include <cstddef>
#include <optional>
#include <vector>

namespace align {

// Conventional defaults.
inline constexpr int kDefaultGroupSize = 3;     // samples per prompt
inline constexpr int kDefaultTopK = 500;        // KL support size
inline constexpr double kDefaultClipEps = 0.2;  // PPO convention
inline constexpr double kDefaultLearningRate = 1e-5;

struct RewardPair {
    double r_w = 0.0;  // reward of chosen
    double r_l = 0.0;  // reward of rejected
    std::optional<double> rhat_w;  // normalized absolute score, [-1,1]
    std::optional<double> rhat_l;
    double alpha = 0.0;  // forced to 0 when rhat values are absent
};

struct RewardLossResult {
    double loss = 0.0;
    double d_rw = 0.0;
    double d_rl = 0.0;
};

// loss = -log sigmoid(r_w - r_l) + alpha*((r_w - rhat_w)^2 + (r_l - rhat_l)^2)
// with analytic gradients. Stable for |r_w - r_l| up to 1e4.
RewardLossResult reward_loss(const RewardPair& pair);

// KL(policy || ref) restricted to the K largest reference logits (ties at
// the K-th logit broken by lower index), both distributions renormalized
// over that support. Non-negative; equals the full KL when K = vocab.
double topk_kl(const std::vector<double>& policy_logits,
               const std::vector<double>& ref_logits, int k);

// a_i = (r_i - mean) / (std + 1e-8), population std.
std::vector<double> grpo_advantages(const std::vector<double>& rewards);

// r_t = -beta*kl_t for t < T, r_T = terminal - beta*kl_T.
std::vector<double> token_level_reward(double terminal,
                                       const std::vector<double>& per_token_kl,
                                       double beta);

// Objective as printed: reward - beta*kl + gamma*ptx_kl. With
// as_penalty the auxiliary term is subtracted instead; both readings are
// exposed because the printed sign would reward divergence on SFT data.
double rl_objective(double reward, double kl_policy_ref, double beta,
                    double ptx_kl, double gamma, bool as_penalty = false);

// min(ratio*A, clip(ratio, 1-eps, 1+eps)*A).
double ppo_clip_term(double ratio, double advantage,
                     double clip_eps = kDefaultClipEps);

}  // namespace align
