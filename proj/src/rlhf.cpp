#include "alignkit/rlhf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace align {
namespace {

// log(1 + e^x) without overflow.
double softplus(double x) {
    if (x > 0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double log_sum_exp(const std::vector<double>& v, const std::vector<int>& idx) {
    double m = v[idx[0]];
    for (int i : idx) m = std::max(m, v[i]);
    double s = 0.0;
    for (int i : idx) s += std::exp(v[i] - m);
    return m + std::log(s);
}

}  // namespace

RewardLossResult reward_loss(const RewardPair& pair) {
    double alpha = pair.alpha;
    if (!pair.rhat_w || !pair.rhat_l) {
        if (alpha > 0)
            throw std::invalid_argument("alpha > 0 requires both absolute scores");
        alpha = 0.0;
    }
    const double delta = pair.r_w - pair.r_l;
    const double s = sigmoid(delta);
    RewardLossResult res;
    res.loss = softplus(-delta);  // -log sigmoid(delta)
    res.d_rw = s - 1.0;
    res.d_rl = 1.0 - s;
    if (alpha > 0) {
        const double ew = pair.r_w - *pair.rhat_w;
        const double el = pair.r_l - *pair.rhat_l;
        res.loss += alpha * (ew * ew + el * el);
        res.d_rw += 2.0 * alpha * ew;
        res.d_rl += 2.0 * alpha * el;
    }
    return res;
}

double topk_kl(const std::vector<double>& policy_logits,
               const std::vector<double>& ref_logits, int k) {
    const int vocab = static_cast<int>(ref_logits.size());
    if (policy_logits.size() != ref_logits.size())
        throw std::invalid_argument("logit vectors differ in length");
    if (k < 1 || k > vocab) throw std::invalid_argument("K out of range 1..vocab");

    std::vector<int> idx(vocab);
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
        if (ref_logits[a] != ref_logits[b]) return ref_logits[a] > ref_logits[b];
        return a < b;  // deterministic ties at the K-th logit
    });
    idx.resize(k);

    const double lse_p = log_sum_exp(policy_logits, idx);
    const double lse_q = log_sum_exp(ref_logits, idx);
    double kl = 0.0;
    for (int i : idx) {
        const double lp = policy_logits[i] - lse_p;
        const double lq = ref_logits[i] - lse_q;
        kl += std::exp(lp) * (lp - lq);
    }
    return std::max(kl, 0.0);
}

std::vector<double> grpo_advantages(const std::vector<double>& rewards) {
    const std::size_t g = rewards.size();
    if (g < 2) throw std::invalid_argument("group size must be >= 2");
    const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / g;
    double var = 0.0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    const double std_dev = std::sqrt(var / g);  // population std
    std::vector<double> adv(g);
    for (std::size_t i = 0; i < g; ++i) adv[i] = (rewards[i] - mean) / (std_dev + 1e-8);
    return adv;
}

std::vector<double> token_level_reward(double terminal,
                                       const std::vector<double>& per_token_kl,
                                       double beta) {
    if (per_token_kl.empty()) throw std::invalid_argument("empty token list");
    if (beta < 0) throw std::invalid_argument("beta must be >= 0");
    std::vector<double> r(per_token_kl.size());
    for (std::size_t t = 0; t < per_token_kl.size(); ++t) r[t] = -beta * per_token_kl[t];
    r.back() += terminal;
    return r;
}

double rl_objective(double reward, double kl_policy_ref, double beta,
                    double ptx_kl, double gamma, bool as_penalty) {
    if (kl_policy_ref < 0 || ptx_kl < 0)
        throw std::invalid_argument("KL terms must be non-negative");
    const double aux = gamma * ptx_kl;
    return reward - beta * kl_policy_ref + (as_penalty ? -aux : aux);
}

double ppo_clip_term(double ratio, double advantage, double clip_eps) {
    if (!(ratio > 0)) throw std::invalid_argument("ratio must be positive");
    if (!(clip_eps > 0 && clip_eps < 1))
        throw std::invalid_argument("clip_eps must be in (0,1)");
    const double clipped = std::clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps);
    return std::min(ratio * advantage, clipped * advantage);
}

}  // namespace align
