#include "alignkit/diversity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace align {
namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Lloyd's algorithm over the subset idx with seeded farthest-point
// initialization. Returns a label in 0..k-1 per subset position.
std::vector<int> kmeans_subset(const std::vector<std::vector<double>>& emb,
                               const std::vector<std::size_t>& idx, int k,
                               std::mt19937_64& rng) {
    const std::size_t n = idx.size();
    std::vector<int> labels(n, 0);
    if (n == 0) return labels;
    if (static_cast<std::size_t>(k) >= n) {
        // one cluster per point
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
        return labels;
    }
    const std::size_t dim = emb[idx[0]].size();

    // farthest-point init
    std::vector<std::vector<double>> centers;
    centers.push_back(emb[idx[rng() % n]]);
    std::vector<double> nearest(n, std::numeric_limits<double>::max());
    while (centers.size() < static_cast<std::size_t>(k)) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], sq_dist(emb[idx[i]], centers.back()));
            if (nearest[i] > far_d) {
                far_d = nearest[i];
                far = i;
            }
        }
        centers.push_back(emb[idx[far]]);
    }

    constexpr int kMaxIter = 100;
    constexpr double kTol = 1e-6;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            int bl = 0;
            for (int c = 0; c < k; ++c) {
                const double d = sq_dist(emb[idx[i]], centers[c]);
                if (d < best) {
                    best = d;
                    bl = c;
                }
            }
            labels[i] = bl;
        }
        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) sums[labels[i]][d] += emb[idx[i]][d];
            ++counts[labels[i]];
        }
        double max_shift = 0.0;
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;  // keep the stale centroid
            for (std::size_t d = 0; d < dim; ++d) sums[c][d] /= counts[c];
            max_shift = std::max(max_shift, sq_dist(sums[c], centers[c]));
            centers[c] = std::move(sums[c]);
        }
        if (max_shift <= kTol * kTol) break;
    }
    return labels;
}

std::vector<double> normalized(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    std::vector<double> out(v.size(), 0.0);
    if (n > 0)
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
    return out;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (c >= 0x80) {
            cur.push_back(static_cast<char>(c));  // keep non-ASCII bytes in-token
        } else {
            if (!cur.empty()) toks.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

int lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    // classic DP, one-row space
    std::vector<int> row(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        int diag = 0;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int tmp = row[j];
            if (a[i - 1] == b[j - 1])
                row[j] = diag + 1;
            else
                row[j] = std::max(row[j], row[j - 1]);
            diag = tmp;
        }
    }
    return row[b.size()];
}

double template_similarity(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("template_similarity: empty token list");
    return 2.0 * lcs_length(a, b) / static_cast<double>(a.size() + b.size());
}

ClusterAssignment cluster(const std::vector<std::vector<double>>& embeddings,
                          int k_coarse, int k_fine, std::uint64_t seed) {
    if (k_coarse < 1 || k_fine < 1)
        throw std::invalid_argument("cluster counts must be >= 1");
    if (embeddings.size() < static_cast<std::size_t>(k_coarse))
        k_coarse = std::max<int>(1, static_cast<int>(embeddings.size()));

    const std::size_t n = embeddings.size();
    ClusterAssignment asg;
    asg.coarse.assign(n, 0);
    asg.fine.assign(n, 0);
    if (n == 0) return asg;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    const std::vector<int> coarse = kmeans_subset(embeddings, all, k_coarse, rng);
    for (std::size_t i = 0; i < n; ++i) asg.coarse[i] = coarse[i];

    int next_fine = 0;
    const int n_coarse = *std::max_element(coarse.begin(), coarse.end()) + 1;
    for (int c = 0; c < n_coarse; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (coarse[i] == c) members.push_back(i);
        if (members.empty()) continue;
        const std::vector<int> fine = kmeans_subset(embeddings, members, k_fine, rng);
        int used = *std::max_element(fine.begin(), fine.end()) + 1;
        for (std::size_t m = 0; m < members.size(); ++m)
            asg.fine[members[m]] = next_fine + fine[m];
        next_fine += used;
    }
    return asg;
}

std::vector<TripletExample> mine_triplets(
    const std::vector<std::vector<std::string>>& token_lists,
    const ClusterAssignment& assignment, double sim_hi, double sim_lo, int cap,
    std::uint64_t seed) {
    if (!(0.0 <= sim_lo && sim_lo < sim_hi && sim_hi <= 1.0))
        throw std::invalid_argument("need 0 <= sim_lo < sim_hi <= 1");
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    const std::size_t n = token_lists.size();
    if (assignment.fine.size() != n)
        throw std::invalid_argument("assignment does not cover all records");

    std::mt19937_64 rng(seed);
    std::vector<TripletExample> out;
    for (std::size_t a = 0; a < n; ++a) {
        if (token_lists[a].empty()) continue;
        std::vector<std::size_t> pos, neg;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == a || token_lists[j].empty()) continue;
            if (assignment.fine[j] == assignment.fine[a]) continue;
            const double s = template_similarity(token_lists[a], token_lists[j]);
            if (s >= sim_hi)
                pos.push_back(j);
            else if (s <= sim_lo)
                neg.push_back(j);
        }
        std::shuffle(pos.begin(), pos.end(), rng);
        std::shuffle(neg.begin(), neg.end(), rng);
        const std::size_t take =
            std::min<std::size_t>({pos.size(), neg.size(), static_cast<std::size_t>(cap)});
        for (std::size_t t = 0; t < take; ++t) out.push_back({a, pos[t], neg[t]});
    }
    return out;
}

std::vector<double> Projection::apply(const std::vector<double>& v) const {
    if (v.size() != in_dim) throw std::invalid_argument("projection input dim mismatch");
    std::vector<double> out(out_dim, 0.0);
    for (std::size_t r = 0; r < out_dim; ++r) {
        const double* row = matrix.data() + r * in_dim;
        double s = 0.0;
        for (std::size_t c = 0; c < in_dim; ++c) s += row[c] * v[c];
        out[r] = s;
    }
    return out;
}

Projection identity_projection(std::size_t dim) {
    Projection p;
    p.out_dim = p.in_dim = dim;
    p.matrix.assign(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) p.matrix[i * dim + i] = 1.0;
    return p;
}

double triplet_objective(const std::vector<double>& matrix, std::size_t out_dim,
                         std::size_t in_dim,
                         const std::vector<TripletExample>& triplets,
                         const std::vector<std::vector<double>>& embeddings,
                         double margin, std::vector<double>* grad) {
    if (matrix.size() != out_dim * in_dim)
        throw std::invalid_argument("matrix size mismatch");
    if (grad) grad->assign(matrix.size(), 0.0);
    if (triplets.empty()) return 0.0;

    auto emb_at = [&](std::size_t i) -> const std::vector<double>& {
        if (i >= embeddings.size())
            throw std::invalid_argument("missing embedding for record index " +
                                        std::to_string(i));
        return embeddings[i];
    };

    const double inv_t = 1.0 / static_cast<double>(triplets.size());
    double loss = 0.0;
    std::vector<double> u(in_dim), w(in_dim), pu(out_dim), pw(out_dim);
    for (const auto& t : triplets) {
        const auto& a = emb_at(t.anchor);
        const auto& p = emb_at(t.positive);
        const auto& nn = emb_at(t.negative);
        for (std::size_t i = 0; i < in_dim; ++i) {
            u[i] = a[i] - p[i];
            w[i] = a[i] - nn[i];
        }
        double dp = 0.0, dn = 0.0;
        for (std::size_t r = 0; r < out_dim; ++r) {
            const double* row = matrix.data() + r * in_dim;
            double su = 0.0, sw = 0.0;
            for (std::size_t c = 0; c < in_dim; ++c) {
                su += row[c] * u[c];
                sw += row[c] * w[c];
            }
            pu[r] = su;
            pw[r] = sw;
            dp += su * su;
            dn += sw * sw;
        }
        const double h = dp - dn + margin;
        if (h <= 0.0) continue;
        loss += h * inv_t;
        if (grad) {
            for (std::size_t r = 0; r < out_dim; ++r) {
                double* grow = grad->data() + r * in_dim;
                const double gu = 2.0 * pu[r] * inv_t;
                const double gw = 2.0 * pw[r] * inv_t;
                for (std::size_t c = 0; c < in_dim; ++c)
                    grow[c] += gu * u[c] - gw * w[c];
            }
        }
    }
    return loss;
}

TrainResult train_projection(const std::vector<TripletExample>& triplets,
                             const std::vector<std::vector<double>>& embeddings,
                             std::size_t out_dim, double margin,
                             double step_size, int epochs, std::uint64_t seed) {
    if (!(margin > 0)) throw std::invalid_argument("margin must be > 0");
    if (embeddings.empty()) throw std::invalid_argument("no embeddings");
    const std::size_t in_dim = embeddings[0].size();
    if (out_dim == 0 || out_dim > in_dim)
        throw std::invalid_argument("need 0 < out_dim <= in_dim");
    for (const auto& t : triplets) {
        for (std::size_t i : {t.anchor, t.positive, t.negative})
            if (i >= embeddings.size())
                throw std::invalid_argument("missing embedding for record index " +
                                            std::to_string(i));
    }

    TrainResult res;
    res.projection.out_dim = out_dim;
    res.projection.in_dim = in_dim;
    res.projection.margin = margin;
    auto& P = res.projection.matrix;
    P.assign(out_dim * in_dim, 0.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (std::size_t r = 0; r < out_dim; ++r)
        for (std::size_t c = 0; c < in_dim; ++c)
            P[r * in_dim + c] = (r == c ? 1.0 : 0.0) + noise(rng);

    std::vector<double> grad;
    double loss = triplet_objective(P, out_dim, in_dim, triplets, embeddings, margin, &grad);
    for (int e = 0; e < epochs; ++e) {
        for (std::size_t i = 0; i < P.size(); ++i) P[i] -= step_size * grad[i];
        loss = triplet_objective(P, out_dim, in_dim, triplets, embeddings, margin, &grad);
    }
    res.final_loss = loss;
    return res;
}

double triplet_accuracy(const Projection& proj,
                        const std::vector<TripletExample>& triplets,
                        const std::vector<std::vector<double>>& embeddings) {
    if (triplets.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& t : triplets) {
        const auto a = proj.apply(embeddings[t.anchor]);
        const auto p = proj.apply(embeddings[t.positive]);
        const auto n = proj.apply(embeddings[t.negative]);
        if (sq_dist(a, p) < sq_dist(a, n)) ++correct;
    }
    return static_cast<double>(correct) / triplets.size();
}

std::vector<std::size_t> layered_select(
    const std::vector<std::vector<double>>& embeddings, const Projection& proj,
    const std::vector<double>& thresholds, std::size_t budget) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 0 && thresholds[i] < 1))
            throw std::invalid_argument("thresholds must lie in (0,1)");
        if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
            throw std::invalid_argument("thresholds must be strictly ascending");
    }

    std::vector<std::vector<double>> unit(embeddings.size());
    for (std::size_t i = 0; i < embeddings.size(); ++i)
        unit[i] = normalized(proj.apply(embeddings[i]));

    std::vector<std::size_t> survivors(embeddings.size());
    std::iota(survivors.begin(), survivors.end(), 0);
    for (double t : thresholds) {
        std::vector<std::size_t> kept;
        for (std::size_t i : survivors) {
            bool dup = false;
            for (std::size_t k : kept) {
                double dot = 0.0;
                for (std::size_t d = 0; d < unit[i].size(); ++d) dot += unit[i][d] * unit[k][d];
                if (dot >= t) {
                    dup = true;
                    break;
                }
            }
            if (!dup) kept.push_back(i);
        }
        survivors = std::move(kept);
        if (survivors.size() <= budget) break;
    }
    if (survivors.size() > budget) survivors.resize(budget);
    return survivors;
}

std::vector<std::pair<std::string, std::string>> quality_anchor_pairs(
    const std::map<std::string, std::vector<std::string>>& buckets,
    int anchors_per_bucket, std::uint64_t seed) {
    if (anchors_per_bucket < 1)
        throw std::invalid_argument("anchors_per_bucket must be >= 1");
    if (buckets.empty()) throw std::invalid_argument("no buckets");

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [name, members] : buckets) {
        const std::size_t m = static_cast<std::size_t>(anchors_per_bucket);
        if (members.size() <= m) continue;  // everyone is an anchor, nothing to pair
        std::mt19937_64 rng(seed ^ fnv1a64(name));
        std::vector<std::size_t> order(members.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::unordered_set<std::size_t> anchor_set(order.begin(), order.begin() + m);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (anchor_set.count(i)) continue;
            for (std::size_t a = 0; a < m; ++a)
                pairs.emplace_back(members[i], members[order[a]]);
        }
    }
    return pairs;
}

std::map<std::string, double> aggregate_quality(
    const std::vector<std::pair<std::string, Outcome>>& judgments) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& [id, outcome] : judgments) {
        double v = outcome == Outcome::Win ? 1.0 : outcome == Outcome::Tie ? 0.5 : 0.0;
        auto& [sum, count] = acc[id];
        sum += v;
        ++count;
    }
    std::map<std::string, double> out;
    for (const auto& [id, sc] : acc) out[id] = sc.first / static_cast<double>(sc.second);
    return out;
}

}  // namespace align
