#pragma once
// Task-aware prompt diversity: multi-granularity k-means, LCS-based hard
// positive/negative mining across fine clusters, triplet-loss projection
// training, layered-threshold selection, and anchor-based quality
// aggregation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace align {

// Lowercased, split on whitespace and punctuation (any non-alphanumeric
// byte is a delimiter). Template structure lives at the word level.
std::vector<std::string> tokenize(const std::string& text);

int lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// LCS-F1: 2*LCS / (|a|+|b|). Errors on empty input.
double template_similarity(const std::vector<std::string>& a,
                           const std::vector<std::string>& b);

struct ClusterAssignment {
    std::vector<int> coarse;  // per record
    std::vector<int> fine;    // per record; ids unique across coarse clusters
};

// Two-level k-means: coarse over all points, then fine independently
// within each coarse cluster. Seeded farthest-point initialization,
// iteration cap 100, centroid-shift tolerance 1e-6. A partition with
// fewer points than clusters gets one cluster per point.
ClusterAssignment cluster(const std::vector<std::vector<double>>& embeddings,
                          int k_coarse, int k_fine, std::uint64_t seed);

struct TripletExample {
    std::size_t anchor = 0;
    std::size_t positive = 0;  // different fine cluster, similarity >= sim_hi
    std::size_t negative = 0;  // different fine cluster, similarity <= sim_lo
};

std::vector<TripletExample> mine_triplets(
    const std::vector<std::vector<std::string>>& token_lists,
    const ClusterAssignment& assignment, double sim_hi, double sim_lo, int cap,
    std::uint64_t seed);

struct Projection {
    std::size_t out_dim = 0;
    std::size_t in_dim = 0;
    std::vector<double> matrix;  // row-major out_dim x in_dim
    double margin = 1.0;

    std::vector<double> apply(const std::vector<double>& v) const;
};

// Identity projection (square), for raw-embedding baselines.
Projection identity_projection(std::size_t dim);

// Mean hinge loss max(0, d2(Pa,Pp) - d2(Pa,Pn) + margin) over triplets,
// squared Euclidean distances. When grad is non-null it receives
// d loss / d P, same layout as the matrix.
double triplet_objective(const std::vector<double>& matrix, std::size_t out_dim,
                         std::size_t in_dim,
                         const std::vector<TripletExample>& triplets,
                         const std::vector<std::vector<double>>& embeddings,
                         double margin, std::vector<double>* grad = nullptr);

struct TrainResult {
    Projection projection;
    double final_loss = 0.0;
};

// Full-batch gradient descent from a seeded near-identity start.
TrainResult train_projection(const std::vector<TripletExample>& triplets,
                             const std::vector<std::vector<double>>& embeddings,
                             std::size_t out_dim, double margin,
                             double step_size, int epochs, std::uint64_t seed);

// Fraction of triplets with d2(Pa,Pp) < d2(Pa,Pn).
double triplet_accuracy(const Projection& proj,
                        const std::vector<TripletExample>& triplets,
                        const std::vector<std::vector<double>>& embeddings);

// Greedy layered near-duplicate removal in projected space. Thresholds
// are strictly ascending in (0,1); each layer keeps a record iff its
// cosine similarity to every previously kept record is below the layer
// threshold, refining the previous layer's survivors. Stops once the
// survivor count is within budget; result truncated to budget, corpus
// order preserved.
std::vector<std::size_t> layered_select(
    const std::vector<std::vector<double>>& embeddings, const Projection& proj,
    const std::vector<double>& thresholds, std::size_t budget);

// Per bucket: a seeded sample of anchors; every non-anchor paired with
// every anchor of its bucket. Buckets not larger than anchors_per_bucket
// contribute no pairs.
std::vector<std::pair<std::string, std::string>> quality_anchor_pairs(
    const std::map<std::string, std::vector<std::string>>& buckets,
    int anchors_per_bucket, std::uint64_t seed);

enum class Outcome { Win, Tie, Loss };

// Mean of {win=1, tie=0.5, loss=0} per candidate over its anchor
// comparisons.
std::map<std::string, double> aggregate_quality(
    const std::vector<std::pair<std::string, Outcome>>& judgments);

}  // namespace align
