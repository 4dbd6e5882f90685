#pragma once
// First-fit-decreasing sample packing with cumulative sequence offsets,
// the mask-free representation of attention isolation between packed
// samples.

#include <cstdint>
#include <string>
#include <vector>

namespace align {

struct SeqLen {
    std::string id;
    std::int64_t tokens = 0;
};

struct Pack {
    std::vector<SeqLen> seqs;
    // offsets[0] = 0, strictly increasing, back() = total tokens in pack.
    std::vector<std::int64_t> offsets;
};

struct PackPlan {
    std::int64_t capacity = 0;
    std::vector<Pack> packs;
};

struct Utilization {
    double packed = 0.0;           // total tokens / (packs * capacity)
    double padded_baseline = 0.0;  // total tokens / (seqs * max length)
};

// First-fit-decreasing assignment; deterministic, ties broken by input
// order. A length above capacity is a caller error (never truncated).
PackPlan plan_packs(const std::vector<SeqLen>& lengths, std::int64_t capacity);

// Block-diagonal causal mask implied by one pack's offsets: entry (i,j)
// is true iff j <= i and both fall in the same segment. Desk-scale
// verification artifact, row-major total*total.
std::vector<bool> isolation_mask(const std::vector<std::int64_t>& offsets,
                                 std::int64_t total);

Utilization utilization(const PackPlan& plan);

}  // namespace align
