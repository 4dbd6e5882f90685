#include "alignkit/packing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace align {

PackPlan plan_packs(const std::vector<SeqLen>& lengths, std::int64_t capacity) {
    if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
    for (const auto& s : lengths) {
        if (s.tokens < 1)
            throw std::invalid_argument("sequence '" + s.id + "' has length < 1");
        if (s.tokens > capacity)
            throw std::invalid_argument("sequence '" + s.id + "' exceeds capacity");
    }

    std::vector<std::size_t> order(lengths.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lengths[a].tokens > lengths[b].tokens;
    });

    PackPlan plan;
    plan.capacity = capacity;
    std::vector<std::int64_t> remaining;  // free space per pack
    for (std::size_t idx : order) {
        const auto& s = lengths[idx];
        std::size_t target = remaining.size();
        for (std::size_t p = 0; p < remaining.size(); ++p) {
            if (remaining[p] >= s.tokens) {
                target = p;
                break;
            }
        }
        if (target == remaining.size()) {
            plan.packs.emplace_back();
            remaining.push_back(capacity);
        }
        plan.packs[target].seqs.push_back(s);
        remaining[target] -= s.tokens;
    }

    for (auto& pack : plan.packs) {
        pack.offsets.assign(1, 0);
        for (const auto& s : pack.seqs) pack.offsets.push_back(pack.offsets.back() + s.tokens);
    }
    return plan;
}

std::vector<bool> isolation_mask(const std::vector<std::int64_t>& offsets,
                                 std::int64_t total) {
    if (offsets.size() < 2 || offsets.front() != 0)
        throw std::invalid_argument("offsets must start at 0 and hold >= 1 segment");
    for (std::size_t i = 1; i < offsets.size(); ++i)
        if (offsets[i] <= offsets[i - 1])
            throw std::invalid_argument("offsets must be strictly increasing");
    if (offsets.back() != total)
        throw std::invalid_argument("total does not match last offset");

    std::vector<bool> mask(static_cast<std::size_t>(total) * total, false);
    for (std::size_t seg = 0; seg + 1 < offsets.size(); ++seg) {
        for (std::int64_t i = offsets[seg]; i < offsets[seg + 1]; ++i)
            for (std::int64_t j = offsets[seg]; j <= i; ++j)
                mask[static_cast<std::size_t>(i) * total + j] = true;
    }
    return mask;
}

Utilization utilization(const PackPlan& plan) {
    if (plan.packs.empty()) throw std::invalid_argument("empty plan");
    std::int64_t total = 0, nseqs = 0, maxlen = 0;
    for (const auto& pack : plan.packs) {
        for (const auto& s : pack.seqs) {
            total += s.tokens;
            maxlen = std::max(maxlen, s.tokens);
            ++nseqs;
        }
    }
    Utilization u;
    u.packed = static_cast<double>(total) /
               (static_cast<double>(plan.packs.size()) * plan.capacity);
    u.padded_baseline =
        static_cast<double>(total) / (static_cast<double>(nseqs) * maxlen);
    return u;
}

}  // namespace align
