#pragma once
// Evaluation aggregations: pass rate, GSB delta, constraint satisfaction
// (CSR/ISR/PSR), per-constraint-type CSR breakdown, and the two-split
// feedback-benchmark averages.

#include <map>
#include <string>
#include <vector>

#include "alignkit/corpus.hpp"

namespace align {

struct MetricReport {
    std::string name;
    double value = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    std::map<std::string, double> breakdown;
};

// Fraction of samples with passed = true.
MetricReport pass_rate(const std::vector<JudgedSample>& samples);

// (G - B) / (G + S + B); every sample must carry a gsb label.
MetricReport gsb_delta(const std::vector<JudgedSample>& samples);

struct ConstraintMetrics {
    double csr = 0.0;  // mean over samples of satisfied/total
    double isr = 0.0;  // fraction of samples with every constraint satisfied
    double psr = 0.0;  // fraction with all priority-1 constraints satisfied;
                       // equals ISR for samples without priorities
};

ConstraintMetrics constraint_metrics(const std::vector<JudgedSample>& samples);

struct TypedConstraint {
    std::string type;  // e.g. action/content/background/role/format/style
    bool satisfied = false;
};

struct TypedSample {
    std::string id;
    std::vector<TypedConstraint> constraints;
};

// Constraint-level satisfaction rate per type plus the pooled total;
// types with zero constraints are absent from the breakdown.
MetricReport grouped_csr(const std::vector<TypedSample>& samples);

struct FbSplitScores {
    double error_correction = 0.0;
    double response_maintenance = 0.0;
    double average = 0.0;  // unweighted mean of the two split means
};

// Per-split mean score; both splits must be represented.
FbSplitScores fb_split_scores(const std::vector<JudgedSample>& samples);

}  // namespace align
