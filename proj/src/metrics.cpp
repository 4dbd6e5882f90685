#include "alignkit/metrics.hpp"

#include <stdexcept>

namespace align {

MetricReport pass_rate(const std::vector<JudgedSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("pass_rate: empty sample list");
    MetricReport r;
    r.name = "pass_rate";
    for (const auto& s : samples)
        if (s.passed) r.numerator += 1.0;
    r.denominator = static_cast<double>(samples.size());
    r.value = r.numerator / r.denominator;
    return r;
}

MetricReport gsb_delta(const std::vector<JudgedSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("gsb_delta: empty sample list");
    double g = 0, s_count = 0, b = 0;
    for (const auto& s : samples) {
        if (!s.gsb) throw std::invalid_argument("sample '" + s.id + "' lacks a gsb label");
        if (*s.gsb == "good")
            g += 1;
        else if (*s.gsb == "same")
            s_count += 1;
        else if (*s.gsb == "bad")
            b += 1;
        else
            throw std::invalid_argument("sample '" + s.id + "' has gsb label '" + *s.gsb +
                                        "' outside {good, same, bad}");
    }
    MetricReport r;
    r.name = "gsb_delta";
    r.numerator = g - b;
    r.denominator = g + s_count + b;
    r.value = r.numerator / r.denominator;
    r.breakdown = {{"good", g}, {"same", s_count}, {"bad", b}};
    return r;
}

ConstraintMetrics constraint_metrics(const std::vector<JudgedSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("constraint_metrics: empty sample list");
    double csr_sum = 0, isr_count = 0, psr_count = 0;
    for (const auto& s : samples) {
        if (s.per_constraint.empty())
            throw std::invalid_argument("sample '" + s.id + "' has no constraint verdicts");
        std::size_t ok = 0;
        for (bool v : s.per_constraint)
            if (v) ++ok;
        csr_sum += static_cast<double>(ok) / s.per_constraint.size();
        const bool all_ok = ok == s.per_constraint.size();
        if (all_ok) isr_count += 1;
        bool primary_ok = true;
        if (s.priority && s.priority->size() != s.per_constraint.size())
            throw std::invalid_argument("sample '" + s.id +
                                        "' priority vector misaligned with constraints");
        if (s.priority) {
            for (std::size_t i = 0; i < s.per_constraint.size(); ++i)
                if ((*s.priority)[i] == 1 && !s.per_constraint[i]) primary_ok = false;
        } else {
            primary_ok = all_ok;  // no priorities: PSR collapses onto ISR
        }
        if (primary_ok) psr_count += 1;
    }
    ConstraintMetrics m;
    m.csr = csr_sum / samples.size();
    m.isr = isr_count / samples.size();
    m.psr = psr_count / samples.size();
    return m;
}

MetricReport grouped_csr(const std::vector<TypedSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("grouped_csr: empty sample list");
    std::map<std::string, std::pair<double, double>> by_type;  // satisfied, total
    double ok = 0, total = 0;
    for (const auto& s : samples) {
        for (const auto& c : s.constraints) {
            auto& [t_ok, t_total] = by_type[c.type];
            t_total += 1;
            total += 1;
            if (c.satisfied) {
                t_ok += 1;
                ok += 1;
            }
        }
    }
    if (total == 0) throw std::invalid_argument("grouped_csr: no constraints");
    MetricReport r;
    r.name = "grouped_csr";
    r.numerator = ok;
    r.denominator = total;
    r.value = ok / total;
    for (const auto& [type, counts] : by_type)
        r.breakdown[type] = counts.first / counts.second;
    return r;
}

FbSplitScores fb_split_scores(const std::vector<JudgedSample>& samples) {
    double ec_sum = 0, rm_sum = 0;
    std::size_t ec_n = 0, rm_n = 0;
    for (const auto& s : samples) {
        if (!s.split || !s.score)
            throw std::invalid_argument("sample '" + s.id + "' lacks split or score");
        if (*s.split == "error_correction") {
            ec_sum += *s.score;
            ++ec_n;
        } else if (*s.split == "response_maintenance") {
            rm_sum += *s.score;
            ++rm_n;
        } else {
            throw std::invalid_argument("sample '" + s.id + "' has unknown split '" +
                                        *s.split + "'");
        }
    }
    if (ec_n == 0 || rm_n == 0)
        throw std::invalid_argument("both splits must be represented");
    FbSplitScores out;
    out.error_correction = ec_sum / ec_n;
    out.response_maintenance = rm_sum / rm_n;
    out.average = 0.5 * (out.error_correction + out.response_maintenance);
    return out;
}

}  // namespace align
