#include "alignkit/prefdata.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alignkit/diversity.hpp"  // tokenize, lcs_length

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

}  // namespace

double rouge_l(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rouge_l: empty token list");
    const int lcs = lcs_length(a, b);
    if (lcs == 0) return 0.0;
    const double p = static_cast<double>(lcs) / b.size();
    const double r = static_cast<double>(lcs) / a.size();
    return 2.0 * p * r / (p + r);
}

ResponseGroup filter_similar_responses(const ResponseGroup& group, double threshold) {
    if (!(threshold > 0 && threshold <= 1))
        throw std::invalid_argument("threshold must lie in (0,1]");
    ResponseGroup out = group;
    out.responses.clear();
    if (out.scores) out.scores->clear();
    std::vector<std::vector<std::string>> kept_tokens;
    for (std::size_t i = 0; i < group.responses.size(); ++i) {
        auto toks = tokenize(group.responses[i].text);
        bool dup = false;
        for (const auto& kt : kept_tokens) {
            if (toks.empty() || kt.empty()) {
                dup = toks.empty() && kt.empty();  // two empty texts are duplicates
            } else {
                dup = rouge_l(toks, kt) >= threshold;
            }
            if (dup) break;
        }
        if (dup) continue;
        kept_tokens.push_back(std::move(toks));
        out.responses.push_back(group.responses[i]);
        if (group.scores) out.scores->push_back((*group.scores)[i]);
    }
    return out;
}

double StubJudge::absolute(const std::string& prompt, const std::string& response) {
    const std::uint64_t h = fnv1a64(prompt + "\x1f" + response);
    return static_cast<double>(h % 10000) / 9999.0;
}

bool StubJudge::pair_same(const std::string&, const std::string& a, const std::string& b) {
    return a == b;
}

double StubJudge::golden(const std::string& prompt, const std::string& response,
                         const std::string& golden_answer) {
    const std::uint64_t h = fnv1a64(prompt + "\x1f" + response + "\x1f" + golden_answer);
    return static_cast<double>(h % 10000) / 9999.0;
}

AutoRatorResult autorate(AutoRatorMode mode, const ResponseGroup& group, Judge& judge,
                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    AutoRatorResult res;
    try {
        switch (mode) {
            case AutoRatorMode::Absolute:
                for (const auto& r : group.responses)
                    res.scores.push_back(judge.absolute(group.prompt_text, r.text));
                break;
            case AutoRatorMode::Pair:
                for (const auto& [i, j] : pairs) {
                    if (i >= group.responses.size() || j >= group.responses.size())
                        throw std::invalid_argument("pair index out of range");
                    res.verdicts.push_back(judge.pair_same(
                        group.prompt_text, group.responses[i].text, group.responses[j].text));
                }
                break;
            case AutoRatorMode::Golden:
                if (!group.golden)
                    throw std::invalid_argument("golden mode requires a golden answer");
                for (const auto& r : group.responses)
                    res.scores.push_back(judge.golden(group.prompt_text, r.text, *group.golden));
                break;
        }
    } catch (const std::exception& e) {
        throw std::runtime_error("autorate failed for prompt '" + group.prompt_id +
                                 "': " + e.what());
    }
    return res;
}

PrunedGroups prune_groups(const std::vector<ResponseGroup>& groups, double hi, double eps) {
    if (!(hi > 0 && hi <= 1)) throw std::invalid_argument("hi must lie in (0,1]");
    if (eps < 0) throw std::invalid_argument("eps must be >= 0");
    PrunedGroups out;
    for (const auto& g : groups) {
        if (!g.scores || g.scores->size() != g.responses.size())
            throw std::invalid_argument("group '" + g.prompt_id + "' is not fully scored");
        const auto [mn, mx] = std::minmax_element(g.scores->begin(), g.scores->end());
        if (*mn >= hi || *mx - *mn <= eps)
            out.removed.push_back(g);
        else
            out.to_annotate.push_back(g);
    }
    return out;
}

double normalize_absolute(int raw, int s_min, int s_max) {
    if (s_min >= s_max) throw std::invalid_argument("need s_min < s_max");
    if (raw < s_min || raw > s_max) throw std::invalid_argument("raw score out of scale");
    return 2.0 * (raw - s_min) / static_cast<double>(s_max - s_min) - 1.0;
}

std::vector<PreferenceRecord> assemble_preferences(const AnnotatedGroup& group,
                                                   bool all_pairs) {
    for (const auto& tier : group.ranking)
        for (std::size_t idx : tier)
            if (idx >= group.responses.size())
                throw std::invalid_argument("ranking references unknown response index " +
                                            std::to_string(idx));
    auto rhat_of = [&](std::size_t idx) -> std::optional<double> {
        if (idx < group.raw_scores.size() && group.raw_scores[idx])
            return normalize_absolute(*group.raw_scores[idx], group.s_min, group.s_max);
        return std::nullopt;
    };

    std::vector<PreferenceRecord> out;
    auto emit = [&](std::size_t win, std::size_t lose) {
        PreferenceRecord rec;
        rec.prompt_id = group.prompt_id;
        rec.chosen = group.responses[win];
        rec.rejected = group.responses[lose];
        rec.rhat_chosen = rhat_of(win);
        rec.rhat_rejected = rhat_of(lose);
        rec.alpha_eligible = rec.rhat_chosen && rec.rhat_rejected;
        out.push_back(std::move(rec));
    };
    for (std::size_t t = 0; t + 1 < group.ranking.size(); ++t) {
        const std::size_t last = all_pairs ? group.ranking.size() : t + 2;
        for (std::size_t u = t + 1; u < last; ++u)
            for (std::size_t win : group.ranking[t])
                for (std::size_t lose : group.ranking[u]) emit(win, lose);
    }
    return out;
}

ResponseGroup response_group_from_json(const nlohmann::json& j) {
    ResponseGroup g;
    g.prompt_id = j.at("prompt_id").get<std::string>();
    g.prompt_text = j.value("prompt_text", "");
    for (const auto& rj : j.at("responses")) {
        ResponseRecord r;
        if (rj.is_string()) {
            r.text = rj.get<std::string>();
        } else {
            r.text = rj.at("text").get<std::string>();
            r.source = rj.value("source", "");
            if (rj.contains("sampling")) {
                const auto& s = rj.at("sampling");
                r.sampling.temperature = s.value("temperature", 1.0);
                r.sampling.top_p = s.value("top_p", 0.99);
                r.sampling.top_k = s.value("top_k", 50);
            }
        }
        if (!(r.sampling.temperature > 0))
            throw std::invalid_argument("temperature must be > 0");
        if (!(r.sampling.top_p > 0 && r.sampling.top_p <= 1))
            throw std::invalid_argument("top_p must lie in (0,1]");
        if (r.sampling.top_k < 1) throw std::invalid_argument("top_k must be >= 1");
        g.responses.push_back(std::move(r));
    }
    if (j.contains("scores")) g.scores = j.at("scores").get<std::vector<double>>();
    if (j.contains("golden")) g.golden = j.at("golden").get<std::string>();
    return g;
}

nlohmann::json response_group_to_json(const ResponseGroup& g) {
    nlohmann::json j;
    j["prompt_id"] = g.prompt_id;
    if (!g.prompt_text.empty()) j["prompt_text"] = g.prompt_text;
    j["responses"] = nlohmann::json::array();
    for (const auto& r : g.responses) {
        nlohmann::json rj;
        rj["text"] = r.text;
        if (!r.source.empty()) rj["source"] = r.source;
        rj["sampling"] = {{"temperature", r.sampling.temperature},
                          {"top_p", r.sampling.top_p},
                          {"top_k", r.sampling.top_k}};
        j["responses"].push_back(std::move(rj));
    }
    if (g.scores) j["scores"] = *g.scores;
    if (g.golden) j["golden"] = *g.golden;
    return j;
}

AnnotatedGroup annotated_group_from_json(const nlohmann::json& j) {
    AnnotatedGroup g;
    g.prompt_id = j.at("prompt_id").get<std::string>();
    g.responses = j.at("responses").get<std::vector<std::string>>();
    for (const auto& tier : j.at("ranking"))
        g.ranking.push_back(tier.get<std::vector<std::size_t>>());
    if (j.contains("raw_scores")) {
        for (const auto& s : j.at("raw_scores")) {
            if (s.is_null())
                g.raw_scores.push_back(std::nullopt);
            else
                g.raw_scores.push_back(s.get<int>());
        }
    }
    g.s_min = j.value("s_min", 1);
    g.s_max = j.value("s_max", 5);
    return g;
}

nlohmann::json preference_to_json(const PreferenceRecord& r) {
    nlohmann::json j;
    j["prompt_id"] = r.prompt_id;
    j["chosen"] = r.chosen;
    j["rejected"] = r.rejected;
    if (r.rhat_chosen) j["rhat_chosen"] = *r.rhat_chosen;
    if (r.rhat_rejected) j["rhat_rejected"] = *r.rhat_rejected;
    j["alpha_eligible"] = r.alpha_eligible;
    return j;
}

}  // namespace align
