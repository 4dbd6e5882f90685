#pragma once
// Preference-data pipeline: ROUGE-L near-duplicate filtering, AutoRator
// judgment aggregation over a pluggable judge, prompt-group pruning, and
// preference-record assembly with normalized absolute scores.

#include <optional>
#include <string>
#include <vector>

#include "alignkit/corpus.hpp"

namespace align {

struct ResponseGroup {
    std::string prompt_id;
    std::string prompt_text;
    std::vector<ResponseRecord> responses;
    std::optional<std::vector<double>> scores;  // aligned with responses
    std::optional<std::string> golden;
};

struct PreferenceRecord {
    std::string prompt_id;
    std::string chosen;
    std::string rejected;
    std::optional<double> rhat_chosen;   // in [-1,1]
    std::optional<double> rhat_rejected;
    bool alpha_eligible = false;  // true iff both rhat values present
};

// ROUGE-L F1: P = LCS/|b|, R = LCS/|a|, F1 = 2PR/(P+R); 0 when LCS = 0.
double rouge_l(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Greedy keep-first pass in input order; drops any response whose
// rouge_l against an already kept response reaches the threshold.
ResponseGroup filter_similar_responses(const ResponseGroup& group, double threshold);

// LLM-as-judge contract; a deterministic stub ships for tests, any
// transport satisfying this interface plugs in.
class Judge {
public:
    virtual ~Judge() = default;
    virtual double absolute(const std::string& prompt, const std::string& response) = 0;
    virtual bool pair_same(const std::string& prompt, const std::string& a,
                           const std::string& b) = 0;
    virtual double golden(const std::string& prompt, const std::string& response,
                          const std::string& golden_answer) = 0;
};

// Offline judge: absolute/golden scores from a keyed hash of the text,
// pair verdict by byte equality. Reproducible across runs.
class StubJudge : public Judge {
public:
    double absolute(const std::string& prompt, const std::string& response) override;
    bool pair_same(const std::string& prompt, const std::string& a,
                   const std::string& b) override;
    double golden(const std::string& prompt, const std::string& response,
                  const std::string& golden_answer) override;
};

enum class AutoRatorMode { Absolute, Pair, Golden };

struct AutoRatorResult {
    std::vector<double> scores;   // absolute / golden modes, per response
    std::vector<bool> verdicts;   // pair mode, per requested pair
};

// Pair mode judges the requested (i, j) response index pairs; the other
// modes score every response. Golden mode without a golden answer is an
// error; judge failures propagate with the prompt id attached.
AutoRatorResult autorate(AutoRatorMode mode, const ResponseGroup& group, Judge& judge,
                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs = {});

struct PrunedGroups {
    std::vector<ResponseGroup> to_annotate;
    std::vector<ResponseGroup> removed;  // all-high or indistinguishable scores
};

// Removes a group iff min(score) >= hi or max-min <= eps.
PrunedGroups prune_groups(const std::vector<ResponseGroup>& groups, double hi, double eps);

// Affine map of an integer annotation scale onto [-1,1].
double normalize_absolute(int raw, int s_min, int s_max);

struct AnnotatedGroup {
    std::string prompt_id;
    std::vector<std::string> responses;
    // Tiers of response indices, best first; members of one tier are tied.
    std::vector<std::vector<std::size_t>> ranking;
    // Optional absolute annotation per response, on the s_min..s_max scale.
    std::vector<std::optional<int>> raw_scores;
    int s_min = 1;
    int s_max = 5;
};

// One record per cross pair of adjacent tiers (ties produce no pair);
// all_pairs extends this to every strictly ordered tier pair. rhat is
// attached when both members carry absolute scores.
std::vector<PreferenceRecord> assemble_preferences(const AnnotatedGroup& group,
                                                   bool all_pairs = false);

ResponseGroup response_group_from_json(const nlohmann::json& j);
nlohmann::json response_group_to_json(const ResponseGroup& g);
AnnotatedGroup annotated_group_from_json(const nlohmann::json& j);
nlohmann::json preference_to_json(const PreferenceRecord& r);

}  // namespace align
